"""Verification gates run on every classification record"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Tuple

from cohomology.automorphism import (
    BundleAutomorphism,
    int_action,
    orbit_witness_check,
    scalar_equivalent,
)
from cohomology.context import CohClass, H1Context
from cohomology.sl2 import expected_dimension, homogeneity_certificate
from config.classification_configs.case_table import NormalForm, OrbitWitness
from geometry.field_parser import parse_field
from geometry.superfield import Chart, GradingVector

logger = logging.getLogger(__name__)


class VerificationStatus(str, Enum):
    VERIFIED = "verified"
    FAILED = "failed"
    FLAGGED = "flagged"
    NOT_APPLICABLE = "n/a"


@dataclass
class CaseEvaluation:
    """Everything the gates look at for one retract, in its presentation"""

    k: GradingVector
    context: H1Context
    forms: List[Tuple[NormalForm, CohClass]]
    invariant_dimensions: Dict[str, int]
    witnesses: Tuple[OrbitWitness, ...] = ()
    certificates: Dict[str, List[str]] = field(default_factory=dict)


SEPARATION_SAMPLES: Tuple[Tuple[Fraction, ...], ...] = (
    (Fraction(1), Fraction(1), Fraction(1)),
    (Fraction(2), Fraction(3), Fraction(5)),
    (Fraction(-1), Fraction(2), Fraction(7, 3)),
)


def _diagonal_text(values: Tuple[Fraction, ...]) -> str:
    return "diag(" + ",".join(str(value) for value in values) + ")"


def _worst(statuses: List[VerificationStatus]) -> VerificationStatus:
    for status in (
        VerificationStatus.FAILED,
        VerificationStatus.FLAGGED,
        VerificationStatus.VERIFIED,
    ):
        if status in statuses:
            return status
    return VerificationStatus.NOT_APPLICABLE


GateCheck = Callable[[CaseEvaluation], Tuple[VerificationStatus, Dict[str, Any]]]


@dataclass(frozen=True)
class CaseGate:
    """A computational check on one matched case

    A check that raises is reported as failed, with the error in its details.
    """

    name: str
    description: str
    check: GateCheck

    def run(self, evaluation: CaseEvaluation) -> Dict[str, Any]:
        try:
            status, details = self.check(evaluation)
        except Exception as error:
            logger.exception("gate %s raised for k=%s", self.name, evaluation.k)
            status, details = VerificationStatus.FAILED, {"error": str(error)}
        return {"gate_name": self.name, "status": status, "details": details}


class VerificationGateConfig:
    """The checks every matched case goes through before its record is trusted"""

    @staticmethod
    def validate_membership(
        evaluation: CaseEvaluation,
    ) -> Tuple[VerificationStatus, Dict[str, Any]]:
        """Each normal form is a nonzero class killed by its listed algebras"""
        details = {}
        statuses = []
        for form, z in evaluation.forms:
            certificate = [kind.value for kind in homogeneity_certificate(evaluation.k, z)]
            evaluation.certificates[form.label] = certificate
            ok = not z.is_zero and set(form.algebras) <= set(certificate)
            details[form.label] = certificate
            statuses.append(VerificationStatus.VERIFIED if ok else VerificationStatus.FAILED)
        return _worst(statuses), details

    @staticmethod
    def validate_dimension(
        evaluation: CaseEvaluation,
    ) -> Tuple[VerificationStatus, Dict[str, Any]]:
        """Computed invariant dimensions agree with the closed forms"""
        details = {}
        statuses = []
        for kind, dimension in evaluation.invariant_dimensions.items():
            expected = expected_dimension(kind, evaluation.k)
            details[kind] = {"computed": dimension, "expected": expected}
            statuses.append(
                VerificationStatus.VERIFIED
                if dimension == expected
                else VerificationStatus.FAILED
            )
        return _worst(statuses), details

    @staticmethod
    def validate_inequivalence(
        evaluation: CaseEvaluation,
    ) -> Tuple[VerificationStatus, Dict[str, Any]]:
        """No two normal forms are scalar multiples of each other"""
        if len(evaluation.forms) < 2:
            return VerificationStatus.NOT_APPLICABLE, {}
        details = {}
        statuses = []
        for (a, za), (b, zb) in combinations(evaluation.forms, 2):
            scalar = scalar_equivalent(za, zb)
            details[f"{a.label}~{b.label}"] = None if scalar is None else str(scalar)
            statuses.append(
                VerificationStatus.VERIFIED if scalar is None else VerificationStatus.FAILED
            )
        return _worst(statuses), details

    @staticmethod
    def validate_separation(
        evaluation: CaseEvaluation,
    ) -> Tuple[VerificationStatus, Dict[str, Any]]:
        """Diagonal automorphisms never carry one normal form onto a multiple of another"""
        if len(evaluation.forms) < 2:
            return VerificationStatus.NOT_APPLICABLE, {}
        m = evaluation.k.m
        separated = True
        for values in SEPARATION_SAMPLES:
            D = BundleAutomorphism.diagonal(evaluation.k, values[:m])
            for (a, za), (b, zb) in combinations(evaluation.forms, 2):
                if scalar_equivalent(int_action(D, za), zb) is not None:
                    separated = False
                if scalar_equivalent(int_action(D, zb), za) is not None:
                    separated = False
        status = VerificationStatus.VERIFIED if separated else VerificationStatus.FAILED
        return status, {"samples": [_diagonal_text(values[:m]) for values in SEPARATION_SAMPLES]}

    @staticmethod
    def validate_witnesses(
        evaluation: CaseEvaluation,
    ) -> Tuple[VerificationStatus, Dict[str, Any]]:
        """Printed orbit identities, re-evaluated

        A witness whose matrix is not an automorphism is evaluated anyway and
        reported as flagged together with the truth value it produced.
        """
        if not evaluation.witnesses:
            return VerificationStatus.NOT_APPLICABLE, {}
        details = {}
        statuses = []
        m = evaluation.k.m
        for witness in evaluation.witnesses:
            A = BundleAutomorphism.from_rows(evaluation.k, witness.matrix)
            validation = A.validate()
            source = evaluation.context.reduce(parse_field(witness.source, Chart.U0, m))
            target = evaluation.context.reduce(parse_field(witness.target, Chart.U0, m))
            holds = orbit_witness_check(
                A,
                source,
                target,
                up_to_scalar=witness.up_to_scalar,
                unvalidated=not validation.valid,
            )
            if not validation.valid:
                status = VerificationStatus.FLAGGED
            else:
                status = VerificationStatus.VERIFIED if holds else VerificationStatus.FAILED
            if status != VerificationStatus.VERIFIED:
                logger.warning(
                    "witness '%s' for k=%s is %s (holds=%s)",
                    witness.description,
                    evaluation.k,
                    status.value,
                    holds,
                )
            details[witness.description] = {
                "status": status.value,
                "holds": holds,
                "violations": list(validation.violations),
            }
            statuses.append(status)
        return _worst(statuses), details

    GATES = (
        CaseGate(
            "membership",
            "each normal form is a nonzero class annihilated by its listed algebras",
            validate_membership,
        ),
        CaseGate(
            "dimension",
            "computed invariant dimensions equal the closed-form counts",
            validate_dimension,
        ),
        CaseGate(
            "inequivalence",
            "no normal form is a scalar multiple of another",
            validate_inequivalence,
        ),
        CaseGate(
            "separation",
            "fixed diagonal samples diag(1,1,1), diag(2,3,5), diag(-1,2,7/3) never "
            "carry one normal form onto a multiple of another",
            validate_separation,
        ),
        CaseGate(
            "witness",
            "printed orbit identities hold at class level",
            validate_witnesses,
        ),
    )

    @classmethod
    def run_gates(cls, evaluation: CaseEvaluation) -> Dict[str, Any]:
        """Gate results for one case plus the names of the gates that did not verify"""
        results = [gate.run(evaluation) for gate in cls.GATES]
        failed = [r["gate_name"] for r in results if r["status"] is VerificationStatus.FAILED]
        flagged = [r["gate_name"] for r in results if r["status"] is VerificationStatus.FLAGGED]
        return {
            "retract": str(evaluation.k),
            "classes": [form.label for form, _ in evaluation.forms],
            "gates": results,
            "failed": failed,
            "flagged": flagged,
            "overall_passed": not failed,
        }

    @classmethod
    def describe(cls) -> Dict[str, str]:
        return {gate.name: gate.description for gate in cls.GATES}
