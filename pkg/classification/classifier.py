"""Classification records: table lookup plus computational verification"""

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from multiprocessing import Pool
from typing import Any, Dict, List, Optional, Tuple

from cohomology.context import WINDOW_MARGIN, CohClass, H1Context, build_context
from cohomology.sl2 import AlgebraKind, constructible_kinds, invariant_subspace
from config.classification_configs.case_table import ClassificationTable
from config.classification_configs.verification_gates import (
    CaseEvaluation,
    VerificationGateConfig,
    VerificationStatus,
)
from geometry.field_parser import parse_field
from geometry.superfield import Chart, GradingVector
from tools.error_handling import UsageError
from tools.validators import GradingValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassifiedClass:
    label: str
    expression: str
    cohclass: CohClass
    algebras: Tuple[str, ...]
    certificate: Tuple[str, ...]


@dataclass(frozen=True, eq=False)
class ClassificationRecord:
    retract: GradingVector
    presentation: GradingVector
    permutation: Tuple[int, ...]
    case_label: Optional[str]
    classes: Tuple[ClassifiedClass, ...]
    invariant_dimensions: Dict[str, int] = field(default_factory=dict)
    verification: Dict[str, Any] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def algebra_kinds(self) -> Tuple[str, ...]:
        found = {kind for c in self.classes for kind in c.certificate}
        return tuple(kind.value for kind in AlgebraKind if kind.value in found)

    @property
    def status(self) -> VerificationStatus:
        statuses = [gate["status"] for gate in self.verification.get("gates", [])]
        for status in (VerificationStatus.FAILED, VerificationStatus.FLAGGED):
            if status in statuses:
                return status
        return VerificationStatus.VERIFIED if statuses else VerificationStatus.NOT_APPLICABLE

    def gate(self, name: str) -> Optional[Dict[str, Any]]:
        for result in self.verification.get("gates", []):
            if result["gate_name"] == name:
                return result
        return None


def _invariant_dimensions(
    k: GradingVector, ctx: H1Context
) -> Tuple[Dict[str, int], Dict[str, List[CohClass]]]:
    dimensions = {}
    spaces = {}
    for kind in constructible_kinds(k):
        space = invariant_subspace(kind, k, ctx)
        dimensions[kind.value] = len(space)
        spaces[kind.value] = space
    return dimensions, spaces


def _uncovered_invariants(canonical: GradingVector, margin: int) -> Dict[str, int]:
    """Nonzero invariant dimensions of a retract no case matches

    s does not see renumbering, s' only needs a presentation per repeated
    value and s'' only applies when every k_i agrees.
    """
    dims, _ = _invariant_dimensions(canonical, build_context(canonical, 2, margin))
    found = {f"{kind}@{canonical}": dimension for kind, dimension in dims.items()}
    leading = set()
    if canonical.m >= 2 and canonical.k[0] == canonical.k[1]:
        leading.add(canonical.k[0])
    for presentation, _ in ClassificationTable.presentations(canonical.k)[1:]:
        if presentation[0] != presentation[1] or presentation[0] in leading:
            continue
        leading.add(presentation[0])
        k = GradingVector(presentation)
        dims, _ = _invariant_dimensions(k, build_context(k, 2, margin))
        found[f"{AlgebraKind.S_PRIME.value}@{k}"] = dims.get(AlgebraKind.S_PRIME.value, 0)
    return {key: value for key, value in found.items() if value}


def classify_retract(k: GradingVector, margin: int = WINDOW_MARGIN) -> ClassificationRecord:
    GradingValidator.require_classifiable(k.m)
    canonical, _ = k.canonical()
    match = ClassificationTable.match(canonical.k)

    if match is None:
        uncovered = _uncovered_invariants(canonical, margin)
        verification: Dict[str, Any] = {}
        if uncovered:
            logger.warning(
                "retract %s has invariants outside the case table: %s", canonical, uncovered
            )
            verification = {
                "retract": str(canonical),
                "gates": [
                    {
                        "gate_name": "coverage",
                        "status": VerificationStatus.FAILED,
                        "details": uncovered,
                    }
                ],
                "failed": ["coverage"],
                "flagged": [],
                "overall_passed": False,
            }
        logger.info("retract %s: no case, count 0", canonical)
        return ClassificationRecord(
            retract=canonical,
            presentation=canonical,
            permutation=tuple(range(1, k.m + 1)),
            case_label=None,
            classes=(),
            invariant_dimensions=uncovered,
            verification=verification,
        )

    case, presentation, permutation = match
    p = GradingVector(presentation)
    ctx = build_context(p, 2, margin)
    dimensions, _ = _invariant_dimensions(p, ctx)
    forms = [
        (form, ctx.reduce(parse_field(form.expression, Chart.U0, p.m)))
        for form in case.normal_forms(presentation)
    ]
    evaluation = CaseEvaluation(
        k=p,
        context=ctx,
        forms=forms,
        invariant_dimensions=dimensions,
        witnesses=case.witnesses,
    )
    report = VerificationGateConfig.run_gates(evaluation)
    classes = tuple(
        ClassifiedClass(
            label=form.label,
            expression=form.expression,
            cohclass=z,
            algebras=form.algebras,
            certificate=tuple(evaluation.certificates.get(form.label, ())),
        )
        for form, z in forms
    )
    record = ClassificationRecord(
        retract=canonical,
        presentation=p,
        permutation=permutation,
        case_label=case.label,
        classes=classes,
        invariant_dimensions=dimensions,
        verification=report,
    )
    logger.info(
        "retract %s: case %s via %s, count %d, %s",
        canonical,
        case.label,
        p,
        record.count,
        record.status.value,
    )
    return record


def _classify_tuple(args: Tuple[Tuple[int, ...], int]) -> ClassificationRecord:
    k, margin = args
    return classify_retract(GradingVector(k), margin)


def canonical_retracts(bound: int, m: int = 3) -> List[Tuple[int, ...]]:
    """Descending tuples with entries in [-bound, bound], in ascending order"""
    values = range(bound, -bound - 1, -1)
    return sorted(combinations_with_replacement(values, m))


def enumerate_range(
    bound: int, m: int = 3, workers: int = 1, margin: int = WINDOW_MARGIN
) -> List[ClassificationRecord]:
    """Records with count > 0 for every canonical retract in range"""
    if bound < 0:
        raise UsageError(f"bound must be >= 0, got {bound}")
    GradingValidator.require_classifiable(m)
    retracts = canonical_retracts(bound, m)
    jobs = [(k, margin) for k in retracts]
    if workers > 1 and len(jobs) > 1:
        with Pool(processes=workers) as pool:
            records = pool.map(_classify_tuple, jobs)
    else:
        records = [_classify_tuple(job) for job in jobs]
    return [record for record in records if record.count > 0]


def _bracketed(values: Tuple[str, ...]) -> str:
    return "[" + ",".join(values) + "]"


def summarize_records(records: List[ClassificationRecord]) -> List[str]:
    """One deterministic line per record"""
    lines = []
    for record in records:
        classes = " | ".join(
            f"{c.label}{_bracketed(c.algebras)}: {c.expression}" for c in record.classes
        )
        lines.append(
            f"{record.retract} {record.case_label} presentation={record.presentation} "
            f"count={record.count} status={record.status.value} {classes}"
        )
    return lines
