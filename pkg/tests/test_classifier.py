import os
import time
from itertools import combinations, permutations

import pytest

from classification.classifier import (
    canonical_retracts,
    classify_retract,
    enumerate_range,
    summarize_records,
)
from config.classification_configs.case_table import ClassificationTable
from config.classification_configs.verification_gates import (
    CaseEvaluation,
    CaseGate,
    VerificationGateConfig,
    VerificationStatus,
)
from geometry.superfield import GradingVector
from tests.conftest import cached_context
from tools.error_handling import PreconditionError, UsageError

REGOLD = os.environ.get("SUPERHOMOG_REGOLD") == "1"


def classify(*k):
    return classify_retract(GradingVector(k))


class TestCaseTable:
    def test_presentations(self):
        found = ClassificationTable.presentations((2, 1, 1))
        assert found[0] == ((2, 1, 1), (1, 2, 3))
        assert ((1, 1, 2), (2, 3, 1)) in found
        assert len(found) == 3

    def test_cases_are_disjoint(self):
        for k in canonical_retracts(6):
            assert len(ClassificationTable.matching_cases(k)) <= 1, k

    def test_match(self):
        case, presentation, permutation = ClassificationTable.match((4, 0, -2))
        assert (case.label, presentation, permutation) == ("1d", (-2, 0, 4), (3, 2, 1))
        assert ClassificationTable.match((1, 1, 1)) is None

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            ClassificationTable.get_case("9z")


class TestRecords:
    def test_mixed_221(self):
        record = classify(2, 2, 1)
        assert (record.case_label, record.count) == ("1a", 2)
        assert record.invariant_dimensions == {"s": 1, "s-prime": 2}
        assert record.algebra_kinds == ("s", "s-prime")
        assert record.status is VerificationStatus.FLAGGED
        witness = record.gate("witness")
        (details,) = witness["details"].values()
        assert details["holds"] is False
        assert details["violations"][0].startswith("a23")
        for name in ("membership", "dimension", "inequivalence", "separation"):
            assert record.gate(name)["status"] is VerificationStatus.VERIFIED

    def test_minus_two_zero_four(self):
        record = classify(4, -2, 0)
        assert record.retract == GradingVector.of(4, 0, -2)
        assert record.presentation == GradingVector.of(-2, 0, 4)
        assert record.count == 2
        assert record.gate("membership")["status"] is VerificationStatus.VERIFIED
        assert record.gate("witness")["status"] is VerificationStatus.FAILED
        assert record.status is VerificationStatus.FAILED

    def test_fully_homogeneous(self):
        record = classify(2, 2, 2)
        assert (record.case_label, record.count) == ("1c", 2)
        assert record.algebra_kinds == ("s", "s-prime", "s-double-prime")
        assert record.status is VerificationStatus.VERIFIED

        record = classify(3, 3, 3)
        assert (record.case_label, record.count) == ("2d(3,3,3)", 1)
        assert record.classes[0].certificate == ("s-double-prime",)

    def test_renumbered_presentation(self):
        record = classify(2, 1, 1)
        assert record.case_label == "2c"
        assert record.presentation == GradingVector.of(1, 1, 2)
        assert record.permutation == (2, 3, 1)

    def test_split_only(self):
        record = classify(1, 1, 1)
        assert record.count == 0
        assert record.case_label is None
        assert record.invariant_dimensions == {}
        assert record.status is VerificationStatus.NOT_APPLICABLE

    def test_m2(self):
        record = classify(3, 1)
        assert (record.case_label, record.count) == ("1|2", 1)
        assert record.classes[0].algebras == ("s",)
        assert classify(2, 2).classes[0].algebras == ("s", "s-prime")

    def test_m1(self):
        assert classify(4).count == 0

    def test_odd_dimension_four(self):
        with pytest.raises(PreconditionError):
            classify(1, 1, 1, 1)

    def test_verification_report(self):
        report = classify(2, 2, 1).verification
        assert report["retract"] == "(2,2,1)"
        assert report["classes"] == ["v1", "v2"]
        assert [gate["gate_name"] for gate in report["gates"]] == list(
            VerificationGateConfig.describe()
        )
        assert report["flagged"] == ["witness"]
        assert report["failed"] == []
        assert report["overall_passed"] is True

        report = classify(4, -2, 0).verification
        assert report["classes"] == ["v2", "v1"]
        assert "witness" in report["failed"]
        assert report["overall_passed"] is False

    def test_separation_names_its_samples(self):
        assert "fixed diagonal samples" in VerificationGateConfig.describe()["separation"]
        details = classify(2, 2, 1).gate("separation")["details"]
        assert details["samples"] == ["diag(1,1,1)", "diag(2,3,5)", "diag(-1,2,7/3)"]
        assert classify(2, 1, 1).gate("separation")["status"] is (
            VerificationStatus.NOT_APPLICABLE
        )

    def test_raising_gate_is_reported_as_failed(self):
        def broken(evaluation):
            raise ValueError("no normal forms")

        k = GradingVector.of(2, 2, 1)
        evaluation = CaseEvaluation(
            k=k, context=cached_context((2, 2, 1)), forms=[], invariant_dimensions={}
        )
        result = CaseGate("broken", "always raises", broken).run(evaluation)
        assert result["gate_name"] == "broken"
        assert result["status"] is VerificationStatus.FAILED
        assert result["details"] == {"error": "no normal forms"}


class TestEnumeration:
    def test_empty_range(self):
        assert enumerate_range(0) == []

    def test_negative_bound(self):
        with pytest.raises(UsageError):
            enumerate_range(-1)

    def test_canonical_retracts(self):
        assert canonical_retracts(1, m=2) == [(-1, -1), (0, -1), (0, 0), (1, -1), (1, 0), (1, 1)]

    def test_golden_range_2(self, golden_dir):
        lines = summarize_records(enumerate_range(2))
        golden = golden_dir / "classify_range_2.txt"
        if REGOLD:
            golden.write_text("\n".join(lines) + "\n", encoding="utf-8")
        assert lines == golden.read_text(encoding="utf-8").splitlines()

    def test_workers_agree(self):
        serial = summarize_records(enumerate_range(2))
        assert summarize_records(enumerate_range(2, workers=2)) == serial

    def test_m2_range(self):
        records = enumerate_range(3, m=2)
        assert [str(r.retract) for r in records] == ["(2,2)", "(3,1)"]
        assert all(r.status is VerificationStatus.VERIFIED for r in records)

    def test_m1_range(self):
        assert enumerate_range(3, m=1) == []

    @pytest.mark.slow
    def test_families_and_coverage(self):
        by_retract = {}
        for k in canonical_retracts(4):
            record = classify_retract(GradingVector(k))
            if record.count == 0:
                assert record.invariant_dimensions == {}, k
                continue
            by_retract[k] = record

        def labels(*ks):
            return {by_retract[k].case_label for k in ks}

        assert labels((2, 1, 1), (3, 0, 0), (4, -1, -1), (3, 3, 0), (4, 4, -1)) == {"2c"}
        assert labels((4, 1, 1), (3, 3, 2), (4, 4, 1)) == {"2d(k,k,5-k)"}
        assert by_retract[(3, 2, 2)].case_label == "1b"
        flagged = {k for k, r in by_retract.items() if r.status is VerificationStatus.FLAGGED}
        failed = {k for k, r in by_retract.items() if r.status is VerificationStatus.FAILED}
        assert flagged == {(2, 2, 1)}
        assert failed == {(4, 0, -2)}

    @pytest.mark.slow
    def test_counts_up_to_six(self, record_property):
        started = time.perf_counter()
        records = {k: classify_retract(GradingVector(k)) for k in canonical_retracts(6)}
        record_property("classify_seconds", round(time.perf_counter() - started, 2))

        for k, record in records.items():
            label, count = _expected_case(k)
            assert record.count == count, k
            if label is not None:
                assert record.case_label == label, k
            if count == 0:
                assert record.case_label is None, k
                assert record.invariant_dimensions == {}, k

        flagged = {k for k, r in records.items() if r.status is VerificationStatus.FLAGGED}
        failed = {k for k, r in records.items() if r.status is VerificationStatus.FAILED}
        assert flagged == {(2, 2, 1)}
        assert failed == {(4, 0, -2)}


SPECIAL_CASES = {(1, 2, 2): "1a", (2, 2, 3): "1b", (2, 2, 2): "1c", (-2, 0, 4): "1d"}


def _expected_case(k):
    """Case label for the two-class retracts and the class count, read off the entries"""
    multiset = tuple(sorted(k))
    if multiset in SPECIAL_CASES:
        return SPECIAL_CASES[multiset], 2
    pairs = [
        (k[i] + k[j], k[3 - i - j]) for i, j in combinations(range(3), 2)
    ]
    in_family = (
        any(total == 4 for total, _ in pairs)
        or any(total == 2 and rest == 0 for total, rest in pairs)
        or any(
            a == b and a != 2 and c in (3 - a, 5 - a)
            for a, b, c in permutations(k)
        )
        or multiset == (3, 3, 3)
    )
    return None, 1 if in_family else 0
