"""Tests for arrduality report models."""

import pytest
from arrduality.models import (
    DualityClassification,
    DualityConstraintReport,
    GenericVanishingReport,
    NonresonanceCertificate,
    PropagationReport,
    Status,
    VanishingWitness,
    Violation,
)
from arrduality.schema import ReportConfig, ReportEnvelope, SCHEMA_VERSION


def _propagation(**kwargs):
    defaults = dict(arrangement="a", prime=5, mode="exhaustive", n_eff=2, corank=0, euler_characteristic=0)
    defaults.update(kwargs)
    return PropagationReport(**defaults)


class TestDualityConstraintReport:
    """Test the Betti-constraint report."""

    def test_passed_requires_every_check(self):
        """Test that the report passes only when every check does."""
        report = DualityConstraintReport(2, (1, 2, 1), 0, True, True, True)
        assert report.passed

        report = DualityConstraintReport(2, (1, 1, 1), 1, True, False, True)
        assert not report.passed

    def test_dict_roundtrip(self):
        """Test converting to and from a dictionary."""
        report = DualityConstraintReport(1, (1, 3), -2, True, True, True)

        data = report.to_dict()

        assert data["poincare"] == [1, 3]
        assert data["passed"] is True
        assert DualityConstraintReport.from_dict(data) == report


class TestNonresonanceCertificate:
    """Test nonresonance certificates."""

    def test_resonant_classes(self):
        """Test the resonant classes of a certificate."""
        cert = NonresonanceCertificate((2, 3), 5, [((1, 0), 2), ((1, 1), 1)])

        assert cert.resonant == [(1, 1)]
        assert not cert.nonresonant
        assert cert.to_dict()["resonant"] == [[1, 1]]

    def test_no_checks_is_nonresonant(self):
        """Test that a certificate without classes is nonresonant."""
        assert NonresonanceCertificate((2,), 5).nonresonant


class TestSweepReports:
    """Test propagation and generic-vanishing reports."""

    def test_betti_histogram_sorted(self):
        """Test that the histogram is keyed in sorted order."""
        report = _propagation(betti={(1, 1): (1, 2, 1), (2, 2): (0, 0, 0), (3, 3): (0, 0, 0)})

        assert report.betti_histogram == {"0,0,0": 2, "1,2,1": 1}

    def test_characters_listed_in_order(self):
        """Test that every character is listed with its Betti vector in sorted order."""
        report = _propagation(betti={(2, 1): (0, 1, 1), (1, 1): (1, 2, 1)})

        assert report.to_dict()["characters"] == [
            {"character": [1, 1], "betti": [1, 2, 1]},
            {"character": [2, 1], "betti": [0, 1, 1]},
        ]

    def test_propagation_passed(self):
        """Test that a violation fails the report."""
        report = _propagation()
        assert report.passed

        report.violations.append(Violation((2, 3), 1, 2))
        assert not report.passed
        assert report.to_dict()["violations"] == [{"character": [2, 3], "p": 1, "q": 2}]

    def test_v0_failure_fails_report(self):
        """Test that a nontrivial V^0 fails the report."""
        assert not _propagation(v0_trivial=False).passed

    def test_generic_vanishing_failures_serialized_as_violations(self):
        """Test that vanishing failures are listed as violations."""
        report = GenericVanishingReport(
            arrangement="a", prime=5, mode="sample", n_eff=1, corank=0, euler_characteristic=-2,
            betti={(2, 3, 4): (0, 2)}, failures=[VanishingWitness((2, 3, 4), (1, 2))],
        )

        data = report.to_dict()

        assert data["passed"] is False
        assert data["violations"] == [{"character": [2, 3, 4], "betti": [1, 2]}]
        assert data["characters_checked"] == 1

    def test_note_only_when_present(self):
        """Test that the note appears only when set."""
        assert "note" not in _propagation().to_dict()
        assert _propagation(note="corank 1").to_dict()["note"] == "corank 1"


class TestDualityClassification:
    """Test orbit-space classifications."""

    def test_roundtrip(self):
        """Test converting to and from a dictionary."""
        cls = DualityClassification(Status.YES, Status.UNKNOWN, 4, "closed surface")

        data = cls.to_dict()

        assert data["is_abelian_duality"] == "unknown"
        assert DualityClassification.from_dict(data) == cls

    def test_bad_status_rejected(self):
        """Test that an unknown status is rejected."""
        with pytest.raises(ValueError):
            DualityClassification.from_dict(
                {"is_duality": "maybe", "is_abelian_duality": "no", "reason": "x"}
            )


class TestReportEnvelope:
    """Test the JSON report envelope."""

    def test_schema_alias(self):
        """Test that the version is serialized as schema."""
        envelope = ReportEnvelope(
            command="poincare",
            input="boolean2.arr",
            config=ReportConfig(prime=5, mode="exhaustive", building="minimal"),
            result={"formatted": "1 + 2t + t^2"},
        )

        data = envelope.to_json_dict()

        assert data["schema"] == SCHEMA_VERSION
        assert "schema_version" not in data
        assert data["config"]["compactify"] is False
        assert data["result"]["formatted"] == "1 + 2t + t^2"
