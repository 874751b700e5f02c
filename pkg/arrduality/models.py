"""Report models for arrduality."""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

CharacterTuple = Tuple[int, ...]
ClassVector = Tuple[int, ...]
BettiVector = Tuple[int, ...]


def _key(values: Sequence[int]) -> str:
    return ",".join(str(v) for v in values)


class Status(Enum):
    """Tri-state answer for duality questions."""
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class DualityConstraintReport:
    """Betti-number consequences of being an abelian duality space of dimension d."""
    claimed_dim: int
    poincare: Tuple[int, ...]
    euler_characteristic: int
    betti_positive: bool
    b1_at_least_d: bool
    signed_euler_ok: bool

    @property
    def passed(self) -> bool:
        return self.betti_positive and self.b1_at_least_d and self.signed_euler_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claimed_dim": self.claimed_dim,
            "poincare": list(self.poincare),
            "euler_characteristic": self.euler_characteristic,
            "betti_positive": self.betti_positive,
            "b1_at_least_d": self.b1_at_least_d,
            "signed_euler_ok": self.signed_euler_ok,
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DualityConstraintReport":
        return cls(
            claimed_dim=data["claimed_dim"],
            poincare=tuple(data["poincare"]),
            euler_characteristic=data["euler_characteristic"],
            betti_positive=data["betti_positive"],
            b1_at_least_d=data["b1_at_least_d"],
            signed_euler_ok=data["signed_euler_ok"],
        )


@dataclass
class NonresonanceCertificate:
    """Values rho(gamma_g) for every gamma class, and the classes where rho is 1."""
    character: CharacterTuple
    prime: int
    checks: List[Tuple[ClassVector, int]] = field(default_factory=list)

    @property
    def resonant(self) -> List[ClassVector]:
        return [vector for vector, value in self.checks if value == 1]

    @property
    def nonresonant(self) -> bool:
        return not self.resonant

    def to_dict(self) -> Dict[str, Any]:
        return {
            "character": list(self.character),
            "prime": self.prime,
            "checks": [{"class": list(v), "value": value} for v, value in self.checks],
            "resonant": [list(v) for v in self.resonant],
            "nonresonant": self.nonresonant,
        }


@dataclass
class Violation:
    """rho lies in V^p but not in V^q for some p < q <= n_eff."""
    character: CharacterTuple
    lower: int
    upper: int

    def to_dict(self) -> Dict[str, Any]:
        return {"character": list(self.character), "p": self.lower, "q": self.upper}


@dataclass
class SweepReport:
    """Fields shared by every character sweep."""
    arrangement: str
    prime: int
    mode: str
    n_eff: int
    corank: int
    euler_characteristic: int
    betti: Dict[CharacterTuple, BettiVector] = field(default_factory=dict)
    nonresonant_count: int = 0
    euler_mismatches: List[CharacterTuple] = field(default_factory=list)
    note: Optional[str] = None

    @property
    def betti_histogram(self) -> Dict[str, int]:
        counts = Counter(_key(b) for b in self.betti.values())
        return {k: counts[k] for k in sorted(counts)}

    @property
    def characters(self) -> List[Dict[str, List[int]]]:
        """Betti vector of every swept character, in lexicographic character order."""
        return [
            {"character": list(c), "betti": list(self.betti[c])}
            for c in sorted(self.betti)
        ]

    def _common_dict(self) -> Dict[str, Any]:
        data = {
            "arrangement": self.arrangement,
            "prime": self.prime,
            "mode": self.mode,
            "n_eff": self.n_eff,
            "corank": self.corank,
            "euler_characteristic": self.euler_characteristic,
            "characters_checked": len(self.betti),
            "nonresonant_count": self.nonresonant_count,
            "betti_histogram": self.betti_histogram,
            "characters": self.characters,
            "euler_mismatches": [list(c) for c in self.euler_mismatches],
        }
        if self.note:
            data["note"] = self.note
        return data


@dataclass
class PropagationReport(SweepReport):
    """Outcome of checking {1} = V^0 <= V^1 <= ... <= V^{n_eff} on a sweep."""
    violations: List[Violation] = field(default_factory=list)
    v0_trivial: bool = True

    @property
    def passed(self) -> bool:
        return not self.violations and self.v0_trivial and not self.euler_mismatches

    def to_dict(self) -> Dict[str, Any]:
        data = self._common_dict()
        data["violations"] = [v.to_dict() for v in self.violations]
        data["v0_trivial"] = self.v0_trivial
        data["passed"] = self.passed
        return data


@dataclass
class VanishingWitness:
    """A nonresonant character whose cohomology does not vanish as predicted."""
    character: CharacterTuple
    betti: BettiVector

    def to_dict(self) -> Dict[str, Any]:
        return {"character": list(self.character), "betti": list(self.betti)}


@dataclass
class GenericVanishingReport(SweepReport):
    """Outcome of the generic-vanishing check on the nonresonant characters of a sweep."""
    failures: List[VanishingWitness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and not self.euler_mismatches

    def to_dict(self) -> Dict[str, Any]:
        data = self._common_dict()
        data["violations"] = [w.to_dict() for w in self.failures]
        data["passed"] = self.passed
        return data


@dataclass
class ResonanceCell:
    """Characters resonant on exactly the listed gamma classes."""
    pattern: Tuple[ClassVector, ...]
    count: int

    def to_dict(self) -> Dict[str, Any]:
        return {"resonant_classes": [list(v) for v in self.pattern], "count": self.count}


@dataclass
class ToricDualityReport:
    """Duality checks for a toric arrangement complement of dimension n."""
    ambient_dim: int
    corank: int
    layer_count: int
    constraints: DualityConstraintReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "corank": self.corank,
            "layer_count": self.layer_count,
            "duality_dimension": self.ambient_dim,
            "constraints": self.constraints.to_dict(),
        }


@dataclass
class DualityClassification:
    """Duality and abelian-duality status of an orbit configuration space."""
    is_duality: Status
    is_abelian_duality: Status
    dimension: Optional[int]
    reason: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_duality": self.is_duality.value,
            "is_abelian_duality": self.is_abelian_duality.value,
            "dimension": self.dimension,
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DualityClassification":
        return cls(
            is_duality=Status(data["is_duality"]),
            is_abelian_duality=Status(data["is_abelian_duality"]),
            dimension=data.get("dimension"),
            reason=data["reason"],
        )


@dataclass
class SignedEulerReport:
    """Sign of the Euler characteristic against the claimed duality dimension."""
    euler_characteristic: int
    dimension: Optional[int]
    check: str
    consistent: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "euler_characteristic": self.euler_characteristic,
            "dimension": self.dimension,
            "check": self.check,
            "consistent": self.consistent,
        }
