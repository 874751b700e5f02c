"""Stratification and duality classification of orbit configuration spaces.

``F_Gamma(Sigma_{g,k}, n)`` is the space of n ordered points of the genus-g
surface with k punctures whose Gamma-orbits are pairwise disjoint, for a group
Gamma of order m acting freely. Its closure in Sigma_g^n is stratified by pairs
(Pi, f): a set partition of the n points and, for each block, either the
puncture it sits on or the Gamma-labels relating its points. Labels are
normalized so the least point of a block carries the identity.
"""

import logging
from dataclasses import dataclass
from itertools import permutations, product as cartesian
from math import prod
from typing import Any, Dict, Iterator, List, Optional, Tuple

from sympy import binomial, factorial
from sympy.utilities.iterables import multiset_partitions

from .exceptions import ArrangementTooLargeError, OrbitSpecError
from .models import DualityClassification, SignedEulerReport, Status

logger = logging.getLogger(__name__)

MAX_POINTS = 8
MAX_GROUP_ORDER = 4
MAX_PUNCTURES = 6


@dataclass(frozen=True)
class OrbitConfigSpec:
    """Genus, punctures, number of points and |Gamma| of an orbit configuration space."""
    g: int
    k: int
    n: int
    m: int = 1
    cyclic: bool = False
    free: bool = True

    def __post_init__(self) -> None:
        if self.g < 0 or self.k < 0:
            raise OrbitSpecError("genus and puncture count must be non-negative")
        if self.n < 1:
            raise OrbitSpecError("at least one point is required")
        if self.m < 1:
            raise OrbitSpecError("the group order must be positive")
        if not self.free:
            raise OrbitSpecError("only free Gamma-actions are supported")
        if self.k % self.m:
            raise OrbitSpecError(f"|Gamma| = {self.m} must divide the puncture count {self.k}")

    @property
    def puncture_orbits(self) -> int:
        return self.k // self.m

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, "k": self.k, "n": self.n, "gamma": self.m, "cyclic": self.cyclic}


@dataclass(frozen=True)
class BlockLabel:
    """Either the puncture under a singleton block or the Gamma-labels of a surface block.

    Punctures are numbered so that puncture ``l`` lies in the Gamma-orbit ``l // m``.
    """
    puncture: Optional[int] = None
    group_labels: Tuple[int, ...] = ()

    @property
    def is_puncture(self) -> bool:
        return self.puncture is not None


@dataclass(frozen=True)
class OrbitStratum:
    blocks: Tuple[Tuple[int, ...], ...]
    labels: Tuple[BlockLabel, ...]

    def label_of(self, point: int) -> Tuple[int, BlockLabel, int]:
        """(block position, block label, group label of the point)."""
        for i, block in enumerate(self.blocks):
            if point in block:
                label = self.labels[i]
                group = 0 if label.is_puncture else label.group_labels[block.index(point)]
                return i, label, group
        raise KeyError(point)

    def to_dict(self) -> Dict[str, Any]:
        described = []
        for block, label in zip(self.blocks, self.labels):
            if label.is_puncture:
                described.append({"block": list(block), "puncture": label.puncture})
            else:
                described.append({"block": list(block), "labels": list(label.group_labels)})
        return {"blocks": described}


def _check_bounds(spec: OrbitConfigSpec) -> None:
    if spec.n > MAX_POINTS or spec.m > MAX_GROUP_ORDER or spec.k > MAX_PUNCTURES:
        raise ArrangementTooLargeError(
            f"enumeration limited to n <= {MAX_POINTS}, |Gamma| <= {MAX_GROUP_ORDER}, k <= {MAX_PUNCTURES}"
        )


def _labelings(size: int, m: int) -> Iterator[Tuple[int, ...]]:
    for tail in cartesian(range(m), repeat=size - 1):
        yield (0, *tail)


def _strata_for(partition: List[List[int]], spec: OrbitConfigSpec) -> Iterator[OrbitStratum]:
    blocks = tuple(tuple(b) for b in partition)
    singletons = [i for i, b in enumerate(blocks) if len(b) == 1]
    for mask in range(1 << len(singletons)):
        on_punctures = [singletons[j] for j in range(len(singletons)) if mask >> j & 1]
        if len(on_punctures) > spec.puncture_orbits:
            continue
        surface = [i for i in range(len(blocks)) if i not in on_punctures]
        # distinct puncture blocks lie over distinct orbits, each on any puncture of its orbit
        for orbits in permutations(range(spec.puncture_orbits), len(on_punctures)):
            for offsets in cartesian(range(spec.m), repeat=len(on_punctures)):
                fixed = {i: o * spec.m + j for i, o, j in zip(on_punctures, orbits, offsets)}
                choices = [_labelings(len(blocks[i]), spec.m) for i in surface]
                for group_labels in cartesian(*choices) if choices else [()]:
                    labels = dict(zip(surface, group_labels))
                    yield OrbitStratum(
                        blocks,
                        tuple(
                            BlockLabel(puncture=fixed[i]) if i in fixed else BlockLabel(group_labels=labels[i])
                            for i in range(len(blocks))
                        ),
                    )


def enumerate_strata(spec: OrbitConfigSpec) -> List[OrbitStratum]:
    """One stratum per labelled partition (Pi, f)."""
    _check_bounds(spec)
    strata: List[OrbitStratum] = []
    for partition in multiset_partitions(list(range(1, spec.n + 1))):
        strata.extend(_strata_for(partition, spec))
    logger.debug("enumerated %d strata for %s", len(strata), spec)
    return strata


def stratum_complement_type(s: OrbitStratum, spec: Optional[OrbitConfigSpec] = None) -> int:
    """Number of surface blocks: the stratum is open in F_Gamma(Sigma_{g,k}, that many)."""
    return sum(1 for label in s.labels if not label.is_puncture)


def euler_orbit_config(spec: OrbitConfigSpec) -> int:
    """prod_{i<n} (2 - 2g - k - i m), from the fibrations forgetting the last point."""
    return prod(2 - 2 * spec.g - spec.k - i * spec.m for i in range(spec.n))


def euler_unordered_series_check(g: int, n_max: int) -> bool:
    """n! [t^n] (1 + t)^{2-2g} equals prod_{i<n} (2 - 2g - i) for every n <= n_max."""
    for n in range(n_max + 1):
        series = int(factorial(n) * binomial(2 - 2 * g, n))
        falling = prod(2 - 2 * g - i for i in range(n))
        if series != falling:
            logger.warning("series identity fails at g=%d, n=%d: %d != %d", g, n, series, falling)
            return False
    return True


def classify_duality(spec: OrbitConfigSpec) -> DualityClassification:
    """Duality and abelian-duality status with the dimension when it is a duality space."""
    n, g, k = spec.n, spec.g, spec.k
    if g == 0 and k == 1:
        # F(C, n) is a braid arrangement complement of corank 1
        return DualityClassification(Status.YES, Status.YES, n - 1, "plane, braid arrangement of corank 1")
    if k > 0:
        return DualityClassification(Status.YES, Status.YES, n, "punctured surface")
    if g == 0:
        return DualityClassification(Status.NO, Status.NO, None, "closed sphere")
    if g == 1:
        return DualityClassification(Status.YES, Status.YES, n + 1, "closed torus")
    if spec.m == 1:
        return DualityClassification(Status.YES, Status.NO, n + 1, "closed surface, trivial group")
    if n == 1:
        return DualityClassification(Status.YES, Status.NO, 2, "single point on a closed surface")
    return DualityClassification(Status.YES, Status.UNKNOWN, n + 1, "closed surface, nontrivial group")


def signed_euler_consistency(spec: OrbitConfigSpec) -> SignedEulerReport:
    """Sign of chi against the classification."""
    chi = euler_orbit_config(spec)
    cls = classify_duality(spec)
    if cls.is_abelian_duality is Status.YES:
        d = cls.dimension
        return SignedEulerReport(chi, d, "abelian duality: (-1)^d chi >= 0", (-1) ** d * chi >= 0)
    if spec.k == 0 and spec.g >= 2 and (spec.m == 1 or spec.n == 1):
        return SignedEulerReport(
            chi, spec.n + 1, "non-abelian witness: (-1)^(n+1) chi < 0", (-1) ** (spec.n + 1) * chi < 0
        )
    return SignedEulerReport(chi, cls.dimension, "no sign constraint", True)


def hurwitz_admissible(spec: OrbitConfigSpec) -> bool:
    """Whether 2 - 2g = m (2 - 2h) for some integer genus h >= 0 of the quotient surface."""
    chi = 2 - 2 * spec.g
    if chi % spec.m:
        return False
    quotient = chi // spec.m
    return quotient % 2 == 0 and quotient <= 2


def is_in_closure(lower: OrbitStratum, upper: OrbitStratum, spec: OrbitConfigSpec) -> bool:
    """Whether ``lower`` lies in the closure of ``upper`` (Gamma cyclic, written additively)."""
    if spec.m > 1 and not spec.cyclic:
        raise OrbitSpecError("closure relations are implemented for cyclic Gamma only")
    for block, label in zip(upper.blocks, upper.labels):
        target, target_label, _ = lower.label_of(block[0])
        if any(lower.label_of(p)[0] != target for p in block):
            return False
        if label.is_puncture:
            if target_label.puncture != label.puncture:
                return False
            continue
        if target_label.is_puncture:
            continue
        shifts = {(lower.label_of(p)[2] - g) % spec.m for p, g in zip(block, label.group_labels)}
        if len(shifts) != 1:
            return False
    return True


def orbit_summary(spec: OrbitConfigSpec) -> Dict[str, Any]:
    strata = enumerate_strata(spec)
    signed = signed_euler_consistency(spec)
    if not signed.consistent:
        logger.warning("signed Euler check fails for %s: chi = %d", spec, signed.euler_characteristic)
    return {
        "spec": spec.to_dict(),
        "strata_count": len(strata),
        "euler_characteristic": euler_orbit_config(spec),
        "classification": classify_duality(spec).to_dict(),
        "signed_euler": signed.to_dict(),
        "hurwitz_admissible": hurwitz_admissible(spec),
    }
