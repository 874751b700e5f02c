"""Affine hyperplane arrangements over Q and their intersection posets.

An arrangement lives in Q^n (read: its complexification in C^n). Each hyperplane
is ``{x : normal . x = offset}``. The intersection poset L(A) holds every nonempty
intersection of hyperplanes, ordered by reverse inclusion and ranked by
codimension; Moebius values feed the Whitney/Orlik-Solomon Poincare polynomial.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import polynomials
from .exactlin import (
    Number,
    RationalVector,
    as_fraction,
    dot,
    nullspace_rational,
    RationalMatrix,
    rational_rank,
    rref_key,
    solve_affine,
)
from .exceptions import DegenerateArrangementError, DualityDimensionError, RestrictionError
from .models import DualityConstraintReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``normal . x = offset``."""
    normal: RationalVector
    offset: Fraction = Fraction(0)
    label: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(as_fraction(a) for a in self.normal))
        object.__setattr__(self, "offset", as_fraction(self.offset))

    def value(self, point: Sequence[Number]) -> Fraction:
        return dot(self.normal, point) - self.offset

    def canonical(self) -> Tuple[Fraction, ...]:
        """(normal, offset) scaled so the first nonzero normal entry is 1."""
        lead = next((a for a in self.normal if a != 0), None)
        if lead is None:
            raise DegenerateArrangementError("hyperplane with zero normal vector")
        return tuple(a / lead for a in self.normal) + (self.offset / lead,)

    def form(self) -> Tuple[Fraction, ...]:
        return self.normal + (self.offset,)


@dataclass(frozen=True)
class Arrangement:
    """Ordered list of distinct affine hyperplanes in ambient dimension n."""
    ambient_dim: int
    hyperplanes: Tuple[Hyperplane, ...] = ()
    name: str = ""
    complexified_real: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        seen: Dict[Tuple[Fraction, ...], int] = {}
        for i, h in enumerate(self.hyperplanes):
            if len(h.normal) != self.ambient_dim:
                raise DegenerateArrangementError(
                    f"hyperplane {i} has {len(h.normal)} coefficients, expected {self.ambient_dim}"
                )
            key = h.canonical()
            if key in seen:
                raise DegenerateArrangementError(
                    f"hyperplanes {seen[key]} and {i} define the same affine subspace"
                )
            seen[key] = i

    @classmethod
    def from_forms(
        cls,
        ambient_dim: int,
        forms: Iterable[Sequence[Number]],
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> "Arrangement":
        """Build from rows ``a_1 ... a_n c`` meaning ``a . x = c``."""
        rows = [tuple(f) for f in forms]
        hyperplanes = []
        for i, row in enumerate(rows):
            if len(row) != ambient_dim + 1:
                raise DegenerateArrangementError(
                    f"form {i} has {len(row)} entries, expected {ambient_dim + 1}"
                )
            label = labels[i] if labels else None
            hyperplanes.append(Hyperplane(row[:-1], row[-1], label))
        return cls(ambient_dim, tuple(hyperplanes), name)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def is_central(self) -> bool:
        return all(h.offset == 0 for h in self.hyperplanes)

    @property
    def rank(self) -> int:
        """Rank of the normal vectors, the largest codimension of a flat."""
        if not self.hyperplanes:
            return 0
        return rational_rank(RationalMatrix(tuple(h.normal for h in self.hyperplanes), self.ambient_dim))

    @property
    def is_essential(self) -> bool:
        return self.rank == self.ambient_dim

    def subarrangement(self, indices: Iterable[int], name: str = "") -> "Arrangement":
        chosen = sorted(indices)
        return Arrangement(
            self.ambient_dim,
            tuple(self.hyperplanes[i] for i in chosen),
            name or self.name,
            self.complexified_real,
        )


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes, with its closed index set."""
    indices: FrozenSet[int]
    point: RationalVector
    direction: Tuple[RationalVector, ...]
    codim: int
    key: Tuple[RationalVector, ...] = field(compare=False, default=())

    @property
    def rank(self) -> int:
        return self.codim

    @property
    def dim(self) -> int:
        return len(self.direction)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.codim, tuple(sorted(self.indices))

    def contained_in(self, h: Hyperplane) -> bool:
        """True iff this flat lies inside ``h``."""
        if h.value(self.point) != 0:
            return False
        return all(dot(h.normal, b) == 0 for b in self.direction)


@dataclass(frozen=True)
class FlatPoset:
    """Ranked poset L(A); ``flats[0]`` is the bottom element (the ambient space)."""
    ambient_dim: int
    flats: Tuple[Flat, ...]
    mobius: Tuple[int, ...]

    @property
    def bottom(self) -> Flat:
        return self.flats[0]

    @property
    def max_rank(self) -> int:
        return max(f.codim for f in self.flats)

    @staticmethod
    def leq(x: Flat, y: Flat) -> bool:
        """X <= Y iff X contains Y as a subspace."""
        return x.indices <= y.indices

    def index_of(self, flat: Flat) -> int:
        return self._positions()[flat.indices]

    def mobius_of(self, flat: Flat) -> int:
        return self.mobius[self.index_of(flat)]

    def by_indices(self, indices: Iterable[int]) -> Optional[Flat]:
        """The listed flat whose closed index set is exactly ``indices``."""
        position = self._positions().get(frozenset(indices))
        return None if position is None else self.flats[position]

    def below(self, x: Flat) -> List[Flat]:
        return [z for z in self.flats if self.leq(z, x)]

    def of_rank(self, rank: int) -> List[Flat]:
        return [f for f in self.flats if f.codim == rank]

    def span(self, indices: Iterable[int]) -> Optional[Flat]:
        """Smallest flat lying in every listed hyperplane, or None if they do not meet."""
        wanted = frozenset(indices)
        candidates = [f for f in self.flats if wanted <= f.indices]
        if not candidates:
            return None
        return min(candidates, key=lambda f: len(f.indices))

    def join(self, members: Iterable[Flat]) -> Optional[Flat]:
        """Least upper bound (the intersection subspace), or None if empty."""
        union: FrozenSet[int] = frozenset()
        for m in members:
            union |= m.indices
        return self.span(union)

    def _positions(self) -> Dict[FrozenSet[int], int]:
        cache = self.__dict__.get("_position_cache")
        if cache is None:
            cache = {f.indices: i for i, f in enumerate(self.flats)}
            object.__setattr__(self, "_position_cache", cache)
        return cache


def _flat_from_indices(a: Arrangement, indices: Iterable[int]) -> Optional[Flat]:
    chosen = sorted(set(indices))
    rows = [a.hyperplanes[i].normal for i in chosen]
    rhs = [a.hyperplanes[i].offset for i in chosen]
    solution = solve_affine(rows, rhs, a.ambient_dim)
    if solution is None:
        return None
    point, basis = solution
    probe = Flat(frozenset(chosen), point, tuple(basis), a.ambient_dim - len(basis))
    closed = frozenset(i for i, h in enumerate(a.hyperplanes) if probe.contained_in(h))
    equations = [a.hyperplanes[i].form() for i in sorted(closed)]
    key = rref_key(equations, a.ambient_dim + 1)
    return Flat(closed, point, tuple(basis), probe.codim, key)


def build_flat_poset(a: Arrangement) -> FlatPoset:
    """Intersection poset L(A) with Moebius values mu(0, X)."""
    bottom = _flat_from_indices(a, ())
    found: Dict[Tuple[RationalVector, ...], Flat] = {bottom.key: bottom}
    frontier = [bottom]
    while frontier:
        next_frontier = []
        for flat in frontier:
            for i in range(len(a)):
                if i in flat.indices:
                    continue
                meet = _flat_from_indices(a, flat.indices | {i})
                if meet is None or meet.key in found:
                    continue
                found[meet.key] = meet
                next_frontier.append(meet)
        frontier = next_frontier

    flats = tuple(sorted(found.values(), key=Flat.sort_key))
    mobius: List[int] = []
    for i, x in enumerate(flats):
        if i == 0:
            mobius.append(1)
            continue
        mobius.append(-sum(mobius[j] for j in range(i) if flats[j].indices < x.indices))
    logger.debug("built flat poset of %s: %d flats", a.name or "arrangement", len(flats))
    return FlatPoset(a.ambient_dim, flats, tuple(mobius))


def localize(a: Arrangement, x: Flat) -> Arrangement:
    """A_X: the hyperplanes containing X."""
    return a.subarrangement(x.indices, name=f"{a.name}_X" if a.name else "")


def local_tangent_arrangement(a: Arrangement, x: Flat) -> Arrangement:
    """T A_X: the localization translated so that X passes through the origin."""
    chosen = sorted(x.indices)
    return Arrangement(
        a.ambient_dim,
        tuple(Hyperplane(a.hyperplanes[i].normal, 0, a.hyperplanes[i].label) for i in chosen),
        f"T{a.name}_X" if a.name else "",
        a.complexified_real,
    )


def restrict(a: Arrangement, x: Flat) -> Arrangement:
    """A^X: distinct nonempty traces on X, in the coordinates of X's direction basis."""
    if x.dim == 0:
        raise RestrictionError("cannot restrict to a point: no ambient space remains")
    traces: List[Hyperplane] = []
    seen = set()
    for i, h in enumerate(a.hyperplanes):
        if i in x.indices:
            continue
        normal = tuple(dot(h.normal, b) for b in x.direction)
        if not any(normal):
            continue
        trace = Hyperplane(normal, h.offset - dot(h.normal, x.point), h.label)
        key = trace.canonical()
        if key in seen:
            continue
        seen.add(key)
        traces.append(trace)
    return Arrangement(x.dim, tuple(traces), f"{a.name}^X" if a.name else "", a.complexified_real)


def whitney_poincare(p: FlatPoset) -> polynomials.Coefficients:
    """Sum over flats of |mu(0, X)| t^{r(X)}."""
    coeffs = [0] * (p.max_rank + 1)
    for flat, mu in zip(p.flats, p.mobius):
        coeffs[flat.codim] += abs(mu)
    return polynomials.normalize(coeffs)


def euler_characteristic(p: FlatPoset) -> int:
    return polynomials.evaluate(whitney_poincare(p), -1)


def corank(a: Arrangement, poset: Optional[FlatPoset] = None) -> int:
    poset = poset or build_flat_poset(a)
    return a.ambient_dim - poset.max_rank


class DualityKind(str, Enum):
    LINEAR = "linear"
    ELLIPTIC = "elliptic"
    TORIC = "toric"


def duality_dimension(kind: str, n: int, r: int, *, empty: bool = False) -> int:
    """Duality dimension of a linear, elliptic or toric arrangement complement."""
    try:
        kind = DualityKind(kind)
    except ValueError:
        choices = ", ".join(k.value for k in DualityKind)
        raise DualityDimensionError(f"unknown arrangement kind {kind!r}; expected one of {choices}")
    if not 0 <= r <= n:
        raise DualityDimensionError(f"corank {r} outside 0..{n}")
    if kind is DualityKind.LINEAR:
        return n - r
    if kind is DualityKind.ELLIPTIC:
        if empty:
            raise DualityDimensionError("elliptic duality needs a non-empty arrangement")
        return n + r
    return n


def abelian_duality_constraints(poin: Sequence[int], claimed_dim: int) -> DualityConstraintReport:
    """Betti positivity, b_1 >= d and the signed Euler inequality for dimension d."""
    d = claimed_dim
    coeffs = polynomials.normalize(poin)
    betti_positive = all(polynomials.coefficient(coeffs, i) > 0 for i in range(d + 1)) and all(
        c == 0 for c in coeffs[d + 1:]
    )
    b1_ok = polynomials.coefficient(coeffs, 1) >= d
    chi = polynomials.evaluate(coeffs, -1)
    return DualityConstraintReport(
        claimed_dim=d,
        poincare=coeffs,
        euler_characteristic=chi,
        betti_positive=betti_positive,
        b1_at_least_d=b1_ok,
        signed_euler_ok=(-1) ** d * chi >= 0,
    )


def cone(a: Arrangement) -> Arrangement:
    """Projective closure: homogenize with a last coordinate and add its zero hyperplane."""
    hyperplanes = [Hyperplane(h.normal + (-h.offset,), 0, h.label) for h in a.hyperplanes]
    hyperplanes.append(Hyperplane((0,) * a.ambient_dim + (1,), 0, "inf"))
    return Arrangement(
        a.ambient_dim + 1, tuple(hyperplanes), f"c{a.name}" if a.name else "", a.complexified_real
    )


def decone(a: Arrangement, index: int) -> Arrangement:
    """Affine chart ``H_index = 1`` of a central arrangement."""
    if not a.is_central:
        raise DegenerateArrangementError("deconing needs a central arrangement")
    h0 = a.hyperplanes[index]
    norm = dot(h0.normal, h0.normal)
    point = tuple(c / norm for c in h0.normal)
    basis = nullspace_rational(RationalMatrix((h0.normal,), a.ambient_dim))
    hyperplanes = []
    for i, h in enumerate(a.hyperplanes):
        if i == index:
            continue
        normal = tuple(dot(h.normal, b) for b in basis)
        hyperplanes.append(Hyperplane(normal, -dot(h.normal, point), h.label))
    return Arrangement(
        a.ambient_dim - 1, tuple(hyperplanes), f"d{a.name}" if a.name else "", a.complexified_real
    )


def product(a1: Arrangement, a2: Arrangement) -> Arrangement:
    """A1 x A2 in Q^{n1 + n2}."""
    n1, n2 = a1.ambient_dim, a2.ambient_dim
    left = [Hyperplane(h.normal + (0,) * n2, h.offset, h.label) for h in a1.hyperplanes]
    right = [Hyperplane((0,) * n1 + h.normal, h.offset, h.label) for h in a2.hyperplanes]
    name = f"{a1.name}x{a2.name}" if a1.name and a2.name else ""
    return Arrangement(n1 + n2, tuple(left + right), name, a1.complexified_real and a2.complexified_real)
