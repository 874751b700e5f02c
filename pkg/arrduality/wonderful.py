"""Building sets, nested set complexes and meridian classes of wonderful models.

Only the combinatorics is modelled. A building set is a family of flats of
positive rank such that every flat X decomposes as the product of the maximal
members below it (its factors): the hyperplanes through X split among the
factors and the ranks add up. Nested sets are the subsets S of the building set
whose antichains of size >= 2 have a join that exists, is not a member, and
has exactly the antichain as its factors.

The meridian class of the divisor indexed by g is the indicator vector of the
hyperplanes containing g, an element of H_1(M) = Z^{|A|}.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .arrangement import Arrangement, Flat, FlatPoset, build_flat_poset, cone
from .exactlin import RationalMatrix, rational_rank
from .exceptions import BuildingSetError, NotNestedError

logger = logging.getLogger(__name__)

ClassVector = Tuple[int, ...]


class Flavor(str, Enum):
    MINIMAL = "minimal"
    MAXIMAL = "maximal"
    CUSTOM = "custom"


def _normal_rank(a: Arrangement, indices: Iterable[int]) -> int:
    normals = [a.hyperplanes[i].normal for i in sorted(indices)]
    if not normals:
        return 0
    return rational_rank(RationalMatrix(tuple(normals), a.ambient_dim))


def _splitting(a: Arrangement, indices: Sequence[int], rank: int) -> Optional[Tuple[List[int], List[int]]]:
    """A bipartition with additive ranks, or None when the set is irreducible."""
    first, rest = indices[0], list(indices[1:])
    for size in range(0, len(rest)):
        for extra in combinations(rest, size):
            left = [first, *extra]
            right = [i for i in rest if i not in extra]
            if _normal_rank(a, left) + _normal_rank(a, right) == rank:
                return left, right
    return None


def is_irreducible(a: Arrangement, x: Flat) -> bool:
    """True iff localize(a, x) has no rank-additive partition into two nonempty parts."""
    indices = sorted(x.indices)
    if len(indices) <= 1:
        return True
    return _splitting(a, indices, x.codim) is None


def irreducible_factors(a: Arrangement, x: Flat, poset: Optional[FlatPoset] = None) -> List[Flat]:
    """The finest rank-additive decomposition of A_X, as flats of ``a``."""
    poset = poset or build_flat_poset(a)
    pending = [sorted(x.indices)]
    blocks: List[List[int]] = []
    while pending:
        block = pending.pop()
        split = _splitting(a, block, _normal_rank(a, block)) if len(block) > 1 else None
        if split is None:
            blocks.append(block)
        else:
            pending.extend(split)
    factors = [poset.span(block) for block in blocks]
    return sorted(factors, key=Flat.sort_key)


@dataclass(frozen=True)
class BuildingSet:
    """A building set of the flat poset of ``arrangement``."""
    arrangement: Arrangement
    poset: FlatPoset
    members: Tuple[Flat, ...]
    flavor: Flavor

    def __contains__(self, flat: Flat) -> bool:
        return flat.indices in self._member_indices()

    def __len__(self) -> int:
        return len(self.members)

    def local(self, x: Flat) -> List[Flat]:
        """G_X: the members lying below X."""
        return [g for g in self.members if FlatPoset.leq(g, x)]

    def factors(self, x: Flat) -> List[Flat]:
        """Maximal members below X."""
        below = self.local(x)
        return [g for g in below if not any(g.indices < h.indices for h in below)]

    def problems(self) -> List[str]:
        """Flats whose factors fail the decomposition; empty for a valid building set."""
        issues = []
        for x in self.poset.flats[1:]:
            factors = self.factors(x)
            if sum(f.codim for f in factors) != x.codim:
                issues.append(f"flat {sorted(x.indices)}: factor ranks do not add up")
                continue
            covered: List[int] = []
            for f in factors:
                covered.extend(f.indices)
            if sorted(covered) != sorted(x.indices):
                issues.append(f"flat {sorted(x.indices)}: factors do not partition its hyperplanes")
        return issues

    def _member_indices(self) -> FrozenSet[FrozenSet[int]]:
        cache = self.__dict__.get("_indices_cache")
        if cache is None:
            cache = frozenset(g.indices for g in self.members)
            object.__setattr__(self, "_indices_cache", cache)
        return cache


def _validated(g: BuildingSet) -> BuildingSet:
    issues = g.problems()
    if issues:
        raise BuildingSetError("; ".join(issues))
    logger.debug("building set (%s) with %d members validated", g.flavor.value, len(g))
    return g


def minimal_building_set(a: Arrangement, poset: Optional[FlatPoset] = None) -> BuildingSet:
    """The irreducible flats."""
    poset = poset or build_flat_poset(a)
    members = tuple(x for x in poset.flats[1:] if is_irreducible(a, x))
    return _validated(BuildingSet(a, poset, members, Flavor.MINIMAL))


def maximal_building_set(a: Arrangement, poset: Optional[FlatPoset] = None) -> BuildingSet:
    """Every flat of positive rank."""
    poset = poset or build_flat_poset(a)
    return _validated(BuildingSet(a, poset, tuple(poset.flats[1:]), Flavor.MAXIMAL))


def custom_building_set(
    a: Arrangement, flats: Iterable[Flat], poset: Optional[FlatPoset] = None
) -> BuildingSet:
    poset = poset or build_flat_poset(a)
    members = tuple(sorted({f.indices: f for f in flats}.values(), key=Flat.sort_key))
    if any(f.codim == 0 for f in members):
        raise BuildingSetError("building sets hold flats of positive rank only")
    return _validated(BuildingSet(a, poset, members, Flavor.CUSTOM))


def building_set(a: Arrangement, flavor: str = "minimal", poset: Optional[FlatPoset] = None) -> BuildingSet:
    if Flavor(flavor) is Flavor.MAXIMAL:
        return maximal_building_set(a, poset)
    if Flavor(flavor) is Flavor.MINIMAL:
        return minimal_building_set(a, poset)
    raise BuildingSetError("custom building sets need an explicit list of flats")


def _antichain_ok(g: BuildingSet, antichain: Sequence[Flat]) -> bool:
    joined = g.poset.join(antichain)
    if joined is None or joined in g:
        return False
    return {f.indices for f in g.factors(joined)} == {f.indices for f in antichain}


def _is_antichain(members: Sequence[Flat]) -> bool:
    return not any(
        FlatPoset.leq(x, y) or FlatPoset.leq(y, x) for x, y in combinations(members, 2)
    )


def is_nested(g: BuildingSet, members: Iterable[Flat]) -> bool:
    """Definition check over every antichain of size >= 2."""
    chosen = list(members)
    for size in range(2, len(chosen) + 1):
        for subset in combinations(chosen, size):
            if _is_antichain(subset) and not _antichain_ok(g, subset):
                return False
    return True


@dataclass(frozen=True)
class NestedSetComplex:
    """Simplicial complex of nested sets; faces are sorted tuples of member positions."""
    building_set: BuildingSet
    faces: Tuple[Tuple[int, ...], ...]

    @property
    def f_vector(self) -> Tuple[int, ...]:
        """f[i] = number of faces with i + 1 members (the empty face is not counted)."""
        top = max((len(f) for f in self.faces), default=0)
        return tuple(sum(1 for f in self.faces if len(f) == k) for k in range(1, top + 1))

    @property
    def max_face_size(self) -> int:
        return max((len(f) for f in self.faces), default=0)

    @property
    def facets(self) -> List[Tuple[int, ...]]:
        face_set = set(self.faces)
        return [
            f for f in self.faces
            if not any(set(f) < set(other) for other in face_set if len(other) == len(f) + 1)
        ]

    def face_flats(self, face: Sequence[int]) -> List[Flat]:
        return [self.building_set.members[i] for i in face]

    def __contains__(self, members: Iterable[Flat]) -> bool:
        positions = {g.indices: i for i, g in enumerate(self.building_set.members)}
        try:
            face = tuple(sorted(positions[m.indices] for m in members))
        except KeyError:
            return False
        return face in set(self.faces)


def nested_set_complex(g: BuildingSet) -> NestedSetComplex:
    """All nonempty nested sets, grown one member at a time."""
    members = g.members
    faces: List[Tuple[int, ...]] = [(i,) for i in range(len(members))]
    frontier = list(faces)
    while frontier:
        grown = []
        for face in frontier:
            current = [members[i] for i in face]
            for j in range(face[-1] + 1, len(members)):
                candidate = members[j]
                if _extends(g, current, candidate):
                    grown.append(face + (j,))
        faces.extend(grown)
        frontier = grown
    faces.sort(key=lambda f: (len(f), f))
    logger.debug("nested set complex: %d faces over %d members", len(faces), len(members))
    return NestedSetComplex(g, tuple(faces))


def _extends(g: BuildingSet, face: Sequence[Flat], candidate: Flat) -> bool:
    """Whether face + candidate is nested, given that face already is."""
    for size in range(1, len(face) + 1):
        for subset in combinations(face, size):
            antichain = (*subset, candidate)
            if _is_antichain(antichain) and not _antichain_ok(g, antichain):
                return False
    return True


def brute_force_nested_sets(g: BuildingSet) -> Tuple[Tuple[int, ...], ...]:
    """Every nonempty subset of the building set that passes is_nested."""
    members = g.members
    faces = []
    for size in range(1, len(members) + 1):
        for face in combinations(range(len(members)), size):
            if is_nested(g, [members[i] for i in face]):
                faces.append(face)
    return tuple(faces)


def meridian_class(a: Arrangement, g: Flat) -> ClassVector:
    """Indicator vector of the hyperplanes containing g."""
    return tuple(int(i in g.indices) for i in range(len(a)))


@dataclass(frozen=True)
class LocalTorusData:
    """The rank-|S| free abelian subgroup C_{S,X} through its generator classes."""
    flat: Flat
    nested_set: Tuple[Flat, ...]
    rank: int
    generators: Tuple[ClassVector, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "flat": sorted(self.flat.indices),
            "nested_set": [sorted(g.indices) for g in self.nested_set],
            "rank": self.rank,
            "generators": [list(v) for v in self.generators],
        }


def local_torus_data(
    a: Arrangement, x: Flat, s: Iterable[Flat], flavor: str = "minimal", poset: Optional[FlatPoset] = None
) -> LocalTorusData:
    """Rank and meridian generators of C_{S,X} for a nested set S of T A_X."""
    g = building_set(a, flavor, poset)
    chosen = sorted(s, key=Flat.sort_key)
    local = {m.indices for m in g.local(x)}
    outside = [sorted(m.indices) for m in chosen if m.indices not in local]
    if outside:
        raise NotNestedError(f"flats {outside} are not in the building set of T A_X")
    if not chosen or not is_nested(g, chosen):
        raise NotNestedError(f"{[sorted(m.indices) for m in chosen]} is not a nested set")
    generators = tuple(meridian_class(a, m) for m in chosen)
    return LocalTorusData(x, tuple(chosen), len(chosen), generators)


def all_gamma_classes(a: Arrangement, flavor: str = "minimal", poset: Optional[FlatPoset] = None) -> Tuple[ClassVector, ...]:
    """Meridian classes of every member of every local building set G_X, X in L(A)."""
    g = building_set(a, flavor, poset)
    seen: Dict[ClassVector, None] = {}
    for x in g.poset.flats:
        for member in g.local(x):
            seen.setdefault(meridian_class(a, member), None)
    return tuple(seen)


def projective_gamma_classes(a: Arrangement, flavor: str = "minimal") -> Tuple[ClassVector, ...]:
    """Classes of cone building-set members lying in the hyperplane at infinity.

    Written in affine meridian coordinates: the meridian at infinity is minus the
    sum of all affine meridians.
    """
    closure = cone(a)
    infinity = len(a)
    g = building_set(closure, flavor)
    classes = []
    for member in g.members:
        # the apex of the cone is not a divisor of the projective model
        if infinity not in member.indices or len(member.indices) == len(closure):
            continue
        classes.append(tuple(int(i in member.indices) - 1 for i in range(len(a))))
    return tuple(classes)
