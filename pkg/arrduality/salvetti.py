"""Salvetti CW model of a complexified-real arrangement and rank-1 twisted cohomology.

Faces of the real arrangement are sign vectors in {-1, 0, +1}^{|A|}, each carrying
an exact point of its relative interior. A k-cell of the model is a pair <C, F>
where F is a face of codimension k and C a chamber whose closure contains F.
The facets of <C, F> are <G o C, G> for the faces G covering F, where
(G o C)_H = G_H when G_H != 0 and C_H otherwise.

Boundary entries carry an exponent vector: the hyperplanes crossed from their
positive to their negative side along the minimal path between the base
chambers of the two cells. Specializing the exponents at a character rho over
GF(p) gives the twisted chain complex; the dimensions reported by
``twisted_betti`` are ``c_q - rank d_q - rank d_{q+1}``.
"""

import itertools
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .arrangement import Arrangement, Hyperplane, build_flat_poset, restrict
from .exactlin import (
    PrimeFieldMatrix,
    RationalVector,
    check_prime,
    dot,
    prime_field_rank,
    solve_affine,
)
from .exceptions import (
    ArrangementTooLargeError,
    ArrDualityError,
    ConfigurationError,
    FieldError,
    NotComplexifiedRealError,
)

logger = logging.getLogger(__name__)

SignVector = Tuple[int, ...]
BettiVector = Tuple[int, ...]

DEFAULT_MAX_HYPERPLANES = 9
DEFAULT_MAX_DIMENSION = 4
DEFAULT_EXHAUSTIVE_BUDGET = 10**6


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _signs(hyperplanes: Sequence[Hyperplane], point: Sequence[Fraction]) -> SignVector:
    return tuple(_sign(h.value(point)) for h in hyperplanes)


def _chamber_points(dim: int, hyperplanes: Sequence[Hyperplane]) -> List[RationalVector]:
    """One interior point per chamber, by deletion and restriction of the last hyperplane."""
    if not hyperplanes:
        return [tuple(Fraction(0) for _ in range(dim))]
    *rest, last = hyperplanes
    outer = _chamber_points(dim, rest)

    point, basis = solve_affine([last.normal], [last.offset], dim)
    traces: List[Hyperplane] = []
    seen = set()
    for h in rest:
        normal = tuple(dot(h.normal, b) for b in basis)
        if not any(normal):
            continue
        trace = Hyperplane(normal, h.offset - dot(h.normal, point))
        if trace.canonical() not in seen:
            seen.add(trace.canonical())
            traces.append(trace)

    split: Dict[SignVector, List[RationalVector]] = {}
    for y in _chamber_points(dim - 1, traces):
        q = tuple(point[i] + sum((y[j] * basis[j][i] for j in range(len(basis))), Fraction(0)) for i in range(dim))
        ratios = [
            abs(h.value(q)) / abs(dot(h.normal, last.normal))
            for h in rest
            if dot(h.normal, last.normal) != 0
        ]
        eps = min(ratios) / 2 if ratios else Fraction(1)
        split[_signs(rest, q)] = [
            tuple(c - eps * a for c, a in zip(q, last.normal)),
            tuple(c + eps * a for c, a in zip(q, last.normal)),
        ]

    chambers = [p for p in outer if _signs(rest, p) not in split]
    for pieces in split.values():
        chambers.extend(pieces)
    return chambers


def chamber_points(a: Arrangement) -> List[RationalVector]:
    """Exact interior points of the chambers of ``a``, sorted by sign vector."""
    points = _chamber_points(a.ambient_dim, a.hyperplanes)
    return sorted(points, key=lambda p: _signs(a.hyperplanes, p))


@dataclass(frozen=True)
class Face:
    """An open face: its sign vector, dimension and an exact relative-interior point."""
    signs: SignVector
    dim: int
    point: RationalVector
    flat: FrozenSet[int]

    @property
    def is_chamber(self) -> bool:
        return 0 not in self.signs

    def __le__(self, other: "Face") -> bool:
        """Face order: self lies in the closure of other."""
        return all(s == 0 or s == o for s, o in zip(self.signs, other.signs))

    def compose(self, other: "Face") -> SignVector:
        """Sign vector of self o other."""
        return tuple(s if s != 0 else o for s, o in zip(self.signs, other.signs))


@dataclass(frozen=True)
class FacePoset:
    """Faces of the real stratification of R^n, ordered by (dim, sign vector)."""
    ambient_dim: int
    hyperplane_count: int
    faces: Tuple[Face, ...]

    @property
    def chambers(self) -> List[Face]:
        return [f for f in self.faces if f.is_chamber]

    @property
    def euler_sum(self) -> int:
        return sum((-1) ** f.dim for f in self.faces)

    def of_dim(self, dim: int) -> List[Face]:
        return [f for f in self.faces if f.dim == dim]

    def index_of(self, signs: SignVector) -> int:
        return self._positions()[signs]

    def covers(self, face: Face) -> List[Face]:
        """Faces G with face < G and dim G = dim face + 1."""
        return [g for g in self.faces if g.dim == face.dim + 1 and face <= g]

    def f_vector(self) -> Tuple[int, ...]:
        """Number of faces of each dimension 0..n."""
        return tuple(len(self.of_dim(d)) for d in range(self.ambient_dim + 1))

    def _positions(self) -> Dict[SignVector, int]:
        cache = self.__dict__.get("_position_cache")
        if cache is None:
            cache = {f.signs: i for i, f in enumerate(self.faces)}
            object.__setattr__(self, "_position_cache", cache)
        return cache


def enumerate_faces(
    a: Arrangement,
    max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES,
    max_dimension: int = DEFAULT_MAX_DIMENSION,
) -> FacePoset:
    """Every realizable sign vector: the chambers of A^X for each flat X."""
    if not a.complexified_real:
        raise NotComplexifiedRealError(f"{a.name or 'arrangement'} is not complexified-real")
    if len(a) > max_hyperplanes or a.ambient_dim > max_dimension:
        raise ArrangementTooLargeError(
            f"{len(a)} hyperplanes in dimension {a.ambient_dim} exceeds the bounds "
            f"({max_hyperplanes} hyperplanes, dimension {max_dimension})"
        )
    faces = []
    for x in build_flat_poset(a).flats:
        if x.dim == 0:
            local_points = [()]
        else:
            local_points = chamber_points(restrict(a, x))
        for y in local_points:
            point = tuple(
                x.point[i] + sum((y[j] * x.direction[j][i] for j in range(x.dim)), Fraction(0))
                for i in range(a.ambient_dim)
            )
            faces.append(Face(_signs(a.hyperplanes, point), x.dim, point, x.indices))
    faces.sort(key=lambda f: (f.dim, f.signs))
    poset = FacePoset(a.ambient_dim, len(a), tuple(faces))
    if poset.euler_sum != (-1) ** a.ambient_dim:
        raise ArrDualityError(
            f"face counts {poset.f_vector()} violate the Euler relation of R^{a.ambient_dim}"
        )
    logger.debug("enumerated %d faces (%d chambers)", len(faces), len(poset.chambers))
    return poset


@dataclass(frozen=True)
class Cell:
    """The cell <C, F>; chamber and face are positions in the face poset."""
    chamber: int
    face: int
    dim: int


@dataclass(frozen=True)
class BoundaryEntry:
    """Coefficient sign * t^exponent of ``facet`` in the boundary of ``cell``."""
    facet: int
    cell: int
    sign: int
    exponent: Tuple[int, ...]


@dataclass(frozen=True)
class CWModel:
    """Salvetti complex with exponent-carrying boundaries; boundaries[k] maps k-cells to (k-1)-cells."""
    face_poset: FacePoset
    cells: Tuple[Tuple[Cell, ...], ...]
    boundaries: Tuple[Tuple[BoundaryEntry, ...], ...]

    @property
    def dimension(self) -> int:
        return self.face_poset.ambient_dim

    @property
    def hyperplane_count(self) -> int:
        return self.face_poset.hyperplane_count

    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.cells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in enumerate(self.cells))

    def boundary(self, k: int, rho: "Character") -> PrimeFieldMatrix:
        """d_k specialized at rho, as a (#(k-1)-cells x #k-cells) matrix over GF(p)."""
        rows = len(self.cells[k - 1]) if k >= 1 else 0
        cols = len(self.cells[k]) if k < len(self.cells) else 0
        grid = [[0] * cols for _ in range(rows)]
        if 1 <= k < len(self.cells):
            for entry in self.boundaries[k]:
                grid[entry.facet][entry.cell] += entry.sign * rho.evaluate(entry.exponent)
        return PrimeFieldMatrix(rho.prime, tuple(tuple(r) for r in grid), cols)

    def boundary_squared_vanishes(self, rho: "Character") -> bool:
        for k in range(2, len(self.cells)):
            outer, inner = self.boundary(k - 1, rho), self.boundary(k, rho)
            if outer.rows == 0 or inner.cols == 0 or outer.cols == 0:
                continue
            if not (outer.to_domain() * inner.to_domain()).is_zero_matrix:
                return False
        return True


def _exponent(base: SignVector, target: SignVector) -> Tuple[int, ...]:
    return tuple(int(b > 0 and t < 0) for b, t in zip(base, target))


def _orient(
    facets: Sequence[Sequence[int]], lower_signs: Sequence[Dict[int, int]], dim: int
) -> List[Dict[int, int]]:
    """Incidence numbers making every diamond of the face lattice cancel."""
    oriented = []
    for cell, cell_facets in enumerate(facets):
        ridges: Dict[int, List[int]] = {}
        for f in cell_facets:
            for r in lower_signs[f]:
                ridges.setdefault(r, []).append(f)
        signs = {cell_facets[0]: 1}
        queue = deque([cell_facets[0]])
        while queue:
            f = queue.popleft()
            for r, s in lower_signs[f].items():
                pair = ridges[r]
                if len(pair) != 2:
                    raise ArrDualityError(f"ridge shared by {len(pair)} facets in a {dim}-cell")
                other = pair[0] if pair[1] == f else pair[1]
                wanted = -signs[f] * s * lower_signs[other][r]
                if other not in signs:
                    signs[other] = wanted
                    queue.append(other)
                elif signs[other] != wanted:
                    raise ArrDualityError(f"inconsistent orientation of {dim}-cell {cell}")
        oriented.append(signs)
    return oriented


def build_cw_model(fp: FacePoset) -> CWModel:
    """Cells <C, F> by dimension with oriented, exponent-carrying boundaries."""
    n = fp.ambient_dim
    chambers = [i for i, f in enumerate(fp.faces) if f.is_chamber]
    cells: List[List[Cell]] = [[] for _ in range(n + 1)]
    for fi, face in enumerate(fp.faces):
        k = n - face.dim
        for ci in chambers:
            if face <= fp.faces[ci]:
                cells[k].append(Cell(ci, fi, k))
    positions = [{(c.chamber, c.face): j for j, c in enumerate(level)} for level in cells]

    boundaries: List[Tuple[BoundaryEntry, ...]] = [()]
    signs_below: List[Dict[int, int]] = [{} for _ in cells[0]]
    for k in range(1, n + 1):
        facets: List[List[int]] = []
        exponents: List[Dict[int, Tuple[int, ...]]] = []
        for cell in cells[k]:
            chamber, face = fp.faces[cell.chamber], fp.faces[cell.face]
            row_ids, row_exps = [], {}
            for g in fp.covers(face):
                target = fp.index_of(g.compose(chamber))
                row = positions[k - 1][(target, fp.index_of(g.signs))]
                row_ids.append(row)
                row_exps[row] = _exponent(chamber.signs, fp.faces[target].signs)
            facets.append(sorted(row_ids))
            exponents.append(row_exps)

        if k == 1:
            oriented = [
                {row: (-1 if cells[0][row].chamber == cell.chamber else 1) for row in rows}
                for cell, rows in zip(cells[1], facets)
            ]
        else:
            oriented = _orient(facets, signs_below, k)

        entries = []
        for j, (rows, exps) in enumerate(zip(facets, exponents)):
            for row in rows:
                entries.append(BoundaryEntry(row, j, oriented[j][row], exps[row]))
        boundaries.append(tuple(entries))
        signs_below = oriented

    model = CWModel(fp, tuple(tuple(level) for level in cells), tuple(boundaries))
    logger.debug("built CW model with cell counts %s", model.cell_counts())
    return model


@dataclass(frozen=True)
class Character:
    """A rank-1 local system over GF(p): one unit t_H per hyperplane."""
    prime: int
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        check_prime(self.prime)
        reduced = tuple(int(v) % self.prime for v in self.values)
        if any(v == 0 for v in reduced):
            raise FieldError(f"character {tuple(self.values)} has a zero coordinate mod {self.prime}")
        object.__setattr__(self, "values", reduced)

    @classmethod
    def trivial(cls, prime: int, size: int) -> "Character":
        return cls(prime, (1,) * size)

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def evaluate(self, vector: Sequence[int]) -> int:
        """prod t_H^{v_H} mod p; negative exponents use modular inverses."""
        result = 1
        for t, e in zip(self.values, vector):
            if e:
                result = result * pow(t, e, self.prime) % self.prime
        return result


def twisted_betti(m: CWModel, rho: Character, prime: Optional[int] = None) -> BettiVector:
    """(b_0, ..., b_n) of the complement with coefficients twisted by rho."""
    if prime is not None and prime != rho.prime:
        raise FieldError(f"character is over GF({rho.prime}), expected GF({prime})")
    if len(rho.values) != m.hyperplane_count:
        raise FieldError(
            f"character has {len(rho.values)} coordinates for {m.hyperplane_count} hyperplanes"
        )
    n = m.dimension
    ranks = [0] + [prime_field_rank(m.boundary(k, rho)) for k in range(1, n + 1)] + [0]
    return tuple(len(m.cells[q]) - ranks[q] - ranks[q + 1] for q in range(n + 1))


def untwisted_betti(m: CWModel, prime: int = 5) -> BettiVector:
    return twisted_betti(m, Character.trivial(prime, m.hyperplane_count))


def character_space(
    prime: int,
    size: int,
    mode: str = "exhaustive",
    samples: int = 2000,
    seed: Optional[int] = None,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
) -> List[Tuple[int, ...]]:
    """Characters to sweep, in lexicographic order."""
    check_prime(prime)
    if mode == "exhaustive":
        total = (prime - 1) ** size
        if total > budget:
            raise ConfigurationError(
                f"exhaustive sweep of {total} characters exceeds the budget of {budget}; "
                "use sample mode with a seed"
            )
        return list(itertools.product(range(1, prime), repeat=size))
    if mode != "sample":
        raise ConfigurationError(f"unknown sweep mode {mode!r}")
    if seed is None:
        raise ConfigurationError("sample mode requires a seed")
    rng = np.random.default_rng(seed)
    draws = rng.integers(1, prime, size=(samples, size))
    return sorted({tuple(int(v) for v in row) for row in draws})


def _betti_of(model: CWModel, prime: int, values: Tuple[int, ...]) -> BettiVector:
    return twisted_betti(model, Character(prime, values))


def sweep_characters(
    model: CWModel,
    prime: int,
    *,
    mode: str = "exhaustive",
    samples: int = 2000,
    seed: Optional[int] = None,
    workers: int = 1,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
) -> Dict[Tuple[int, ...], BettiVector]:
    """Twisted Betti vectors for every swept character, keyed in lexicographic order."""
    characters = character_space(prime, model.hyperplane_count, mode, samples, seed, budget)
    logger.info("sweeping %d characters over GF(%d) (%s)", len(characters), prime, mode)
    job = partial(_betti_of, model, prime)
    if workers > 1 and len(characters) > 1:
        chunk = max(1, len(characters) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, characters, chunksize=chunk))
    else:
        results = [job(c) for c in characters]
    return dict(zip(characters, results))


def characteristic_variety(
    a: Arrangement,
    p: int,
    q: int,
    *,
    mode: str = "exhaustive",
    samples: int = 2000,
    seed: Optional[int] = None,
    workers: int = 1,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
    model: Optional[CWModel] = None,
) -> List[Character]:
    """GF(p)-points of V^q among the swept characters."""
    model = model or build_cw_model(enumerate_faces(a))
    sweep = sweep_characters(
        model, p, mode=mode, samples=samples, seed=seed, workers=workers, budget=budget
    )
    return [Character(p, values) for values, betti in sweep.items() if q < len(betti) and betti[q] > 0]


def model_for(a: Arrangement, max_hyperplanes: int = DEFAULT_MAX_HYPERPLANES, max_dimension: int = DEFAULT_MAX_DIMENSION) -> CWModel:
    return build_cw_model(enumerate_faces(a, max_hyperplanes, max_dimension))
