"""Toric arrangements in (C*)^n and their posets of layers.

Points of the compact torus are written x = exp(2 pi i theta) with theta in
(R/Z)^n. The hypersurface ``x^a = exp(2 pi i b)`` is ``a . theta = b (mod 1)``
with ``a`` primitive and ``b`` in [0, 1). Intersections are solved through the
Smith normal form ``U A V = D``: with ``theta = V phi`` the system becomes
``d_i phi_i = (U b)_i (mod 1)``, so a consistent system has ``prod d_i``
connected components.

A layer is stored through its saturated lattice (the first r rows of V^-1, put
in Hermite form) and the values of that lattice on any of its points.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from . import polynomials
from .arrangement import abelian_duality_constraints
from .exactlin import (
    IntegerMatrix,
    IntegerVector,
    RationalMatrix,
    RationalVector,
    as_fraction,
    determinant,
    dot,
    hermite_basis,
    integer_inverse,
    rational_rank,
    smith_normal_form,
)
from .exceptions import ArrangementTooLargeError, DegenerateArrangementError, RestrictionError
from .models import ToricDualityReport

logger = logging.getLogger(__name__)

DEFAULT_MAX_TORIC_DIMENSION = 4
DEFAULT_MAX_HYPERSURFACES = 8


def _frac_part(value: Fraction) -> Fraction:
    return as_fraction(value) % 1


@dataclass(frozen=True)
class ToricHypersurface:
    """``{x : x^exponent = exp(2 pi i offset)}``; the offset is kept in [0, 1)."""
    exponent: IntegerVector
    offset: Fraction = Fraction(0)
    label: Optional[str] = None

    def __post_init__(self) -> None:
        exponent = tuple(int(e) for e in self.exponent)
        if not any(exponent):
            raise DegenerateArrangementError("toric hypersurface with zero exponent vector")
        divisor = 0
        for e in exponent:
            divisor = gcd(divisor, e)
        if divisor != 1:
            raise DegenerateArrangementError(f"exponent vector {exponent} is not primitive")
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "offset", _frac_part(self.offset))

    def canonical(self) -> Tuple[IntegerVector, Fraction]:
        """Same subtorus, written with the first nonzero exponent positive."""
        lead = next(e for e in self.exponent if e)
        if lead > 0:
            return self.exponent, self.offset
        return tuple(-e for e in self.exponent), _frac_part(-self.offset)

    def value(self, theta: Sequence[Fraction]) -> Fraction:
        """a . theta - b, reduced mod 1; zero exactly on the hypersurface."""
        return _frac_part(dot(self.exponent, theta) - self.offset)


@dataclass(frozen=True)
class ToricArrangement:
    """Distinct toric hypersurfaces in (C*)^n."""
    ambient_dim: int
    hypersurfaces: Tuple[ToricHypersurface, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "hypersurfaces", tuple(self.hypersurfaces))
        seen: Dict[Tuple[IntegerVector, Fraction], int] = {}
        for i, h in enumerate(self.hypersurfaces):
            if len(h.exponent) != self.ambient_dim:
                raise DegenerateArrangementError(
                    f"hypersurface {i} has {len(h.exponent)} exponents, expected {self.ambient_dim}"
                )
            key = h.canonical()
            if key in seen:
                raise DegenerateArrangementError(f"hypersurfaces {seen[key]} and {i} coincide")
            seen[key] = i

    def __len__(self) -> int:
        return len(self.hypersurfaces)

    def exponent_matrix(self) -> IntegerMatrix:
        return IntegerMatrix(tuple(h.exponent for h in self.hypersurfaces), self.ambient_dim)


@dataclass(frozen=True)
class Layer:
    """A connected component of an intersection of hypersurfaces."""
    lattice: Tuple[IntegerVector, ...]
    offsets: Tuple[Fraction, ...]
    point: RationalVector
    dim: int
    indices: FrozenSet[int] = field(default=frozenset(), compare=False)

    @property
    def codim(self) -> int:
        return len(self.lattice)

    @property
    def key(self) -> Tuple[Tuple[IntegerVector, ...], Tuple[Fraction, ...]]:
        return self.lattice, self.offsets

    def contained_in(self, h: ToricHypersurface) -> bool:
        if not _in_span(h.exponent, self.lattice):
            return False
        return h.value(self.point) == 0


def _in_span(vector: Sequence[int], lattice: Sequence[Sequence[int]]) -> bool:
    if not lattice:
        return not any(vector)
    base = rational_rank(RationalMatrix.from_rows(lattice, len(vector)))
    return rational_rank(RationalMatrix.from_rows([*lattice, vector], len(vector))) == base


def _layer(lattice_rows: Sequence[IntegerVector], point: Sequence[Fraction], n: int) -> Layer:
    basis = hermite_basis(lattice_rows, n)
    offsets = tuple(_frac_part(dot(row, point)) for row in basis)
    return Layer(basis, offsets, tuple(_frac_part(c) for c in point), n - len(basis))


def components(
    rows: Sequence[Sequence[int]], rhs: Sequence[Fraction], n: int
) -> List[Layer]:
    """Connected components of ``rows . theta = rhs (mod 1)``; empty if inconsistent."""
    if not rows:
        return [_layer((), (Fraction(0),) * n, n)]
    a = IntegerMatrix.from_rows(rows, n)
    _, left, right = smith_normal_form(a)
    d = left @ a @ right
    diagonal = [d.entries[i][i] if i < n else 0 for i in range(a.rows)]
    rank = sum(1 for v in diagonal if v)
    ub = [dot(row, rhs) for row in left.entries]
    if any(ub[i].denominator != 1 for i in range(rank, a.rows)):
        return []
    inverse = integer_inverse(right)
    lattice = inverse.entries[:rank]
    layers = []
    for shifts in itertools.product(*(range(abs(diagonal[i])) for i in range(rank))):
        phi = [(ub[i] + s) / diagonal[i] for i, s in enumerate(shifts)] + [Fraction(0)] * (n - rank)
        theta = tuple(dot(row, phi) for row in right.entries)
        layers.append(_layer(lattice, theta, n))
    return layers


def count_components(rows: Sequence[Sequence[int]], rhs: Sequence[Fraction], n: int) -> int:
    """Product of the Smith invariant factors when the offsets are compatible, else 0."""
    return len(components(rows, rhs, n))


def brute_force_point_count(rows: Sequence[Sequence[int]], rhs: Sequence[Fraction], n: int) -> int:
    """Count solutions of a zero-dimensional system on a fine enough grid of (Q/Z)^n."""
    rhs = [as_fraction(b) for b in rhs]
    square: List[Sequence[int]] = []
    for row in rows:
        candidate = square + [row]
        if rational_rank(RationalMatrix.from_rows(candidate, n)) == len(candidate):
            square = candidate
    if len(square) != n:
        raise ValueError("the system does not cut out finitely many points")
    common = 1
    for b in rhs:
        common = common * b.denominator // gcd(common, b.denominator)
    grid = common * abs(determinant(IntegerMatrix.from_rows(square, n)))
    count = 0
    for numerators in itertools.product(range(grid), repeat=n):
        theta = [Fraction(k, grid) for k in numerators]
        if all(_frac_part(dot(row, theta) - b) == 0 for row, b in zip(rows, rhs)):
            count += 1
    return count


@dataclass(frozen=True)
class LayerPoset:
    """Layers ordered by reverse inclusion; ``layers[0]`` is the whole torus."""
    ambient_dim: int
    layers: Tuple[Layer, ...]
    mobius: Tuple[int, ...]

    @property
    def bottom(self) -> Layer:
        return self.layers[0]

    @property
    def max_codim(self) -> int:
        return max(layer.codim for layer in self.layers)

    @staticmethod
    def leq(x: Layer, y: Layer) -> bool:
        """x <= y iff y is contained in x."""
        if not all(_in_span(row, y.lattice) for row in x.lattice):
            return False
        return all(_frac_part(dot(row, y.point)) == off for row, off in zip(x.lattice, x.offsets))

    def of_codim(self, codim: int) -> List[Layer]:
        return [layer for layer in self.layers if layer.codim == codim]

    def index_of(self, layer: Layer) -> int:
        return [x.key for x in self.layers].index(layer.key)


def _closed(layer: Layer, hypersurfaces: Sequence[ToricHypersurface]) -> Layer:
    indices = frozenset(i for i, h in enumerate(hypersurfaces) if layer.contained_in(h))
    return Layer(layer.lattice, layer.offsets, layer.point, layer.dim, indices)


def layer_poset(
    t: Union[ToricArrangement, Sequence[ToricHypersurface]],
    n: int,
    max_dimension: int = DEFAULT_MAX_TORIC_DIMENSION,
    max_hypersurfaces: int = DEFAULT_MAX_HYPERSURFACES,
) -> LayerPoset:
    """Every connected component of every intersection, with Moebius values."""
    t = list(t.hypersurfaces if isinstance(t, ToricArrangement) else t)
    if n > max_dimension or len(t) > max_hypersurfaces:
        raise ArrangementTooLargeError(
            f"{len(t)} hypersurfaces in (C*)^{n} exceeds the bounds "
            f"({max_hypersurfaces} hypersurfaces, dimension {max_dimension})"
        )
    ToricArrangement(n, tuple(t))
    bottom = _closed(components((), (), n)[0], t)
    found: Dict[object, Layer] = {bottom.key: bottom}
    frontier = [bottom]
    while frontier:
        next_frontier = []
        for layer in frontier:
            for i, h in enumerate(t):
                if i in layer.indices:
                    continue
                rows = [*layer.lattice, h.exponent]
                rhs = [*layer.offsets, h.offset]
                for piece in components(rows, rhs, n):
                    if piece.key in found:
                        continue
                    piece = _closed(piece, t)
                    found[piece.key] = piece
                    next_frontier.append(piece)
        frontier = next_frontier

    layers = tuple(sorted(found.values(), key=lambda x: (x.codim, sorted(x.indices), x.key)))
    mobius: List[int] = []
    for i, x in enumerate(layers):
        if i == 0:
            mobius.append(1)
            continue
        mobius.append(-sum(mobius[j] for j in range(i) if layers[j].codim < x.codim and LayerPoset.leq(layers[j], x)))
    logger.debug("built layer poset with %d layers in (C*)^%d", len(layers), n)
    return LayerPoset(n, layers, tuple(mobius))


def _primitive_traces(exponent: Sequence[int], offset: Fraction) -> List[ToricHypersurface]:
    divisor = 0
    for e in exponent:
        divisor = gcd(divisor, e)
    primitive = tuple(e // divisor for e in exponent)
    return [ToricHypersurface(primitive, (offset + s) / divisor) for s in range(divisor)]


def restrict_to_layer(t: ToricArrangement, layer: Layer) -> ToricArrangement:
    """Traces of the non-containing hypersurfaces, on the layer parametrized as a torus."""
    if layer.dim == 0:
        raise RestrictionError("cannot restrict to a zero-dimensional layer")
    n = t.ambient_dim
    if layer.lattice:
        _, _, right = smith_normal_form(IntegerMatrix.from_rows(layer.lattice, n))
        columns = [tuple(row[j] for row in right.entries) for j in range(layer.codim, n)]
    else:
        columns = [tuple(int(i == j) for i in range(n)) for j in range(n)]

    traces: List[ToricHypersurface] = []
    seen = set()
    for h in t.hypersurfaces:
        if layer.contained_in(h):
            continue
        exponent = tuple(int(dot(h.exponent, col)) for col in columns)
        if not any(exponent):
            continue
        for trace in _primitive_traces(exponent, _frac_part(h.offset - dot(h.exponent, layer.point))):
            key = trace.canonical()
            if key not in seen:
                seen.add(key)
                traces.append(ToricHypersurface(*key, label=h.label))
    return ToricArrangement(layer.dim, tuple(traces), f"{t.name}^L" if t.name else "")


def toric_poincare(lp: LayerPoset, n: Optional[int] = None) -> polynomials.Coefficients:
    """Sum over layers of |mu| t^codim (1 + t)^dim."""
    n = lp.ambient_dim if n is None else n
    total: polynomials.Coefficients = (0,)
    for layer, mu in zip(lp.layers, lp.mobius):
        term = polynomials.multiply(
            [0] * layer.codim + [abs(mu)], polynomials.power((1, 1), n - layer.codim)
        )
        total = polynomials.add(total, term)
    return polynomials.normalize(total)


def toric_corank(t: ToricArrangement) -> int:
    if not len(t):
        return t.ambient_dim
    return t.ambient_dim - rational_rank(t.exponent_matrix().to_rational())


def toric_duality_check(t: ToricArrangement, n: Optional[int] = None) -> ToricDualityReport:
    """Abelian duality constraints in dimension n for the complement of ``t``."""
    n = t.ambient_dim if n is None else n
    lp = layer_poset(t, n)
    poin = toric_poincare(lp, n)
    return ToricDualityReport(
        ambient_dim=n,
        corank=toric_corank(t),
        layer_count=len(lp.layers),
        constraints=abelian_duality_constraints(poin, n),
    )


def product(t1: ToricArrangement, t2: ToricArrangement) -> ToricArrangement:
    """t1 x t2 in (C*)^{n1 + n2}."""
    n1, n2 = t1.ambient_dim, t2.ambient_dim
    left = [ToricHypersurface(h.exponent + (0,) * n2, h.offset, h.label) for h in t1.hypersurfaces]
    right = [ToricHypersurface((0,) * n1 + h.exponent, h.offset, h.label) for h in t2.hypersurfaces]
    return ToricArrangement(n1 + n2, tuple(left + right))


def punctured_circle(d: int) -> ToricArrangement:
    """C* minus the d-th roots of unity."""
    return ToricArrangement(1, tuple(ToricHypersurface((1,), Fraction(k, d)) for k in range(d)), f"circle{d}")


def from_rows(n: int, rows: Iterable[Tuple[Sequence[int], Fraction]], name: str = "") -> ToricArrangement:
    return ToricArrangement(n, tuple(ToricHypersurface(a, b) for a, b in rows), name)
