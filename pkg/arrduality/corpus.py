"""Named arrangements used as a regression corpus."""

from typing import Callable, Dict

from .arrangement import Arrangement, decone


def boolean(n: int) -> Arrangement:
    """The coordinate hyperplanes of Q^n; the complement is (C*)^n."""
    forms = [[int(i == j) for j in range(n)] + [0] for i in range(n)]
    return Arrangement.from_forms(n, forms, name=f"boolean{n}")


def generic3() -> Arrangement:
    """x = 0, y = 0, x + y = 1."""
    return Arrangement.from_forms(2, [(1, 0, 0), (0, 1, 0), (1, 1, 1)], name="generic3")


def generic_lines(k: int) -> Arrangement:
    """k tangent lines ``i x - y = i^2`` of a parabola: distinct slopes, no triple points."""
    forms = [(i, -1, i * i) for i in range(1, k + 1)]
    return Arrangement.from_forms(2, forms, name=f"generic{k}")


def concurrent3() -> Arrangement:
    """x = 0, y = 0, x = y."""
    return Arrangement.from_forms(2, [(1, 0, 0), (0, 1, 0), (1, -1, 0)], name="concurrent3")


def braid(n: int) -> Arrangement:
    """x_i = x_j in Q^n (central, corank 1)."""
    forms = []
    for i in range(n):
        for j in range(i + 1, n):
            forms.append([int(c == i) - int(c == j) for c in range(n)] + [0])
    return Arrangement.from_forms(n, forms, name=f"braid{n}")


def essential_braid(n: int) -> Arrangement:
    """The braid arrangement of n + 1 points with the last coordinate set to zero."""
    forms = [[int(c == i) for c in range(n)] + [0] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            forms.append([int(c == i) - int(c == j) for c in range(n)] + [0])
    return Arrangement.from_forms(n, forms, name=f"ebraid{n}")


def deconed_braid() -> Arrangement:
    """Affine chart of the rank-3 braid arrangement: y = 0, 1; z = 0, 1; y = z."""
    return decone(essential_braid(3), 0)


def parallels_transversal() -> Arrangement:
    """x = 0, x = 1, y = 0."""
    return Arrangement.from_forms(2, [(1, 0, 0), (1, 0, 1), (0, 1, 0)], name="parallels_transversal")


def two_parallels() -> Arrangement:
    """x = 0, x = 1 in Q^2: corank 1."""
    return Arrangement.from_forms(2, [(1, 0, 0), (1, 0, 1)], name="two_parallels")


def points_on_line(d: int) -> Arrangement:
    """d points 0, 1, ..., d - 1 on the line."""
    return Arrangement.from_forms(1, [(1, i) for i in range(d)], name=f"points{d}")


def rank3() -> Arrangement:
    """x = 0, y = 0, z = 0, x + y + z = 1."""
    forms = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 1)]
    return Arrangement.from_forms(3, forms, name="rank3")


CORPUS: Dict[str, Callable[[], Arrangement]] = {
    "boolean1": lambda: boolean(1),
    "boolean2": lambda: boolean(2),
    "boolean3": lambda: boolean(3),
    "generic2": lambda: generic_lines(2),
    "generic3": generic3,
    "generic4": lambda: generic_lines(4),
    "concurrent3": concurrent3,
    "deconed_braid": deconed_braid,
    "parallels_transversal": parallels_transversal,
    "two_parallels": two_parallels,
    "points3": lambda: points_on_line(3),
    "rank3": rank3,
}
