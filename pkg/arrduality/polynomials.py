"""Dense integer polynomials in one variable ``t``.

Polynomials travel through the package as tuples of integer coefficients,
lowest degree first, with trailing zeros stripped. Arithmetic goes through
``sympy.Poly`` over ``ZZ``.
"""

from typing import Iterable, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.domains import ZZ

Coefficients = Tuple[int, ...]

T = Symbol("t")


def normalize(coeffs: Iterable[int]) -> Coefficients:
    values = [int(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def to_poly(coeffs: Sequence[int]) -> Poly:
    return Poly.from_list(list(reversed(normalize(coeffs))) or [0], T, domain=ZZ)


def from_poly(poly: Poly) -> Coefficients:
    return normalize(int(c) for c in reversed(poly.all_coeffs()))


def add(a: Sequence[int], b: Sequence[int]) -> Coefficients:
    return from_poly(to_poly(a) + to_poly(b))


def multiply(a: Sequence[int], b: Sequence[int]) -> Coefficients:
    return from_poly(to_poly(a) * to_poly(b))


def power(a: Sequence[int], exponent: int) -> Coefficients:
    return from_poly(to_poly(a) ** exponent)


def evaluate(coeffs: Sequence[int], value: int) -> int:
    return int(to_poly(coeffs).eval(value))


def coefficient(coeffs: Sequence[int], degree: int) -> int:
    return coeffs[degree] if 0 <= degree < len(coeffs) else 0


def format_polynomial(coeffs: Sequence[int], var: str = "t") -> str:
    """Render ``(1, 2, 1)`` as ``1 + 2t + t^2``."""
    terms = []
    for degree, c in enumerate(normalize(coeffs)):
        if c == 0:
            continue
        if degree == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else str(abs(c))
            body = head + (var if degree == 1 else f"{var}^{degree}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text
