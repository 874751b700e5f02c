"""Reading and writing arrangement files.

Affine arrangements::

    dim 2
    1 0 0        # x = 0
    0 1 0        # y = 0
    1 1 1        # x + y = 1

Each row holds the normal coefficients and then the offset. Toric arrangements::

    torus 2
    1 0 0/1      # x = 1
    0 1 1/2      # y = -1

Each row holds the integer exponents and then ``p/q`` for the root of unity
exp(2 pi i p/q). Blank lines and ``#`` comments are ignored.
"""

import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

from .arrangement import Arrangement, Hyperplane
from .exceptions import DegenerateArrangementError, ParseError
from .toric import ToricArrangement, ToricHypersurface

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def _header(lines: Iterator[Tuple[int, List[str]]], keyword: str) -> int:
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"empty input, expected '{keyword} n'")
    if len(tokens) != 2 or tokens[0] != keyword:
        raise ParseError(f"expected '{keyword} n'", number)
    try:
        dim = int(tokens[1])
    except ValueError:
        raise ParseError(f"dimension must be an integer, got {tokens[1]!r}", number)
    if dim < 0:
        raise ParseError("dimension must be non-negative", number)
    return dim


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational: {token!r}", line)


def _integer(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", line)


def parse_arrangement_text(text: str, name: str = "") -> Arrangement:
    lines = _lines(text)
    n = _header(lines, "dim")
    hyperplanes: List[Hyperplane] = []
    seen: Dict[Tuple[Fraction, ...], int] = {}
    for number, tokens in lines:
        if len(tokens) != n + 1:
            raise ParseError(f"expected {n + 1} numbers, got {len(tokens)}", number)
        values = [_rational(t, number) for t in tokens]
        try:
            h = Hyperplane(tuple(values[:-1]), values[-1])
            key = h.canonical()
        except DegenerateArrangementError as e:
            raise ParseError(str(e), number)
        if key in seen:
            raise ParseError(f"duplicate hyperplane: same as line {seen[key]}", number)
        seen[key] = number
        hyperplanes.append(h)
    return Arrangement(n, tuple(hyperplanes), name)


def parse_toric_text(text: str, name: str = "") -> ToricArrangement:
    lines = _lines(text)
    n = _header(lines, "torus")
    hypersurfaces: List[ToricHypersurface] = []
    seen: Dict[object, int] = {}
    for number, tokens in lines:
        if len(tokens) != n + 1:
            raise ParseError(f"expected {n} exponents and an offset, got {len(tokens)} entries", number)
        exponent = tuple(_integer(t, number) for t in tokens[:-1])
        try:
            h = ToricHypersurface(exponent, _rational(tokens[-1], number))
        except DegenerateArrangementError as e:
            raise ParseError(str(e), number)
        key = h.canonical()
        if key in seen:
            raise ParseError(f"duplicate hypersurface: same as line {seen[key]}", number)
        seen[key] = number
        hypersurfaces.append(h)
    return ToricArrangement(n, tuple(hypersurfaces), name)


def _read(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror or e}")


def parse_arrangement(path: PathLike) -> Arrangement:
    arrangement = parse_arrangement_text(_read(path), Path(path).stem)
    logger.debug("parsed %d hyperplanes from %s", len(arrangement), path)
    return arrangement


def parse_toric(path: PathLike) -> ToricArrangement:
    arrangement = parse_toric_text(_read(path), Path(path).stem)
    logger.debug("parsed %d hypersurfaces from %s", len(arrangement), path)
    return arrangement


def serialize_arrangement(a: Arrangement) -> str:
    rows = [f"dim {a.ambient_dim}"]
    for h in a.hyperplanes:
        rows.append(" ".join(str(v) for v in h.form()))
    return "\n".join(rows) + "\n"


def serialize_toric(t: ToricArrangement) -> str:
    rows = [f"torus {t.ambient_dim}"]
    for h in t.hypersurfaces:
        offset = f"{h.offset.numerator}/{h.offset.denominator}"
        rows.append(" ".join([*(str(e) for e in h.exponent), offset]))
    return "\n".join(rows) + "\n"
