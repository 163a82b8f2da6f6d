"""Incidences between lines and polynomial zero sets; critical points and lines."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Union

from ..core_geom import Line3, Point3
from ..errors import LineNotInZeroSet, ZeroPolynomial
from .tripoly import TriPoly, gradient, square_free_part
from .unipoly import sturm_distinct_real_roots


@dataclass(frozen=True)
class Contained:
    """The line lies in the zero set."""


@dataclass(frozen=True)
class Count:
    k: int


CONTAINED = Contained()


def line_zero_set_incidences(p, line: Line3) -> Union[Contained, Count]:
    """Distinct real points of ``line`` on Z(p), or ``CONTAINED``.

    ``p`` may be a TriPoly or anything with a ``restrict_to_line`` method.
    """
    u = p.restrict_to_line(line)
    if not u:
        return CONTAINED
    return Count(sturm_distinct_real_roots(u))


def is_critical_point(p: TriPoly, x: Point3) -> bool:
    if not p:
        raise ZeroPolynomial("critical points of the zero polynomial")
    sf = square_free_part(p)
    return sf.sign_at(x) == 0 and all(g.sign_at(x) == 0 for g in gradient(sf))


def _critical_line_sf(sf: TriPoly, grad, line: Line3) -> bool:
    if sf.restrict_to_line(line):
        raise LineNotInZeroSet(f"{line!r} does not lie in the zero set")
    return all(not g.restrict_to_line(line) for g in grad)


def is_critical_line(p: TriPoly, line: Line3) -> bool:
    """Every point of ``line`` is a critical point of Z(p)."""
    if not p:
        raise ZeroPolynomial("critical lines of the zero polynomial")
    sf = square_free_part(p)
    return _critical_line_sf(sf, gradient(sf), line)


def critical_line_census(p: TriPoly, candidates: Sequence[Line3]) -> List[Line3]:
    """The candidates that are critical lines of Z(p), in input order."""
    if not p:
        raise ZeroPolynomial("critical lines of the zero polynomial")
    sf = square_free_part(p)
    grad = gradient(sf)
    out = []
    for line in candidates:
        if sf.restrict_to_line(line):
            continue
        if _critical_line_sf(sf, grad, line):
            out.append(line)
    return out
