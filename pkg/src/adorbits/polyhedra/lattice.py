"""Integer points of truncated polyhedra."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .. import rational as rq
from . import lp
from .dd import _free_coordinates, _lift
from .hpoly import HPolyhedron, canonicalize, contains


class UnboundedTruncation(ValueError):
    pass


def lattice_points(P: HPolyhedron, functional: Sequence, bound) -> list[tuple[int, ...]]:
    """All integer points of ``P ∩ {<functional, x> <= bound}``, sorted.

    Raises :class:`UnboundedTruncation` when the truncated region is
    unbounded.
    """
    f = rq.vec(functional)
    if len(f) != P.dim:
        raise ValueError(f"functional of length {len(f)} for a {P.dim}-dimensional polyhedron")
    R = canonicalize(P.add_inequalities([(rq.scale(Fraction(-1), f), -rq.to_fraction(bound))]))
    if R.inequalities and rq.is_zero(R.inequalities[0][0]):
        return []
    echelon, free = _free_coordinates(R)
    ranges = []
    for c in free:
        e = rq.unit(R.dim, c)
        lo = lp.minimize(e, R.inequalities, R.equalities)
        hi = lp.maximize(e, R.inequalities, R.equalities)
        if lo.status != lp.OPTIMAL or hi.status != lp.OPTIMAL:
            raise UnboundedTruncation(f"truncated region is unbounded along coordinate {c}")
        ranges.append(range(math.ceil(lo.value), math.floor(hi.value) + 1))

    points = []
    for z in itertools.product(*ranges):
        x = _lift([Fraction(v) for v in z], free, echelon, R.dim, False)
        if any(v.denominator != 1 for v in x):
            continue
        if contains(R, x).inside:
            points.append(tuple(int(v) for v in x))
    return sorted(points)
