"""Fourier-Motzkin projection and Minkowski sums with cones."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .. import rational as rq
from .hpoly import HPolyhedron, VPolyhedron, canonicalize


def _eliminate_one(P: HPolyhedron, j: int) -> HPolyhedron:
    """Eliminate coordinate ``j`` in place (its column becomes zero)."""
    eqs = list(P.equalities)
    pivot = next((k for k, (n, _) in enumerate(eqs) if n[j] != 0), None)
    if pivot is not None:
        en, eb = eqs.pop(pivot)

        def subst(n, b):
            f = n[j] / en[j]
            if f == 0:
                return n, b
            return rq.sub(n, rq.scale(f, en)), b - f * eb

        return HPolyhedron(
            P.dim,
            tuple(subst(n, b) for n, b in P.inequalities),
            tuple(subst(n, b) for n, b in eqs),
        )

    pos, neg, rest = [], [], []
    for n, b in P.inequalities:
        (pos if n[j] > 0 else neg if n[j] < 0 else rest).append((n, b))
    for pn, pb in pos:
        for nn, nb in neg:
            cp, cn = pn[j], -nn[j]
            normal = rq.add(rq.scale(cn, pn), rq.scale(cp, nn))
            rest.append((normal, cn * pb + cp * nb))
    return HPolyhedron(P.dim, tuple(rest), tuple(eqs))


def fm_eliminate(P: HPolyhedron, var_indices: Iterable[int]) -> HPolyhedron:
    """Exact projection of ``P`` onto the coordinates not in ``var_indices``.

    The result lives in the lower-dimensional space of the kept
    coordinates, in their original order, and is canonical.
    """
    drop = sorted(set(var_indices))
    for j in drop:
        if not 0 <= j < P.dim:
            raise IndexError(f"coordinate {j} out of range for dimension {P.dim}")
    Q = P
    for j in drop:
        Q = canonicalize(_eliminate_one(Q, j))
    keep = [c for c in range(P.dim) if c not in drop]

    def restrict(rows):
        return tuple((tuple(n[c] for c in keep), b) for n, b in rows)

    return canonicalize(HPolyhedron(len(keep), restrict(Q.inequalities), restrict(Q.equalities)))


def lift_with_cone(P: HPolyhedron, C: VPolyhedron) -> HPolyhedron:
    """``{(x, t) : x - R t ∈ P, t >= 0}`` for the rays ``R`` of ``C``."""
    rays = C.rays
    k = len(rays)

    def lifted(n):
        return tuple(n) + tuple(-rq.dot(n, r) for r in rays)

    ineqs = [(lifted(n), b) for n, b in P.inequalities]
    ineqs += [(rq.unit(P.dim + k, P.dim + i), Fraction(0)) for i in range(k)]
    eqs = [(lifted(n), b) for n, b in P.equalities]
    return HPolyhedron(P.dim + k, tuple(ineqs), tuple(eqs))


def minkowski_sum_with_cone(P: HPolyhedron, C: VPolyhedron) -> HPolyhedron:
    """Exact H-representation of ``P + C`` for a cone ``C`` with apex 0."""
    if C.dim != P.dim:
        raise ValueError(f"dimension mismatch: polyhedron {P.dim}, cone {C.dim}")
    if any(not rq.is_zero(v) for v in C.vertices):
        raise ValueError("cone must have the origin as its only vertex")
    if not C.rays:
        return canonicalize(P)
    lifted = lift_with_cone(P, C)
    return fm_eliminate(lifted, range(P.dim, P.dim + len(C.rays)))


def cone_hrep(C: VPolyhedron) -> HPolyhedron:
    """H-representation of ``Cone(rays)`` via projection of the lifted system."""
    return minkowski_sum_with_cone(
        HPolyhedron(C.dim, (), tuple((rq.unit(C.dim, i), Fraction(0)) for i in range(C.dim))), C
    )
