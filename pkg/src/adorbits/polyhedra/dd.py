"""Vertex/ray enumeration and V-to-H conversion by the double description method.

Everything reduces to one routine, :func:`extreme_rays`, which computes the
lineality space and the extreme rays of ``{y : A y >= 0, E y = 0}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .. import rational as rq
from ..rational import Vec
from .hpoly import HPolyhedron, VPolyhedron, _equality_echelon, canonicalize


def _matvec(rows: Sequence[Vec], basis: Sequence[Vec]) -> list[Vec]:
    """Rows expressed in the coordinates of ``basis`` (rows @ basis^T)."""
    return [tuple(rq.dot(r, b) for b in basis) for r in rows]


def extreme_rays(A: Sequence[Sequence], dim: int, E: Sequence[Sequence] = ()):
    """Lineality basis and extreme rays of ``{y : A y >= 0, E y = 0}``.

    Rays of the pointed part live in the orthogonal complement of the
    lineality space; all vectors are primitive integer tuples.
    """
    A = [rq.vec(a) for a in A]
    E = [rq.vec(e) for e in E]
    lineality = rq.nullspace(A + E, dim)
    basis = rq.nullspace(E + lineality, dim)
    k = len(basis)
    if k == 0:
        return lineality, []
    rows = _matvec(A, basis)

    # seed with k independent rows
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if rq.is_zero(r):
            continue
        if rq.rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise AssertionError("cone restricted to the lineality complement is not pointed")
    M = [rows[i] for i in chosen]
    rays: list[Vec] = []
    for j in range(k):
        rhs = [Fraction(int(i == j)) for i in range(k)]
        rays.append(rq.primitive(rq.solve(M, rhs)))
    zeros = [frozenset(chosen[i] for i in range(k) if i != j) for j in range(k)]
    done = set(chosen)

    for idx, a in enumerate(rows):
        if idx in done:
            continue
        vals = [rq.dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        zer = [i for i, s in enumerate(vals) if s == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | {idx} for i in zer]
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if len(common) < k - 2:
                    continue
                if any(o != p and o != n and common <= zeros[o] for o in range(len(rays))):
                    continue
                r = rq.sub(rq.scale(vals[p], rays[n]), rq.scale(vals[n], rays[p]))
                new_rays.append(rq.primitive(r))
                new_zeros.append(common | {idx})
        rays, zeros = new_rays, new_zeros
        done.add(idx)

    lifted = []
    for z in rays:
        y = [Fraction(0)] * dim
        for c, b in zip(z, basis):
            if c:
                y = [yi + c * bi for yi, bi in zip(y, b)]
        y = rq.primitive(y)
        if y not in lifted:
            lifted.append(y)
    return lineality, sorted(lifted)


def _free_coordinates(P: HPolyhedron):
    """Echelon data and free coordinate indices of a canonical polyhedron."""
    echelon = _equality_echelon(P.dim, P.equalities)
    pivots = {p for p, _, _ in echelon}
    free = [c for c in range(P.dim) if c not in pivots]
    return echelon, free


def _lift(z: Sequence[Fraction], free, echelon, dim: int, homogeneous: bool) -> Vec:
    x = [Fraction(0)] * dim
    for c, v in zip(free, z):
        x[c] = v
    for p, row, rhs in echelon:
        x[p] = (Fraction(0) if homogeneous else rhs) - sum(
            (row[c] * x[c] for c in free), Fraction(0)
        )
    return tuple(x)


def vertices_and_rays(P: HPolyhedron) -> VPolyhedron:
    """Extreme points and extreme rays of ``P``.

    A lineality space is reported as pairs of opposite rays and the
    vertices are then taken on its orthogonal complement.
    """
    P = canonicalize(P)
    if P.inequalities and rq.is_zero(P.inequalities[0][0]):
        return VPolyhedron(P.dim, (), (), empty=True)
    echelon, free = _free_coordinates(P)
    k = len(free)
    rows = [tuple(n[c] for c in free) + (-b,) for n, b in P.inequalities]
    rows.append(rq.unit(k + 1, k))
    lineality, rays = extreme_rays(rows, k + 1)
    vertices = []
    directions = []
    for r in rays:
        t = r[k]
        if t > 0:
            vertices.append(_lift([c / t for c in r[:k]], free, echelon, P.dim, False))
        else:
            directions.append(_lift(r[:k], free, echelon, P.dim, True))
    for l in lineality:
        d = _lift(l[:k], free, echelon, P.dim, True)
        directions.append(d)
        directions.append(rq.scale(Fraction(-1), d))
    if not vertices:
        # pure lineality: the origin-shifted representative is any feasible point
        vertices.append(_lift([Fraction(0)] * k, free, echelon, P.dim, False))
    return VPolyhedron.from_points(P.dim, vertices, directions)


def recession_cone(P: HPolyhedron) -> VPolyhedron:
    """``{v : P + v ⊆ P}`` as a cone with apex at the origin."""
    P = canonicalize(P)
    if P.inequalities and rq.is_zero(P.inequalities[0][0]):
        raise ValueError("recession cone of an empty polyhedron")
    lineality, rays = extreme_rays(
        [n for n, _ in P.inequalities], P.dim, [n for n, _ in P.equalities]
    )
    directions = list(rays)
    for l in lineality:
        directions.append(l)
        directions.append(rq.scale(Fraction(-1), l))
    return VPolyhedron.cone(directions, P.dim)


def recession_hrep(P: HPolyhedron) -> HPolyhedron:
    """Recession cone of a nonempty ``P`` in H-form (offsets set to zero)."""
    return canonicalize(
        HPolyhedron(
            P.dim,
            tuple((n, Fraction(0)) for n, _ in P.inequalities),
            tuple((n, Fraction(0)) for n, _ in P.equalities),
        )
    )


def from_vrep(V: VPolyhedron) -> HPolyhedron:
    """H-representation of ``Conv(vertices) + Cone(rays)``.

    Valid inequalities ``<n, x> >= b`` form a cone in ``(n, b)``; its
    extreme rays are the facets and its lineality space the affine hull.
    """
    d = V.dim
    if not V.vertices:
        return HPolyhedron.empty(d)
    rows = [tuple(v) + (Fraction(-1),) for v in V.vertices]
    rows += [tuple(r) + (Fraction(0),) for r in V.rays]
    lineality, rays = extreme_rays(rows, d + 1)
    equalities = [(l[:d], l[d]) for l in lineality if not rq.is_zero(l[:d])]
    inequalities = [(r[:d], r[d]) for r in rays if not rq.is_zero(r[:d])]
    return canonicalize(HPolyhedron.from_rows(d, inequalities, equalities))
