"""H- and V-representations and the canonical form of H-polyhedra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .. import rational as rq
from ..rational import Vec
from . import lp

Constraint = tuple[Vec, Fraction]


def _constraint(normal, offset) -> Constraint:
    return rq.vec(normal), rq.to_fraction(offset)


@dataclass(frozen=True)
class HPolyhedron:
    """``{x : <n, x> >= b for each inequality, <e, x> = d for each equality}``."""

    dim: int
    inequalities: tuple[Constraint, ...] = ()
    equalities: tuple[Constraint, ...] = ()

    def __post_init__(self):
        for n, _ in self.inequalities + self.equalities:
            if len(n) != self.dim:
                raise ValueError(f"constraint of length {len(n)} in a {self.dim}-dimensional polyhedron")

    @classmethod
    def from_rows(cls, dim: int, inequalities: Iterable = (), equalities: Iterable = ()) -> "HPolyhedron":
        return cls(
            dim,
            tuple(_constraint(n, b) for n, b in inequalities),
            tuple(_constraint(n, b) for n, b in equalities),
        )

    @classmethod
    def universe(cls, dim: int) -> "HPolyhedron":
        return cls(dim)

    @classmethod
    def empty(cls, dim: int) -> "HPolyhedron":
        return cls(dim, ((rq.zero(dim), Fraction(1)),))

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return HPolyhedron(
            self.dim,
            self.inequalities + other.inequalities,
            self.equalities + other.equalities,
        )

    def add_inequalities(self, rows: Iterable) -> "HPolyhedron":
        return HPolyhedron(self.dim, self.inequalities + tuple(_constraint(n, b) for n, b in rows), self.equalities)

    def add_equalities(self, rows: Iterable) -> "HPolyhedron":
        return HPolyhedron(self.dim, self.inequalities, self.equalities + tuple(_constraint(n, b) for n, b in rows))

    def translate(self, shift: Sequence) -> "HPolyhedron":
        """The polyhedron ``P + shift``."""
        s = rq.vec(shift)
        return HPolyhedron(
            self.dim,
            tuple((n, b + rq.dot(n, s)) for n, b in self.inequalities),
            tuple((n, b + rq.dot(n, s)) for n, b in self.equalities),
        )

    def is_empty(self) -> bool:
        return lp.feasible_point(self.inequalities, self.equalities, self.dim) is None

    @cached_property
    def _float_arrays(self):
        def arr(rows):
            if not rows:
                return np.zeros((0, self.dim)), np.zeros(0)
            return (
                np.array([[float(a) for a in n] for n, _ in rows]),
                np.array([float(b) for _, b in rows]),
            )

        return arr(self.inequalities), arr(self.equalities)


@dataclass(frozen=True)
class VPolyhedron:
    """``Conv(vertices) + Cone(rays)``; an empty vertex list means the empty set."""

    dim: int
    vertices: tuple[Vec, ...] = ()
    rays: tuple[Vec, ...] = ()
    empty: bool = field(default=False)

    @classmethod
    def from_points(cls, dim: int, vertices: Iterable = (), rays: Iterable = ()) -> "VPolyhedron":
        verts = []
        for v in vertices:
            v = rq.vec(v)
            if v not in verts:
                verts.append(v)
        rs = []
        for r in rays:
            r = rq.primitive(rq.vec(r))
            if rq.is_zero(r):
                continue
            if r not in rs:
                rs.append(r)
        return cls(dim, tuple(sorted(verts)), tuple(sorted(rs)), empty=not verts)

    @classmethod
    def cone(cls, rays: Iterable, dim: int) -> "VPolyhedron":
        return cls.from_points(dim, [rq.zero(dim)], rays)


@dataclass(frozen=True)
class Membership:
    inside: bool
    worst_violation: float | Fraction
    active: int


def contains(P: HPolyhedron, x: Sequence, tol: float = 0.0) -> Membership:
    """Membership of ``x`` in ``P``.

    Rational input with ``tol == 0`` is decided exactly.  Otherwise the
    check runs in floating point and reports the largest violation.
    """
    if len(x) != P.dim:
        raise ValueError(f"point of length {len(x)} tested against a {P.dim}-dimensional polyhedron")
    exact = tol == 0 and all(isinstance(v, (int, Fraction)) for v in x)
    if exact:
        xq = rq.vec(x)
        worst = Fraction(0)
        active = 0
        for n, b in P.inequalities:
            s = rq.dot(n, xq) - b
            worst = max(worst, -s)
            active += s == 0
        for n, b in P.equalities:
            s = rq.dot(n, xq) - b
            worst = max(worst, abs(s))
            active += 1
        return Membership(worst == 0, worst, active)
    (A, b), (E, d) = P._float_arrays
    xf = np.asarray([float(v) for v in x])
    worst = 0.0
    active = 0
    if len(b):
        slack = A @ xf - b
        worst = max(worst, float(np.max(-slack)))
        active += int(np.sum(np.abs(slack) <= tol))
    if len(d):
        worst = max(worst, float(np.max(np.abs(E @ xf - d))))
        active += len(d)
    worst = max(worst, 0.0)
    return Membership(worst <= tol, worst, active)


# -- canonical form -------------------------------------------------------------


def _equality_echelon(dim: int, equalities: Sequence[Constraint]):
    """RREF of the equalities with pivots preferring the rightmost columns.

    Returns ``None`` for an inconsistent system.
    """
    if not equalities:
        return []
    aug = [tuple(n) + (b,) for n, b in equalities]
    rows, pivots = rq.rref(aug, pivot_order=range(dim - 1, -1, -1))
    full_rank = rq.rank(aug)
    if full_rank > len(pivots):
        return None
    return [(p, row[:dim], row[dim]) for row, p in zip(rows, pivots)]


def _reduce(normal: Vec, offset: Fraction, echelon) -> Constraint:
    n = list(normal)
    b = offset
    for p, row, rhs in echelon:
        f = n[p]
        if f != 0:
            n = [a - f * r for a, r in zip(n, row)]
            b -= f * rhs
    return tuple(n), b


def canonicalize(P: HPolyhedron) -> HPolyhedron:
    """Irredundant, deterministic H-representation of ``P``.

    Equalities (explicit and implicit) come out in reduced row echelon
    form with pivots on the rightmost possible coordinates.  Inequalities
    are reduced modulo the equalities, scaled to primitive integer normals
    and sorted by ``(normal, offset)``.  Two polyhedra are equal as sets iff
    their canonical forms compare equal.
    """
    dim = P.dim
    equalities = list(P.equalities)
    inequalities = list(P.inequalities)
    while True:
        echelon = _equality_echelon(dim, equalities)
        if echelon is None:
            return HPolyhedron.empty(dim)
        eq_rows = [(row, rhs) for _, row, rhs in echelon]

        best: dict[Vec, Fraction] = {}
        for n, b in inequalities:
            n, b = _reduce(n, b, echelon)
            if rq.is_zero(n):
                if b > 0:
                    return HPolyhedron.empty(dim)
                continue
            s = rq.primitive_scale(n)
            n = tuple(a * s for a in n)
            b = b * s
            if n not in best or b > best[n]:
                best[n] = b
        ineqs = sorted(best.items())
        if not ineqs:
            return HPolyhedron(dim, (), _sorted_equalities(eq_rows))

        # relative-interior test: max s with <n,x> - s >= b, s <= 1
        lifted = [(n + (Fraction(-1),), b) for n, b in ineqs]
        lifted.append((rq.zero(dim) + (Fraction(-1),), Fraction(-1)))
        lifted_eq = [(n + (Fraction(0),), b) for n, b in eq_rows]
        res = lp.maximize(rq.unit(dim + 1, dim), lifted, lifted_eq)
        if res.status != lp.OPTIMAL or res.value < 0:
            return HPolyhedron.empty(dim)
        if res.value == 0:
            implicit = []
            for n, b in ineqs:
                top = lp.maximize(n, ineqs, eq_rows)
                if top.status == lp.OPTIMAL and top.value == b:
                    implicit.append((n, b))
            equalities = eq_rows + implicit
            inequalities = [c for c in ineqs if c not in implicit]
            continue

        kept = list(ineqs)
        for c in ineqs:
            others = [o for o in kept if o != c]
            low = lp.minimize(c[0], others, eq_rows)
            if low.status == lp.OPTIMAL and low.value >= c[1]:
                kept = others
        return HPolyhedron(dim, tuple(kept), _sorted_equalities(eq_rows))


def _sorted_equalities(eq_rows) -> tuple[Constraint, ...]:
    return tuple(sorted((tuple(n), b) for n, b in eq_rows))


def is_canonical(P: HPolyhedron) -> bool:
    return canonicalize(P) == P


def same_set(P: HPolyhedron, Q: HPolyhedron) -> bool:
    return canonicalize(P) == canonicalize(Q)


def subset(P: HPolyhedron, Q: HPolyhedron) -> bool:
    """Exact test of ``P ⊆ Q`` by one LP per constraint of ``Q``."""
    if P.is_empty():
        return True
    for n, b in Q.inequalities:
        low = lp.minimize(n, P.inequalities, P.equalities)
        if low.status != lp.OPTIMAL or low.value < b:
            return False
    for n, b in Q.equalities:
        for sign in (1, -1):
            low = lp.minimize(rq.scale(Fraction(sign), n), P.inequalities, P.equalities)
            if low.status != lp.OPTIMAL or low.value < sign * b:
                return False
    return True
