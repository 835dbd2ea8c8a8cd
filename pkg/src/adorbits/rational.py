"""Exact rational vector helpers shared by the polyhedral code.

Vectors are plain tuples of :class:`fractions.Fraction`.  Nothing in here
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and ``"num/den"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        if any(ch in text for ch in ".eE") and "/" not in text:
            raise ValueError(f"float literal {value!r} refused on the exact path")
        return Fraction(text)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def vec(values: Iterable) -> Vec:
    return tuple(to_fraction(v) for v in values)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return to_fraction(text)


def dot(u: Sequence[Fraction], v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Fraction, u: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in u)


def zero(n: int) -> Vec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(int(k == i)) for k in range(n))


def is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def primitive_scale(u: Sequence[Fraction]) -> Fraction:
    """Positive factor turning ``u`` into a primitive integer vector (1 for zero)."""
    nonzero = [a for a in u if a != 0]
    if not nonzero:
        return Fraction(1)
    den = lcm(*(a.denominator for a in nonzero))
    g = 0
    for a in nonzero:
        g = gcd(g, int(a * den))
    return Fraction(den, g)


def primitive(u: Sequence[Fraction]) -> Vec:
    """Scale ``u`` by a positive rational to a primitive integer vector."""
    s = primitive_scale(u)
    return tuple(a * s for a in u)


def rref(rows: Sequence[Sequence[Fraction]], pivot_order: Sequence[int] | None = None):
    """Reduced row echelon form with a configurable column preference.

    Returns ``(rows, pivots)`` where ``pivots[k]`` is the pivot column of
    ``rows[k]``.  Columns are tried in ``pivot_order`` (default left to
    right); only the first ``len(pivot_order)`` columns may carry pivots.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    order = list(range(ncols)) if pivot_order is None else list(pivot_order)
    pivots: list[int] = []
    r = 0
    for c in order:
        if r == len(mat):
            break
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vec]:
    """Basis of ``{x : rows x = 0}`` as primitive integer vectors."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Vec | None:
    """Unique solution of a square-or-tall consistent system, else ``None``."""
    ncols = len(rows[0])
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    if ncols in pivots or len(pivots) < ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)
