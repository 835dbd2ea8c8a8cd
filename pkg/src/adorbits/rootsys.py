"""Root data of quasi-Hermitian real forms given by painted Dynkin diagrams.

Everything is written in the standard ambient coordinates ``e_1..e_N`` of
the classical root systems (``N = rank + 1`` for series A).  For
``su(p,q)`` a point of ``t*`` is ``(λ_1..λ_p, μ_1..μ_q)`` with zero trace.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import rational as rq
from .polyhedra import HPolyhedron, VPolyhedron
from .rational import Vec


class NotQuasiHermitian(ValueError):
    """The painting does not define a quasi-Hermitian real form."""


class SpectrumError(ValueError):
    """A spectrum fails a trace, chamber or admissibility condition."""


@dataclass(frozen=True)
class VoganDiagram:
    series: str
    rank: int
    painted: int | None = None

    def __post_init__(self):
        if self.series not in "ABCD" or len(self.series) != 1:
            raise ValueError(f"unsupported Dynkin series {self.series!r}")
        min_rank = {"A": 1, "B": 2, "C": 2, "D": 3}[self.series]
        if self.rank < min_rank:
            raise ValueError(f"{self.series}{self.rank} needs rank >= {min_rank}")
        if self.painted is not None and not 1 <= self.painted <= self.rank:
            raise ValueError(f"painted node {self.painted} out of range 1..{self.rank}")
        if self.painted is not None:
            worst = max(c[self.painted - 1] for c in _simple_coefficients(self.series, self.rank))
            if worst > 1:
                raise NotQuasiHermitian(
                    f"{self.series}{self.rank} painted at node {self.painted}: "
                    f"some positive root has painted coefficient {worst}"
                )


@dataclass(frozen=True)
class CompactFactor:
    """One factor of the maximal compact subgroup as seen on torus coordinates.

    ``kind`` is ``"u"`` (unitary block acting on ``signs[i] * x[coords[i]]``),
    ``"so"`` (orthogonal group of the given matrix size) or ``"center"``.
    """

    kind: str
    coords: tuple[int, ...]
    signs: tuple[int, ...] = ()
    size: int = 0


@dataclass(frozen=True)
class RealFormData:
    diagram: VoganDiagram
    name: str
    ambient_dim: int
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    coefficients: tuple[tuple[int, ...], ...]
    compact_positive: tuple[int, ...]
    noncompact_positive: tuple[int, ...]
    cmin_generators: tuple[tuple[int, ...], ...]
    chamber: tuple[tuple[int, ...], ...]
    trace_functionals: tuple[tuple[int, ...], ...]
    block_sizes: tuple[int, int] | None
    compact_factors: tuple[CompactFactor, ...]

    @property
    def noncompact_roots(self) -> list[tuple[int, ...]]:
        return [self.positive_roots[i] for i in self.noncompact_positive]

    @property
    def compact_roots(self) -> list[tuple[int, ...]]:
        return [self.positive_roots[i] for i in self.compact_positive]

    def labels(self) -> list[str]:
        if self.block_sizes:
            p, q = self.block_sizes
            return [f"λ{_sub(i + 1)}" for i in range(p)] + [f"μ{_sub(j + 1)}" for j in range(q)]
        return [f"x{_sub(i + 1)}" for i in range(self.ambient_dim)]

    def trace_space(self) -> HPolyhedron:
        return HPolyhedron.from_rows(self.ambient_dim, (), [(t, 0) for t in self.trace_functionals])

    def chamber_polyhedron(self) -> HPolyhedron:
        """Closed compact Weyl chamber ``t*₊`` intersected with the trace space."""
        return HPolyhedron.from_rows(
            self.ambient_dim,
            [(c, 0) for c in self.chamber],
            [(t, 0) for t in self.trace_functionals],
        )

    def center_direction(self) -> Vec | None:
        """Direction fixed by the compact Weyl group; ``None`` unless su(p,q)."""
        if not self.block_sizes:
            return None
        p, q = self.block_sizes
        return rq.vec([q] * p + [-p] * q)


@dataclass(frozen=True)
class Spectrum:
    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable) -> "Spectrum":
        return cls(rq.vec(values))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)


def _sub(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))


def _e(n: int, *terms: tuple[int, int]) -> tuple[int, ...]:
    v = [0] * n
    for i, c in terms:
        v[i] += c
    return tuple(v)


def _roots(series: str, rank: int):
    """Ambient dimension, simple roots and positive roots."""
    if series == "A":
        n = rank + 1
        simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(rank)]
        pos = [_e(n, (i, 1), (j, -1)) for i in range(n) for j in range(i + 1, n)]
        return n, simple, pos
    n = rank
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_e(n, (i, 1), (j, -1)))
            pos.append(_e(n, (i, 1), (j, 1)))
    if series == "B":
        simple.append(_e(n, (n - 1, 1)))
        pos += [_e(n, (i, 1)) for i in range(n)]
    elif series == "C":
        simple.append(_e(n, (n - 1, 2)))
        pos += [_e(n, (i, 2)) for i in range(n)]
    else:
        simple.append(_e(n, (n - 2, 1), (n - 1, 1)))
    return n, simple, sorted(pos, reverse=True)


def _simple_coefficients(series: str, rank: int) -> list[tuple[int, ...]]:
    n, simple, pos = _roots(series, rank)
    cols = list(zip(*simple))  # n x rank matrix with simple roots as columns
    out = []
    for root in pos:
        sol = rq.solve([rq.vec(r) for r in cols], rq.vec(root))
        if sol is None or any(c.denominator != 1 or c < 0 for c in sol):
            raise AssertionError(f"root {root} is not a nonnegative integer combination")
        out.append(tuple(int(c) for c in sol))
    return out


def _compact_factors(d: VoganDiagram, n: int) -> tuple[CompactFactor, ...]:
    s, r, p = d.series, d.rank, d.painted
    if s == "A":
        if p is None:
            return (CompactFactor("u", tuple(range(n)), (1,) * n),)
        return (
            CompactFactor("u", tuple(range(p)), (1,) * p),
            CompactFactor("u", tuple(range(p, n)), (1,) * (n - p)),
        )
    if p is None:
        return ()
    if p == 1 and s in "BD":
        size = 2 * (r - 1) + (1 if s == "B" else 0)
        return (CompactFactor("center", (0,)), CompactFactor("so", tuple(range(1, r)), size=size))
    signs = [1] * r
    if s == "D" and p == r - 1:
        signs[-1] = -1
    return (CompactFactor("u", tuple(range(r)), tuple(signs)),)


def _algebra_name(d: VoganDiagram) -> str:
    s, r, p = d.series, d.rank, d.painted
    if s == "A":
        return f"su({r + 1})" if p is None else f"su({p},{r + 1 - p})"
    if p is None:
        return {"B": f"so({2 * r + 1})", "C": f"sp({r})", "D": f"so({2 * r})"}[s]
    if s == "B":
        return f"so(2,{2 * r - 1})"
    if s == "C":
        return f"sp({r},R)"
    return f"so(2,{2 * r - 2})" if p == 1 else f"so*({2 * r})"


def build_real_form(diagram: VoganDiagram) -> RealFormData:
    """Populate the compact/non-compact split, cones and chamber of a painting."""
    n, simple, pos = _roots(diagram.series, diagram.rank)
    coeffs = _simple_coefficients(diagram.series, diagram.rank)
    p = diagram.painted
    if p is None:
        noncompact = ()
    else:
        noncompact = tuple(i for i, c in enumerate(coeffs) if c[p - 1] == 1)
    compact = tuple(i for i in range(len(pos)) if i not in noncompact)
    # coroot directions are positive multiples of the roots themselves
    cmin = tuple(tuple(int(a) for a in rq.primitive(rq.vec(pos[i]))) for i in noncompact)
    chamber = tuple(simple[i] for i in range(diagram.rank) if i + 1 != p)
    trace = ((1,) * n,) if diagram.series == "A" else ()
    blocks = (p, n - p) if diagram.series == "A" and p is not None else None
    return RealFormData(
        diagram=diagram,
        name=_algebra_name(diagram),
        ambient_dim=n,
        simple_roots=tuple(simple),
        positive_roots=tuple(pos),
        coefficients=tuple(coeffs),
        compact_positive=compact,
        noncompact_positive=noncompact,
        cmin_generators=cmin,
        chamber=chamber,
        trace_functionals=trace,
        block_sizes=blocks,
        compact_factors=_compact_factors(diagram, n),
    )


_DESIGNATORS = [
    (re.compile(r"su\((\d+),(\d+)\)$"), lambda a, b: VoganDiagram("A", a + b - 1, a)),
    (re.compile(r"sp\((\d+),R\)$"), lambda r: VoganDiagram("C", r, r)),
    (re.compile(r"so\*\((\d+)\)$"), lambda m: VoganDiagram("D", m // 2, m // 2)),
    (re.compile(r"so\(2,(\d+)\)$"), lambda m: VoganDiagram("B" if m % 2 else "D", (m + 2) // 2, 1)),
]


def parse_algebra(text: str) -> RealFormData:
    """Real form from a designator such as ``"su(2,1)"`` or ``"sp(3,R)"``."""
    compact = text.replace(" ", "")
    for pattern, make in _DESIGNATORS:
        m = pattern.match(compact)
        if m:
            args = [int(g) for g in m.groups()]
            if compact.startswith("su(") and min(args) < 1:
                break
            if compact.startswith("so*(") and args[0] % 2:
                break
            return build_real_form(make(*args))
    raise ValueError(f"unrecognized algebra designator {text!r}")


# -- predicates on spectra --------------------------------------------------------


def _check_dim(form: RealFormData, x: Sequence) -> None:
    if len(x) != form.ambient_dim:
        raise ValueError(f"spectrum of length {len(x)} for {form.name} (needs {form.ambient_dim})")


def trace_violation(form: RealFormData, x: Spectrum) -> str | None:
    _check_dim(form, x)
    for t in form.trace_functionals:
        s = rq.dot(rq.vec(t), x.coords)
        if s != 0:
            return f"trace violation: coordinate sum is {s}, expected 0"
    return None


def chamber_violation(form: RealFormData, x: Spectrum) -> str | None:
    """Message naming the first violated chamber inequality, or ``None``."""
    _check_dim(form, x)
    labels = form.labels()
    for c in form.chamber:
        if rq.dot(rq.vec(c), x.coords) < 0:
            plus = [labels[i] for i, a in enumerate(c) if a > 0]
            minus = [labels[i] for i, a in enumerate(c) if a < 0]
            if len(plus) == 1 and len(minus) == 1:
                return f"chamber violation: {plus[0]} < {minus[0]}"
            return f"chamber violation: pairing with {c} is negative"
    return None


def admissibility_violation(form: RealFormData, x: Spectrum) -> str | None:
    _check_dim(form, x)
    labels = form.labels()
    for g in form.cmin_generators:
        if rq.dot(rq.vec(g), x.coords) <= 0:
            plus = [labels[i] for i, a in enumerate(g) if a > 0]
            minus = [labels[i] for i, a in enumerate(g) if a < 0]
            if len(plus) == 1 and len(minus) == 1:
                return f"admissibility violation: {plus[0]} ≤ {minus[0]}"
            return f"admissibility violation: pairing with {g} is not positive"
    return None


def is_admissible(form: RealFormData, x: Spectrum) -> bool:
    """Strict positivity against every generator of the minimal cone."""
    return admissibility_violation(form, x) is None


def in_chamber(form: RealFormData, x: Spectrum, strict: bool = False) -> bool:
    _check_dim(form, x)
    vals = [rq.dot(rq.vec(c), x.coords) for c in form.chamber]
    return all(v > 0 for v in vals) if strict else all(v >= 0 for v in vals)


def validate(form: RealFormData, x: Spectrum, admissible: bool = True) -> None:
    """Raise :class:`SpectrumError` naming the first violated condition."""
    for check in (trace_violation, chamber_violation) + ((admissibility_violation,) if admissible else ()):
        msg = check(form, x)
        if msg:
            raise SpectrumError(msg)


# -- compact Weyl group -----------------------------------------------------------


def reflect(x: Sequence[Fraction], root: Sequence[int]) -> Vec:
    r = rq.vec(root)
    c = 2 * rq.dot(r, x) / rq.dot(r, r)
    return tuple(a - c * b for a, b in zip(x, r))


def weyl_orbit(form: RealFormData, x: Spectrum) -> set[Spectrum]:
    """Orbit of ``x`` under the compact Weyl group (reflections in compact roots)."""
    _check_dim(form, x)
    start = tuple(x.coords)
    seen = {start}
    queue = deque([start])
    while queue:
        y = queue.popleft()
        for c in form.chamber:
            z = reflect(y, c)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return {Spectrum(y) for y in seen}


def weyl_group_action(form: RealFormData, vectors: Sequence[Sequence]) -> list[list[Vec]]:
    """Images of ``vectors`` under each element of the compact Weyl group.

    Elements are identified by their action on a regular chamber point.
    """
    n = form.ambient_dim
    regular = rq.vec(range(n, 0, -1))
    vs = [rq.vec(v) for v in vectors]
    seen = {regular: vs}
    queue = deque([regular])
    while queue:
        y = queue.popleft()
        for c in form.chamber:
            z = reflect(y, c)
            if z not in seen:
                seen[z] = [reflect(v, c) for v in seen[y]]
                queue.append(z)
    return list(seen.values())


def chamber_sort(form: RealFormData, x: Sequence) -> Vec:
    """The unique chamber point in the compact Weyl orbit of ``x``."""
    y = rq.vec(x)
    while True:
        for c in form.chamber:
            if rq.dot(rq.vec(c), y) < 0:
                y = reflect(y, c)
                break
        else:
            return y


def noncompact_cone(form: RealFormData) -> VPolyhedron:
    """``Cone(Δ⁺_nc)`` with apex at the origin."""
    return VPolyhedron.cone(form.noncompact_roots, form.ambient_dim)


def depth_functional(form: RealFormData) -> Vec:
    """Sum of the pairings with the non-compact positive roots."""
    total = [Fraction(0)] * form.ambient_dim
    for r in form.noncompact_roots:
        total = [a + b for a, b in zip(total, r)]
    return tuple(total)
