"""Possible spectra of ``A + B`` for admissible orbits: ``(Π + Cone(Δ⁺_nc)) ∩ t*₊``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import rational as rq
from .horn import CompactPolytope, compact_polytope
from .polyhedra import (
    HPolyhedron,
    VPolyhedron,
    canonicalize,
    cone_hrep,
    from_vrep,
    minkowski_sum_with_cone,
    recession_hrep,
    vertices_and_rays,
)
from .polyhedra import lp
from .polyhedra.dd import recession_cone
from .polyhedra.lattice import lattice_points
from .rootsys import (
    RealFormData,
    Spectrum,
    chamber_sort,
    depth_functional,
    in_chamber,
    noncompact_cone,
    validate,
    weyl_group_action,
    weyl_orbit,
)


@dataclass(frozen=True)
class OrbitSumResult:
    form: RealFormData
    lambda_a: Spectrum
    lambda_b: Spectrum
    pi: CompactPolytope
    s_ab: HPolyhedron
    vertices: VPolyhedron
    weyl_sum_points: tuple[Spectrum, ...]

    @property
    def exact(self) -> bool:
        return self.pi.exact


def weyl_sums(form: RealFormData, a: Spectrum, b: Spectrum) -> tuple[Spectrum, ...]:
    """Distinct chamber-sorted ``w1.a + w2.b`` over pairs of compact Weyl elements."""
    images = weyl_group_action(form, [a.coords, b.coords])
    points = {chamber_sort(form, rq.add(wa, wb)) for wa, _ in images for _, wb in images}
    return tuple(Spectrum(p) for p in sorted(points, reverse=True))


def sum_spectra(form: RealFormData, a: Spectrum, b: Spectrum, samples: int = 20000, seed: int = 0) -> OrbitSumResult:
    """Assemble the polyhedral set of spectra of ``A + B``.

    Inputs must be admissible and chamber-ordered; a :class:`SpectrumError`
    names the first violated condition otherwise.  ``samples``/``seed`` only
    matter for forms without an exact compact polytope.
    """
    validate(form, a)
    validate(form, b)
    pi = compact_polytope(form, a, b, samples=samples, seed=seed)
    moved = minkowski_sum_with_cone(pi.hrep, noncompact_cone(form))
    s_ab = canonicalize(moved.intersect(form.chamber_polyhedron()))
    return OrbitSumResult(
        form=form,
        lambda_a=a,
        lambda_b=b,
        pi=pi,
        s_ab=s_ab,
        vertices=vertices_and_rays(s_ab),
        weyl_sum_points=weyl_sums(form, a, b),
    )


def orbit_image(form: RealFormData, x: Spectrum) -> HPolyhedron:
    """Torus moment image ``Conv(W_k.x) + Cone(Δ⁺_nc)`` of a single orbit (no chamber cut)."""
    # admissibility is Weyl-invariant, so any orbit representative may be passed
    validate(form, Spectrum(chamber_sort(form, x.coords)))
    orbit = [s.coords for s in weyl_orbit(form, x)]
    return from_vrep(VPolyhedron.from_points(form.ambient_dim, orbit, form.noncompact_roots))


# -- checks --------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexEntry:
    vertex: tuple[Fraction, ...]
    open_chamber: bool
    weyl_sum: bool


@dataclass(frozen=True)
class VertexCriterionReport:
    passed: bool
    entries: tuple[VertexEntry, ...]
    weyl_sums: tuple[tuple[Fraction, ...], ...]


def check_vertex_criterion(result: OrbitSumResult) -> VertexCriterionReport:
    """Every vertex of ``s_ab`` in the open chamber must be a chamber-sorted Weyl sum."""
    sums = {s.coords for s in result.weyl_sum_points}
    entries = []
    for v in result.vertices.vertices:
        open_ = in_chamber(result.form, Spectrum(v), strict=True)
        entries.append(VertexEntry(v, open_, v in sums))
    passed = result.exact and all(e.weyl_sum for e in entries if e.open_chamber)
    return VertexCriterionReport(passed, tuple(entries), tuple(sorted(sums, reverse=True)))


@dataclass(frozen=True)
class RecessionReport:
    passed: bool
    observed: HPolyhedron
    expected: HPolyhedron
    observed_rays: tuple[tuple[Fraction, ...], ...]
    expected_rays: tuple[tuple[Fraction, ...], ...]


def expected_recession(form: RealFormData) -> HPolyhedron:
    """``Cone(Δ⁺_nc) ∩ rec(t*₊)`` in canonical H-form."""
    return canonicalize(cone_hrep(noncompact_cone(form)).intersect(form.chamber_polyhedron()))


def check_recession_law(result: OrbitSumResult) -> RecessionReport:
    observed = recession_hrep(result.s_ab)
    expected = expected_recession(result.form)
    obs_rays = recession_cone(observed).rays
    exp_rays = recession_cone(expected).rays
    passed = result.exact and observed == expected and obs_rays == exp_rays
    return RecessionReport(passed, observed, expected, obs_rays, exp_rays)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Minimum of each minimal-cone pairing over ``s_ab``."""

    passed: bool
    margins: tuple[Fraction, ...] = field(default=())


def check_admissibility(result: OrbitSumResult) -> AdmissibilityReport:
    """Every point of the closed set pairs nonnegatively with the minimal cone.

    With strictly admissible inputs the minima are in fact positive, so
    interior points are strictly admissible as well.
    """
    margins = []
    for g in result.form.cmin_generators:
        low = lp.minimize(rq.vec(g), result.s_ab.inequalities, result.s_ab.equalities)
        margins.append(low.value if low.status == lp.OPTIMAL else None)
    passed = all(m is not None and m >= 0 for m in margins)
    return AdmissibilityReport(passed, tuple(margins))


def lattice_points_of(result: OrbitSumResult, bound, functional: Sequence | None = None) -> list[tuple[int, ...]]:
    """Integer points of ``s_ab`` truncated by ``functional <= bound``.

    The default functional measures depth into the non-compact cone.
    """
    f = depth_functional(result.form) if functional is None else rq.vec(functional)
    return lattice_points(result.s_ab, f, bound)


def reduced_coordinates(form: RealFormData, point: Sequence) -> tuple:
    """Drop the coordinate fixed by the trace (the last one) for su(p,q)."""
    return tuple(point[:-1]) if form.trace_functionals else tuple(point)
