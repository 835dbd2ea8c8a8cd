from fractions import Fraction

import numpy as np
import pytest

from adorbits.oracle import (
    ConditioningError,
    NonRealSpectrum,
    PseudoHermitianMatrix,
    diagonal_projections,
    membership_violations,
    realize_orbit_point,
    sample_group_element,
    sample_spectra,
    signature_matrix,
    spectrum_of_sum,
    verify_containment,
)
from adorbits.orbitsum import orbit_image, sum_spectra
from adorbits.polyhedra import HPolyhedron
from adorbits.rootsys import Spectrum, SpectrumError, parse_algebra

from conftest import random_pair


def tightened(P: HPolyhedron, normal, new_offset) -> HPolyhedron:
    rows = [(n, new_offset if n == normal else b) for n, b in P.inequalities]
    return HPolyhedron(P.dim, tuple(rows), P.equalities)


def test_group_elements_are_pseudo_unitary():
    J = signature_matrix(2, 1)
    for seed in range(5):
        g = sample_group_element(2, 1, seed, scale=1.0)
        assert np.allclose(g.conj().T @ J @ g, J, atol=1e-10)
        assert abs(np.linalg.det(g) - 1) < 1e-10


def test_group_element_arguments():
    with pytest.raises(ValueError):
        sample_group_element(0, 2, 1)
    with pytest.raises(ValueError):
        sample_group_element(1, 1, 1, scale=-1)


def test_orbit_point_has_the_right_spectrum():
    form = parse_algebra("su(2,1)")
    x = Spectrum.of((4, 1, -5))
    A = realize_orbit_point(form, x, sample_group_element(2, 1, 3))
    assert A.residual() <= 1e-10 * max(1, np.abs(A.entries).max())
    ev = np.sort(np.linalg.eigvals(A.entries).real)[::-1]
    assert np.allclose(ev, [4, 1, -5], atol=1e-8)


def test_orbit_point_rejects_bad_input():
    form = parse_algebra("su(2,1)")
    with pytest.raises(SpectrumError):
        realize_orbit_point(form, Spectrum.of((1, 4, -5)), np.eye(3))
    with pytest.raises(ConditioningError):
        realize_orbit_point(form, Spectrum.of((4, 1, -5)), np.diag([1.0, 1.0, 2.0]) + 0.5 * np.eye(3)[::-1])


def test_pseudo_hermitian_closure():
    form = parse_algebra("su(2,1)")
    A = realize_orbit_point(form, Spectrum.of((4, 1, -5)), sample_group_element(2, 1, 1))
    B = realize_orbit_point(form, Spectrum.of((2, 1, -3)), sample_group_element(2, 1, 2))
    S = A + B
    assert S.residual() <= A.residual() + B.residual() + 1e-12
    ev = spectrum_of_sum(A, B)
    assert ev[1] > ev[2]
    with pytest.raises(ValueError):
        A + PseudoHermitianMatrix(np.eye(3), (1, 2))


def test_non_real_spectrum_detected():
    # a J-self-adjoint matrix with complex eigenvalues
    M = np.array([[0.0, 1.0], [-1.0, 0.0]])
    A = PseudoHermitianMatrix(M, (1, 1))
    assert A.residual() < 1e-12
    with pytest.raises(NonRealSpectrum):
        spectrum_of_sum(A, PseudoHermitianMatrix(np.zeros((2, 2)), (1, 1)))


def test_su21_containment(su21_case):
    rep = verify_containment(su21_case, 10_000, seed=7, tol=1e-6)
    assert rep.all_inside
    assert rep.worst_violation <= 1e-8
    assert rep.gap_min > 0
    assert rep.imag_residual_max < 1e-6
    assert rep.conditioning_failures == 0
    assert np.isfinite([rep.worst_violation, rep.gap_min, rep.imag_residual_max]).all()


def test_identity_sampling(su21_case):
    pts = sample_spectra(su21_case, 20, seed=0, scales=(0.0,))
    assert np.allclose(pts, [[6, 2, -8]] * 20)
    rep = verify_containment(su21_case, 20, seed=0, scales=(0.0,))
    assert rep.all_inside


def test_negative_control(su21_case):
    P = tightened(su21_case.s_ab, (1, 0, 0), Fraction(11, 2))
    rep = verify_containment(su21_case, 2000, seed=7, polyhedron=P)
    assert rep.inside < rep.total
    assert rep.worst_violation > 1e-3


def test_determinism_and_chunking(su22_case):
    a = verify_containment(su22_case, 600, seed=11, chunk=600)
    b = verify_containment(su22_case, 600, seed=11, chunk=97)
    assert a == b
    assert np.array_equal(sample_spectra(su22_case, 50, 3), sample_spectra(su22_case, 50, 3, chunk=7))


def test_sampling_requires_exact_su_pq(su21_case):
    with pytest.raises(ValueError):
        verify_containment(su21_case, 0, seed=1)
    form = parse_algebra("sp(2,R)")
    approx = sum_spectra(form, Spectrum.of((3, 1)), Spectrum.of((2, 1)), samples=200)
    with pytest.raises(ValueError):
        verify_containment(approx, 10, seed=1)


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (2, 2)])
def test_random_pairs_contained(p, q):
    form = parse_algebra(f"su({p},{q})")
    a, b = random_pair(p, q, 100 + p + q)
    rep = verify_containment(sum_spectra(form, a, b), 2000, seed=5)
    assert rep.all_inside and rep.gap_min > 0


def test_diagonal_projections_in_orbit_image():
    form = parse_algebra("su(2,1)")
    x = Spectrum.of((4, 1, -5))
    d = diagonal_projections(form, x, 500, seed=2)
    assert membership_violations(orbit_image(form, x), d).max() <= 1e-6


def test_report_serializes(su21_case):
    d = verify_containment(su21_case, 10, seed=1).to_dict()
    assert d["total"] == 10 and d["scales"] == [0.25, 0.5, 1.0]
