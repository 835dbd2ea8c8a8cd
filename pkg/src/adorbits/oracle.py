"""Monte Carlo check of the exact polyhedron with pseudo-Hermitian matrices.

For ``su(p,q)`` the dual of the Lie algebra is the space of matrices with
``A J = J A*`` where ``J = diag(1_p, -1_q)``.  Orbit points are
``g diag(x) g^{-1}`` for ``g = exp(X)``, ``X`` in ``su(p,q)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .orbitsum import OrbitSumResult
from .polyhedra import HPolyhedron
from .rootsys import RealFormData, Spectrum, validate

STRUCTURE_TOL = 1e-8
IMAG_TOL = 1e-6
DEFAULT_SCALES = (0.25, 0.5, 1.0)


class ConditioningError(RuntimeError):
    def __init__(self, residual: float, seed: int | None = None):
        self.residual = residual
        self.seed = seed
        where = "" if seed is None else f" (seed {seed})"
        super().__init__(f"pseudo-Hermitian residual {residual:.3e} above tolerance{where}")


class NonRealSpectrum(ArithmeticError):
    pass


@dataclass(frozen=True)
class PseudoHermitianMatrix:
    entries: np.ndarray
    signature: tuple[int, int]

    @property
    def J(self) -> np.ndarray:
        return signature_matrix(*self.signature)

    def residual(self) -> float:
        """``max |A J - J A*|``."""
        A, J = self.entries, self.J
        return float(np.max(np.abs(A @ J - J @ A.conj().T)))

    def __add__(self, other: "PseudoHermitianMatrix") -> "PseudoHermitianMatrix":
        if other.signature != self.signature:
            raise ValueError(f"signatures differ: {self.signature} vs {other.signature}")
        return PseudoHermitianMatrix(self.entries + other.entries, self.signature)


@dataclass(frozen=True)
class SampleReport:
    total: int
    inside: int
    worst_violation: float
    worst_sample_seed: int
    imag_residual_max: float
    gap_min: float
    structure_residual_max: float
    conditioning_failures: int
    seed: int
    tol: float
    scales: tuple[float, ...]

    @property
    def all_inside(self) -> bool:
        return self.inside == self.total

    def to_dict(self) -> dict:
        d = asdict(self)
        d["scales"] = list(self.scales)
        return d


def signature_matrix(p: int, q: int) -> np.ndarray:
    return np.diag([1.0] * p + [-1.0] * q)


def _project(G: np.ndarray, p: int) -> np.ndarray:
    """Map a batch of complex matrices onto su(p,q): ``X J + J X* = 0``, trace 0."""
    n = G.shape[-1]
    X = np.empty_like(G)
    skew = (G - np.conj(np.swapaxes(G, -1, -2))) / 2
    X[:, :p, :p] = skew[:, :p, :p]
    X[:, p:, p:] = skew[:, p:, p:]
    X[:, :p, p:] = G[:, :p, p:]
    X[:, p:, :p] = np.conj(np.swapaxes(G[:, :p, p:], -1, -2))
    tr = np.trace(X, axis1=-2, axis2=-1) / n
    X -= tr[:, None, None] * np.eye(n)
    return X


def _gaussian(n: int, rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))


def _algebra_elements(p: int, q: int, rng: np.random.Generator, scale: float, count: int) -> np.ndarray:
    """``count`` Gaussian elements of su(p,q), scaled."""
    return scale * _project(_gaussian(p + q, rng, count), p)


def sample_group_element(p: int, q: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Pseudo-unitary ``exp(X)`` for a random ``X`` in su(p,q); deterministic per seed."""
    if p < 1 or q < 1:
        raise ValueError(f"need p, q >= 1, got ({p}, {q})")
    if scale < 0:
        raise ValueError(f"scale must be nonnegative, got {scale}")
    X = _algebra_elements(p, q, np.random.default_rng(seed), scale, 1)[0]
    return scipy.linalg.expm(X)


def _orbit_points(x: np.ndarray, g: np.ndarray, J: np.ndarray) -> np.ndarray:
    # g^{-1} = J g* J for pseudo-unitary g
    ginv = J @ np.conj(np.swapaxes(g, -1, -2)) @ J
    return (g * x[None, :]) @ ginv if g.ndim == 3 else (g * x) @ ginv


def realize_orbit_point(form: RealFormData, x: Spectrum, g: np.ndarray) -> PseudoHermitianMatrix:
    """``g diag(x) g^{-1}``; raises :class:`ConditioningError` on a bad residual.

    The inverse is taken as ``J g* J``, so ``g`` itself is checked for
    ``g* J g = J`` first; otherwise the result would be pseudo-Hermitian
    but with the wrong spectrum.
    """
    validate(form, x)
    p, q = form.block_sizes
    J = signature_matrix(p, q)
    drift = float(np.max(np.abs(np.conj(g).T @ J @ g - J)))
    if drift > STRUCTURE_TOL * max(1.0, float(np.max(np.abs(g))) ** 2):
        raise ConditioningError(drift)
    xf = np.array([float(v) for v in x.coords])
    A = PseudoHermitianMatrix(_orbit_points(xf, g, J), (p, q))
    res = A.residual()
    if res > STRUCTURE_TOL * max(1.0, float(np.max(np.abs(A.entries)))):
        raise ConditioningError(res)
    return A


def _real_spectra(M: np.ndarray):
    """Descending real parts and relative imaginary residuals of a batch of matrices."""
    w = np.linalg.eigvals(M)
    radius = np.maximum(np.max(np.abs(w), axis=-1), 1.0)
    imag = np.max(np.abs(w.imag), axis=-1) / radius
    return -np.sort(-w.real, axis=-1), imag


def spectrum_of_sum(A: PseudoHermitianMatrix, B: PseudoHermitianMatrix) -> np.ndarray:
    """Eigenvalues of ``A + B``, descending (first ``p`` form the λ block)."""
    S = A + B
    values, imag = _real_spectra(S.entries[None])
    if imag[0] > IMAG_TOL:
        raise NonRealSpectrum(f"relative imaginary part {imag[0]:.3e} in the spectrum of A+B")
    return values[0]


def _sample_seeds(seed: int, index: int) -> tuple[int, int]:
    state = np.random.SeedSequence([seed, index]).generate_state(2)
    return int(state[0]), int(state[1])


def _sample_batches(result: OrbitSumResult, samples: int, seed: int, scales: Sequence[float], chunk: int):
    """Yield ``(spectra, imag, structure_residual, seeds)`` for consecutive sample batches.

    Sample ``i`` uses sub-seeds derived from ``(seed, i)`` and the scale
    ``scales[i % len(scales)]``; batching does not change any value.
    """
    p, q = result.form.block_sizes
    n = p + q
    J = signature_matrix(p, q)
    a = np.array([float(v) for v in result.lambda_a.coords])
    b = np.array([float(v) for v in result.lambda_b.coords])
    for start in range(0, samples, chunk):
        idx = range(start, min(samples, start + chunk))
        Gg = np.empty((len(idx), n, n), dtype=complex)
        Gh = np.empty_like(Gg)
        seeds = []
        for k, i in enumerate(idx):
            sg, sh = _sample_seeds(seed, i)
            Gg[k] = _gaussian(n, np.random.default_rng(sg), 1)[0]
            Gh[k] = _gaussian(n, np.random.default_rng(sh), 1)[0]
            seeds.append(sg)
        s = np.array([scales[i % len(scales)] for i in idx], dtype=float)[:, None, None]
        Xg = s * _project(Gg, p)
        Xh = s * _project(Gh, p)
        S = _orbit_points(a, scipy.linalg.expm(Xg), J) + _orbit_points(b, scipy.linalg.expm(Xh), J)
        Sh = np.conj(np.swapaxes(S, -1, -2))
        norm = np.maximum(np.max(np.abs(S), axis=(-2, -1)), 1.0)
        resid = np.max(np.abs(S @ J - J @ Sh), axis=(-2, -1)) / norm
        values, imag = _real_spectra(S)
        yield values, imag, resid, seeds


def _check_sampling(result: OrbitSumResult, samples: int) -> None:
    if not result.exact:
        raise ValueError("containment checks need an exact polyhedron")
    if result.form.block_sizes is None:
        raise ValueError(f"matrix sampling is only wired for su(p,q), not {result.form.name}")
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")


def sample_spectra(
    result: OrbitSumResult, samples: int, seed: int, scales: Sequence[float] = DEFAULT_SCALES, chunk: int = 2000
) -> np.ndarray:
    """Descending spectra of sampled ``A + B`` (rows), same sampling as :func:`verify_containment`."""
    _check_sampling(result, samples)
    return np.vstack([v for v, _, _, _ in _sample_batches(result, samples, seed, scales, chunk)])


def verify_containment(
    result: OrbitSumResult,
    samples: int,
    seed: int,
    tol: float = 1e-6,
    scales: Sequence[float] = DEFAULT_SCALES,
    polyhedron: HPolyhedron | None = None,
    chunk: int = 2000,
) -> SampleReport:
    """Sample ``A + B`` over random pairs ``(g, h)`` and test membership.

    ``polyhedron`` overrides ``result.s_ab`` (negative controls,
    hand-edited files).  A sample whose spectrum is not real within
    tolerance is outside and counted as a conditioning failure; it does
    not enter ``worst_violation``, which stays finite.
    """
    _check_sampling(result, samples)
    P = result.s_ab if polyhedron is None else polyhedron
    if P.dim != result.form.ambient_dim:
        raise ValueError(f"polyhedron dimension {P.dim} does not match {result.form.name}")
    p = result.form.block_sizes[0]
    (Aq, bq), (Eq, dq) = P._float_arrays

    inside = 0
    worst = 0.0
    worst_seed = -1
    imag_max = 0.0
    gap_min = np.inf
    struct_max = 0.0
    failures = 0
    for values, imag, resid, seeds in _sample_batches(result, samples, seed, scales, chunk):
        failures += int(np.sum(resid > STRUCTURE_TOL))
        struct_max = max(struct_max, float(np.max(resid)))
        imag_max = max(imag_max, float(np.max(imag)))
        gap_min = min(gap_min, float(np.min(values[:, p - 1] - values[:, p])))
        viol = np.zeros(len(values))
        if len(bq):
            viol = np.maximum(viol, np.max(bq[None, :] - values @ Aq.T, axis=1))
        if len(dq):
            viol = np.maximum(viol, np.max(np.abs(values @ Eq.T - dq[None, :]), axis=1))
        nonreal = imag > IMAG_TOL
        failures += int(np.sum(nonreal & (resid <= STRUCTURE_TOL)))
        viol = np.where(nonreal, 0.0, viol)
        inside += int(np.sum((viol <= tol) & ~nonreal))
        k = int(np.argmax(viol))
        if viol[k] > worst or worst_seed < 0:
            worst = max(worst, float(viol[k]))
            worst_seed = seeds[k]
    return SampleReport(
        total=samples,
        inside=inside,
        worst_violation=worst,
        worst_sample_seed=worst_seed,
        imag_residual_max=imag_max,
        gap_min=float(gap_min),
        structure_residual_max=struct_max,
        conditioning_failures=failures,
        seed=seed,
        tol=tol,
        scales=tuple(scales),
    )


def diagonal_projections(form: RealFormData, x: Spectrum, samples: int, seed: int, scales=DEFAULT_SCALES) -> np.ndarray:
    """Diagonals of sampled orbit points ``g diag(x) g^{-1}`` (the torus moment map)."""
    p, q = form.block_sizes
    J = signature_matrix(p, q)
    xf = np.array([float(v) for v in x.coords])
    n = p + q
    G = np.empty((samples, n, n), dtype=complex)
    for i in range(samples):
        sg, _ = _sample_seeds(seed, i)
        G[i] = _gaussian(n, np.random.default_rng(sg), 1)[0]
    s = np.array([scales[i % len(scales)] for i in range(samples)], dtype=float)[:, None, None]
    g = scipy.linalg.expm(s * _project(G, p))
    return np.diagonal(_orbit_points(xf, g, J), axis1=-2, axis2=-1).real.copy()


def membership_violations(P: HPolyhedron, points: np.ndarray) -> np.ndarray:
    """Worst constraint violation of each row of ``points`` (0 when inside)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != P.dim:
        raise ValueError(f"points of width {points.shape[1]} tested against a {P.dim}-dimensional polyhedron")
    (A, b), (E, d) = P._float_arrays
    viol = np.zeros(len(points))
    if len(b):
        viol = np.maximum(viol, np.max(b[None, :] - points @ A.T, axis=1))
    if len(d):
        viol = np.maximum(viol, np.max(np.abs(points @ E.T - d[None, :]), axis=1))
    return viol
