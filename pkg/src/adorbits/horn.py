"""Compact-case polytope: Horn inequalities per unitary block, or sampling.

Eigenvalues are ordered descending, so every Horn triple ``(I, J, K)``
contributes ``sum_{k in K} c_k <= sum_{i in I} a_i + sum_{j in J} b_j``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.linalg
from scipy.spatial import ConvexHull

from . import rational as rq
from .polyhedra import HPolyhedron
from .rootsys import RealFormData, Spectrum, chamber_sort, validate, weyl_group_action


@dataclass(frozen=True, order=True)
class HornTriple:
    n: int
    r: int
    I: tuple[int, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]


@dataclass(frozen=True)
class CompactPolytope:
    hrep: HPolyhedron
    exact: bool


def _dominated_by_smaller(I, J, K, r: int) -> bool:
    """Recursive condition against every triple of a smaller size over ``{1..r}``."""
    for rr in range(1, r):
        for t in _triples(r, rr):
            lhs = sum(I[f - 1] for f in t.I) + sum(J[g - 1] for g in t.J)
            if lhs > sum(K[h - 1] for h in t.K) + rr * (rr + 1) // 2:
                return False
    return True


@lru_cache(maxsize=None)
def _triples(n: int, r: int) -> tuple[HornTriple, ...]:
    target_shift = r * (r + 1) // 2
    subsets = list(itertools.combinations(range(1, n + 1), r))
    out = []
    for I in subsets:
        for J in subsets:
            sij = sum(I) + sum(J) - target_shift
            for K in subsets:
                if sum(K) != sij:
                    continue
                if _dominated_by_smaller(I, J, K, r):
                    out.append(HornTriple(n, r, I, J, K))
    return tuple(sorted(out))


def horn_triples(n: int, r: int) -> tuple[HornTriple, ...]:
    """All Horn triples of size ``r`` over ``{1..n}``, sorted.

    ``r = n`` is excluded: it only gives the trace equality.
    """
    if n < 1:
        raise ValueError(f"block size must be positive, got {n}")
    if r == n and n == 1:
        return ()
    if not 1 <= r < n:
        raise ValueError(f"need 1 <= r < n, got r={r}, n={n}")
    return _triples(n, r)


def all_horn_triples(n: int) -> tuple[HornTriple, ...]:
    return tuple(t for r in range(1, n) for t in horn_triples(n, r))


def _blocks(form: RealFormData) -> list[tuple[int, ...]]:
    p, q = form.block_sizes
    return [tuple(range(p)), tuple(range(p, p + q))]


def horn_hrep(form: RealFormData, a: Spectrum, b: Spectrum) -> HPolyhedron:
    """Trace equalities, every Horn inequality and the chamber, unreduced."""
    dim = form.ambient_dim
    ineqs = []
    eqs = []
    for block in _blocks(form):
        n = len(block)
        eq = [0] * dim
        for c in block:
            eq[c] = 1
        eqs.append((eq, sum(a.coords[c] for c in block) + sum(b.coords[c] for c in block)))
        for t in all_horn_triples(n):
            normal = [0] * dim
            for k in t.K:
                normal[block[k - 1]] = -1
            bound = sum(a.coords[block[i - 1]] for i in t.I) + sum(b.coords[block[j - 1]] for j in t.J)
            ineqs.append((normal, -bound))
    ineqs += [(c, 0) for c in form.chamber]
    return HPolyhedron.from_rows(dim, ineqs, eqs)


def compact_polytope(form: RealFormData, a: Spectrum, b: Spectrum, samples: int = 20000, seed: int = 0) -> CompactPolytope:
    """Kirwan polytope of the maximal compact subgroup for the pair ``(a, b)``.

    Exact (Horn inequalities) for ``su(p,q)``; other forms fall back to
    :func:`compact_polytope_sampled` and come back with ``exact=False``.
    """
    validate(form, a)
    validate(form, b)
    if form.block_sizes is None:
        return compact_polytope_sampled(form, a, b, samples=samples, seed=seed)
    return CompactPolytope(horn_hrep(form, a, b), exact=True)


# -- sampling fallback -------------------------------------------------------------


def haar_unitary(n: int, rng: np.random.Generator, batch: int | None = None) -> np.ndarray:
    shape = (n, n) if batch is None else (batch, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def levi_unitary(n: int, rng: np.random.Generator, batch: int) -> np.ndarray:
    """Unitaries ``P diag(U_1, ..., U_k) Q`` with Haar blocks and random permutations.

    Eigenvalues coming from different blocks do not repel, so these reach
    the chamber walls of the compact polytope far more often than Haar
    samples do.  Block sizes follow a uniformly random composition of ``n``.
    """
    out = np.empty((batch, n, n), dtype=complex)
    cuts = rng.integers(0, 2, size=(batch, n - 1)) if n > 1 else np.zeros((batch, 0), dtype=int)
    keys = [tuple(row) for row in cuts]
    for key in sorted(set(keys)):
        rows = np.array([i for i, k in enumerate(keys) if k == key])
        sizes, size = [], 1
        for c in key:
            if c:
                sizes.append(size)
                size = 1
            else:
                size += 1
        sizes.append(size)
        block = np.zeros((len(rows), n, n), dtype=complex)
        start = 0
        for s in sizes:
            block[:, start:start + s, start:start + s] = haar_unitary(s, rng, batch=len(rows))
            start += s
        out[rows] = block
    left = np.argsort(rng.random((batch, n)), axis=1)
    right = np.argsort(rng.random((batch, n)), axis=1)
    out = np.take_along_axis(out, left[:, :, None], axis=1)
    return np.take_along_axis(out, right[:, None, :], axis=2)


def haar_special_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def _skew(t: np.ndarray, size: int) -> np.ndarray:
    X = np.zeros((size, size))
    for i, v in enumerate(t):
        X[2 * i, 2 * i + 1] = v
        X[2 * i + 1, 2 * i] = -v
    return X


def _skew_torus(X: np.ndarray, k: int) -> np.ndarray:
    """Chamber torus coordinates of a real skew matrix (last sign from the Pfaffian)."""
    T, Z = scipy.linalg.schur(X, output="real")
    m = X.shape[0]
    eps = 1e-12 * max(1.0, float(np.abs(X).max()))
    blocks = []
    i = 0
    while i < m:
        if i + 1 < m and abs(T[i + 1, i]) > eps:
            blocks.append(T[i, i + 1])
            i += 2
        else:
            blocks.append(0.0)
            i += 1
    if m % 2 == 0 and len(blocks) == m // 2:
        pf_sign = float(np.sign(np.linalg.det(Z)) * np.prod(np.sign(blocks)))
    else:
        pf_sign = 1.0
    t = np.sort(np.abs(np.array(blocks)))[::-1][:k]
    if m % 2 == 0 and len(t):
        t[-1] *= pf_sign if pf_sign != 0 else 1.0
    return t


def _sampled_sums(form: RealFormData, a: np.ndarray, b: np.ndarray, count: int, rng) -> np.ndarray:
    """Chamber coordinates of ``a + k.b`` for ``count`` random ``k``.

    Unitary factors mix Haar samples with :func:`levi_unitary` samples.
    """
    c = np.zeros((count, form.ambient_dim))
    for f in form.compact_factors:
        idx = list(f.coords)
        if f.kind == "center":
            c[:, idx] = a[idx] + b[idx]
        elif f.kind == "u":
            s = np.array(f.signs, dtype=float)
            half = count // 2
            u = np.concatenate([haar_unitary(len(idx), rng, batch=count - half), levi_unitary(len(idx), rng, half)])
            M = np.diag(s * a[idx]) + (u * (s * b[idx])[None, None, :]) @ np.conj(np.swapaxes(u, -1, -2))
            c[:, idx] = s * np.linalg.eigvalsh(M)[:, ::-1]
        elif f.kind == "so":
            Xa = _skew(a[idx], f.size)
            Xb = _skew(b[idx], f.size)
            for row in range(count):
                g = haar_special_orthogonal(f.size, rng)
                c[row, idx] = _skew_torus(Xa + g @ Xb @ g.T, len(idx))
        else:
            raise NotImplementedError(f"no sampler for compact factor {f.kind!r}")
    return c


def _exact_equalities(form: RealFormData, a: Spectrum, b: Spectrum):
    """Equalities that hold on every sampled sum, and the coordinates they fix."""
    eqs = []
    fixed = set()
    for f in form.compact_factors:
        if f.kind == "center":
            for i in f.coords:
                eqs.append((rq.unit(form.ambient_dim, i), a.coords[i] + b.coords[i]))
                fixed.add(i)
        elif f.kind == "u":
            normal = [0] * form.ambient_dim
            for i, s in zip(f.coords, f.signs):
                normal[i] = s
            eqs.append((rq.vec(normal), rq.dot(rq.vec(normal), rq.add(a.coords, b.coords))))
            fixed.add(f.coords[-1])
    return eqs, fixed


def _rationalize(v: float, den: int = 10**6) -> Fraction:
    return Fraction(v).limit_denominator(den)


def compact_polytope_sampled(
    form: RealFormData, a: Spectrum, b: Spectrum, samples: int = 20000, seed: int = 0
) -> CompactPolytope:
    """Rational hull of chamber-sorted sums ``a + k.b`` over sampled ``k`` in K.

    The Weyl-group representatives of ``K`` are always included, so every
    chamber-sorted Weyl sum lies in the result.  Lower-dimensional clouds
    come back as flat polytopes.
    """
    if samples < 1:
        raise ValueError(f"need at least one sample, got {samples}")
    if not form.compact_factors:
        raise NotImplementedError(f"no compact sampler for {form.name}")
    dim = form.ambient_dim
    rng = np.random.default_rng(seed)
    af = np.array([float(v) for v in a.coords])
    bf = np.array([float(v) for v in b.coords])

    exact_points = {chamber_sort(form, rq.add(a.coords, wb[0])) for wb in weyl_group_action(form, [b.coords])}
    cloud = [np.array([float(v) for v in p]) for p in sorted(exact_points)]
    pts = np.vstack([np.array(cloud), _sampled_sums(form, af, bf, samples, rng)])

    eqs, fixed = _exact_equalities(form, a, b)
    free = [i for i in range(dim) if i not in fixed]
    ineqs = []
    if free:
        X = pts[:, free]
        center = X.mean(axis=0)
        # right singular vectors from the small Gram matrix
        evals, evecs = np.linalg.eigh((X - center).T @ (X - center))
        order = np.argsort(evals)[::-1]
        sv = np.sqrt(np.clip(evals[order], 0.0, None))
        vt = evecs[:, order].T
        tol = 1e-7 * max(1.0, float(np.abs(X).max())) * math.sqrt(len(X))
        rank = int(np.sum(sv > tol))
        span, normal_space = vt[:rank], vt[rank:]
        for nrm in normal_space:
            coeffs = [_rationalize(v) for v in nrm]
            full = [Fraction(0)] * dim
            for c, i in zip(coeffs, free):
                full[i] = c
            eqs.append((tuple(full), _rationalize(float(nrm @ center))))
        Y = (X - center) @ span.T
        if rank == 1:
            directions = [(span[0], float(Y[:, 0].min())), (-span[0], float(-Y[:, 0].max()))]
        elif rank >= 2:
            hull = ConvexHull(Y)
            directions = []
            for eqn in hull.equations:
                w = -eqn[:-1] @ span
                directions.append((w, None))
        else:
            directions = []
        for w, _ in directions:
            coeffs = [_rationalize(v) for v in w]
            nq = [Fraction(0)] * dim
            for c, i in zip(coeffs, free):
                nq[i] = c
            nf = np.array([float(c) for c in coeffs])
            low = float((X @ nf).min())
            ineqs.append((tuple(nq), Fraction(math.floor(low * 10**9), 10**9)))
    ineqs += [(rq.vec(c), 0) for c in form.chamber]
    return CompactPolytope(HPolyhedron.from_rows(dim, ineqs, eqs), exact=False)
