"""Shared fixtures and generators."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from adorbits.orbitsum import sum_spectra
from adorbits.rootsys import Spectrum, parse_algebra

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

SU21_CASE = ("su(2,1)", (4, 1, -5), (2, 1, -3))
SU22_CASE = ("su(2,2)", (4, 2, 1, -7), (3, 2, 1, -6))


def random_admissible(p: int, q: int, rng: random.Random, spread: int = 6) -> Spectrum:
    """Admissible trace-zero spectrum with small rational entries."""
    mus = sorted((rng.randint(-spread, spread) for _ in range(q)), reverse=True)
    top = mus[0] + 1
    lams = sorted((top + rng.randint(0, spread) for _ in range(p)), reverse=True)
    x = [Fraction(v) for v in lams + mus]
    mean = sum(x) / len(x)
    return Spectrum(tuple(v - mean for v in x))


def random_pair(p: int, q: int, seed: int):
    rng = random.Random(seed)
    return random_admissible(p, q, rng), random_admissible(p, q, rng)


@pytest.fixture(scope="session")
def su21_case():
    alg, a, b = SU21_CASE
    return sum_spectra(parse_algebra(alg), Spectrum.of(a), Spectrum.of(b))


@pytest.fixture(scope="session")
def su22_case():
    alg, a, b = SU22_CASE
    return sum_spectra(parse_algebra(alg), Spectrum.of(a), Spectrum.of(b))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(format_line(k, *RESULTS[k]))
