"""Shared fixtures: oracle curves, synthetic data, and the corpus run."""

from __future__ import annotations

import math
import random
import time

import pytest

from jacobound import CurveProfile, ZetaData, numerator_from_counts, synthesize
from jacobound.fixtures import reproduce


def oracle_elliptic() -> ZetaData:
    """q = 2 elliptic curve with 3 rational points: a = [1, 0, 2], h = 3."""
    return numerator_from_counts(2, 1, {1: 3})


def oracle_genus2() -> ZetaData:
    """q = 2 genus-2 curve with N_1 = 3, N_2 = 5: a = [1,0,0,0,4], h = 5."""
    return numerator_from_counts(2, 2, {1: 3, 2: 5})


def oracle_genus0() -> ZetaData:
    """q = 2 rational curve: a = [1], h = 1."""
    return numerator_from_counts(2, 0, {})


def oracle_triple():
    return [oracle_elliptic(), oracle_genus2(), oracle_genus0()]


def random_synthetic(rng: random.Random, q: int, g: int) -> ZetaData:
    """Weil-consistent synthetic zeta data with g random quadratic factors."""
    limit = math.isqrt(4 * q)
    traces = [rng.randint(-limit, limit) for _ in range(g)]
    return synthesize(q, traces)


def profile_with_exact_points(zeta: ZetaData, n_max: int) -> CurveProfile:
    """Profile carrying the exact point counts of `zeta` for degrees 1..n_max."""
    points = {n: zeta.point_count(n) for n in range(1, n_max + 1)}
    return CurveProfile(q=zeta.q, g=zeta.g, places={}, points=points)


def random_realizable(
    rng: random.Random, q: int, g: int, n_max: int, attempts: int = 500
) -> ZetaData:
    """Synthetic zeta data whose point counts stay nonnegative up to n_max.

    Trace tuples are redrawn until every N_n for n <= n_max is a valid
    point count, so the result behaves like data from an actual curve.
    """
    for _ in range(attempts):
        zeta = random_synthetic(rng, q, g)
        if all(zeta.point_count(n) >= 0 for n in range(1, n_max + 1)):
            return zeta
    raise RuntimeError(f"no realizable draw for q={q}, g={g} in {attempts} tries")


@pytest.fixture(scope="session")
def corpus_run():
    """One full corpus reproduction (default settings) plus its wall time."""
    start = time.perf_counter()
    result = reproduce()
    elapsed = time.perf_counter() - start
    return result, elapsed
