"""Shared fixtures: the expensive spectra are computed once per session and
reused across the unit tests and the acceptance criteria."""

import numpy as np
import pytest

from barrier_spectra import (ContinuousBarrier, DiscreteBarrier,
                             continuous_spectrum, discrete_spectrum)

DISCRETE_LADDER = (200, 400, 800, 1600)
CONTINUOUS_LADDER = (1e3, 1e4, 1e5)


@pytest.fixture(scope="session")
def discrete_ladder():
    """Certified spectra of the n-ladder operators with h = n^(-2/3)."""
    out = {}
    for n in DISCRETE_LADDER:
        op = DiscreteBarrier(n=n, h=n ** (-2.0 / 3.0))
        out[n] = discrete_spectrum(op)
    return out


@pytest.fixture(scope="session")
def continuous_ladder():
    """Certified window spectra over the h-ladder, default seed window."""
    out = {}
    for h in CONTINUOUS_LADDER:
        out[h] = continuous_spectrum(ContinuousBarrier(h=h))
    return out


@pytest.fixture(scope="session")
def continuous_2500():
    return continuous_spectrum(ContinuousBarrier(h=2500.0))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260823)
