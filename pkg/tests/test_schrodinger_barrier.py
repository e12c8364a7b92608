"""Continuous barrier operator: characteristic equation, seeds, admissibility,
the certified window solve and the rescaling identity."""

import cmath
import math

import numpy as np
import pytest

from barrier_spectra import (ContinuousBarrier, SeedWindow, admissible,
                             char_residual, continuous_spectrum,
                             eigenfunction_matching, reduced_residual,
                             reduced_residual_other, rescale_to_tilde,
                             seed_mu, solve_char_direct, window_j_range)
from barrier_spectra.errors import SingularInputError
from barrier_spectra.numeric_core import Rectangle, count_zeros
from barrier_spectra.schrodinger_barrier import (char_scale, mu_tan_mu,
                                                 potential_norm_p_p)


def test_operator_validation():
    with pytest.raises(ValueError):
        ContinuousBarrier(h=0.0)


def test_window_invariants():
    with pytest.raises(ValueError):
        SeedWindow(alpha=0.4, beta=0.15, gamma=0.25)
    with pytest.raises(ValueError):
        SeedWindow(alpha=0.15, beta=0.40, gamma=0.40)


def test_char_factors_exactly(rng):
    # the characteristic function is the product of the two reduced factors
    for _ in range(100):
        mu = complex(rng.uniform(-50, 50), rng.uniform(-3, 3))
        h = float(rng.uniform(0.5, 5000))
        lhs = char_residual(mu, h)
        rhs = reduced_residual(mu, h) * reduced_residual_other(mu, h)
        assert abs(lhs - rhs) <= 1e-12 * float(char_scale(mu, h)) + 1e-9


def test_seed_formula_example():
    # j = 1, h = 4: (pi/4)(7-8) + i log(pi/4)
    mu = seed_mu(1, 4.0)
    assert mu.real == pytest.approx(-math.pi / 4)
    assert mu.imag == pytest.approx(math.log(math.pi / 4))


def test_seed_rejects_bad_input():
    with pytest.raises(ValueError):
        seed_mu(0, 4.0)
    with pytest.raises(ValueError):
        seed_mu(3, -1.0)


def test_window_j_range_arithmetic():
    w = SeedWindow(alpha=0.1, beta=0.4, gamma=0.15)
    # ceil(2500^0.6) = 110 and floor(2500^0.9) = floor(1143.66) = 1143
    assert window_j_range(2500.0, w) == (110, 1143)


def test_seed_quality_improves_with_h():
    # mid-window seeds should nearly solve the reduced equation, with the
    # normalized defect shrinking as h grows
    defects = []
    for h in (1e3, 1e4, 1e5):
        j_min, j_max = window_j_range(h, SeedWindow())
        j = (j_min + j_max) // 2
        mu = seed_mu(j, h)
        defects.append(abs(reduced_residual(mu, h))
                       / (math.sqrt(h) * math.exp(mu.imag)))
    assert defects[0] > defects[1] > defects[2]


def test_admissible_closed_form_matches_direct(rng):
    agree = 0
    for _ in range(500):
        mu = complex(rng.uniform(-30, -0.5), rng.uniform(-2.5, 2.5))
        if abs(np.cos(mu)) <= 1e-6:
            continue
        want = (mu * np.tan(mu)).real > 0
        assert admissible(mu) == want
        agree += 1
    assert agree > 450


def test_admissible_pole_guard():
    with pytest.raises(SingularInputError):
        admissible(math.pi / 2)


def test_mu_tan_mu_and_matching_defect():
    mu = 1.3 - 0.4j
    k = 1j * mu_tan_mu(mu)
    # derivative matching at the barrier edge is an identity in k
    assert eigenfunction_matching(mu, 10.0) < 1e-12
    assert abs(k * k - (mu * np.tan(mu)) ** 2 * (-1)) < 1e-12


def test_certified_spectrum_h100000(continuous_ladder):
    spec = continuous_ladder[1e5]
    assert len(spec) == 74
    h = 1e5
    for ep in spec:
        assert ep.residual <= 1e-9
        assert 0 < ep.lam.imag <= h
        assert abs(ep.lam - (ep.mu ** 2 + 1j * h)) < 1e-6 * abs(ep.lam)
        assert abs(ep.k ** 2 - ep.lam) <= 1e-8 * abs(ep.lam)
        assert admissible(ep.mu)


def test_window_spectra_empty_at_moderate_h(continuous_ladder):
    # the decaying-tail condition rejects the whole default index window
    # until far larger h; the certified result is an empty spectrum
    assert continuous_ladder[1e3] == []
    assert continuous_ladder[1e4] == []


def test_direct_solve_matches_argument_principle_count():
    # cross-validation over a band of the h = 2500 eigenvalue cloud
    h = 2500.0
    rect = Rectangle(complex(-80.0, 0.3), complex(-20.0, 2.2))
    mus = solve_char_direct(h, (-80.0, -20.0), (0.3, 2.2), grid=(120, 30))
    counted = count_zeros(lambda m: char_residual(m, h), rect,
                          samples_per_side=512)
    assert len(mus) > 10
    assert counted == len(mus)


def test_direct_solve_finds_admissible_cloud():
    h = 2500.0
    mus = solve_char_direct(h, (-450.0, -0.5), (-1.0, 3.5), grid=(320, 40))
    adm = [m for m in mus if admissible(m)]
    lams = [m * m + 1j * h for m in adm]
    assert len(adm) > 100
    assert all(0 < l.imag <= h for l in lams)


def test_rescale_identity_exact(continuous_ladder):
    spec = continuous_ladder[1e5]
    op = ContinuousBarrier(h=1e5)
    for p, sigma in ((1.0, 0.5), (2.0, 1.0)):
        lhs, rhs = rescale_to_tilde(op, spec, p, sigma)
        assert lhs == pytest.approx(rhs, rel=1e-12)
    assert potential_norm_p_p(1e5, 2.0) == pytest.approx(2.0 / 1e5)


def test_rescale_validates_exponents():
    with pytest.raises(ValueError):
        rescale_to_tilde(ContinuousBarrier(h=10.0), [], 0.5, 1.0)
