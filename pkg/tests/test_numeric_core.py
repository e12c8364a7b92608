"""Polynomial plumbing, the simultaneous root iteration, Newton refinement,
Chebyshev evaluation and the argument-principle counter."""

import math

import numpy as np
import pytest

from barrier_spectra import (Rectangle, SparsePolynomial, chebyshev_U,
                             count_zeros, evaluate, newton_refine,
                             solve_polynomial)
from barrier_spectra.errors import (BoundaryProximityError, NewtonError,
                                    RootFindingError)


def test_sparse_from_terms_combines_and_drops():
    p = SparsePolynomial.from_terms([(4, 1.0), (2, 2.0), (2, -2.0), (0, 3.0)])
    assert p.degree == 4
    assert p.coefficient(2) == 0
    assert p.coefficient(0) == 3.0


def test_sparse_rejects_negative_degree():
    with pytest.raises(ValueError):
        SparsePolynomial.from_terms([(-1, 1.0)])


def test_evaluate_value_and_derivative():
    # p(z) = z^3 - 2z + 5
    p = SparsePolynomial.from_terms([(3, 1.0), (1, -2.0), (0, 5.0)])
    val, der = evaluate(p, 2.0)
    assert val == pytest.approx(9.0)
    assert der == pytest.approx(10.0)


def test_solve_cubic_roots_of_unity():
    p = SparsePolynomial.from_terms([(3, 1.0), (0, -1.0)])
    rs = solve_polynomial(p, 1e-12)
    roots = sorted(rs.flat(), key=lambda z: (round(z.real, 8), z.imag))
    expect = sorted([np.exp(2j * np.pi * k / 3) for k in range(3)],
                    key=lambda z: (round(z.real, 8), z.imag))
    for a, b in zip(roots, expect):
        assert abs(a - b) < 1e-10
    assert rs.certified_backward_error < 1e-12


def test_solve_double_root_collapses():
    # (z - 1)^2
    p = SparsePolynomial.from_terms([(2, 1.0), (1, -2.0), (0, 1.0)])
    rs = solve_polynomial(p, 1e-12)
    assert len(rs.roots) == 1
    z, m = rs.roots[0]
    assert m == 2
    assert abs(z - 1.0) < 1e-6


def test_solve_random_factored_polynomial(rng):
    true = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    coeffs = np.poly(true)
    p = SparsePolynomial.from_terms(
        [(len(coeffs) - 1 - i, c) for i, c in enumerate(coeffs)])
    rs = solve_polynomial(p, 1e-13)
    found = np.array(sorted(rs.flat(), key=lambda z: (z.real, z.imag)))
    want = np.array(sorted(true, key=lambda z: (z.real, z.imag)))
    assert np.max(np.abs(found - want)) < 1e-8


def test_solve_degree_one():
    p = SparsePolynomial.from_terms([(1, 2.0), (0, -3.0)])
    assert abs(solve_polynomial(p, 1e-12).flat()[0] - 1.5) < 1e-15


def test_newton_refine_sqrt2():
    root = newton_refine(lambda z: (z * z - 2.0, 2.0 * z), 1.3)
    assert abs(root - math.sqrt(2)) < 1e-12


def test_newton_refine_failure_reports_iterate():
    # f has no zero near the seed, derivative pushes nowhere useful
    with pytest.raises(NewtonError):
        newton_refine(lambda z: (1.0 + 0 * z, 0.0 * z + 1e-30), 0.5,
                      max_iter=5)


def test_chebyshev_recurrence_matches_sin_formula(rng):
    # U_n(cos t) = sin((n+1)t)/sin(t)
    for n in (0, 1, 2, 5, 17):
        t = rng.uniform(0.1, 3.0)
        assert chebyshev_U(n, math.cos(t)) == pytest.approx(
            math.sin((n + 1) * t) / math.sin(t), rel=1e-10)


def test_chebyshev_complex_argument():
    # U_2(x) = 4x^2 - 1 everywhere in the plane
    z = 0.3 + 0.7j
    assert chebyshev_U(2, z) == pytest.approx(4 * z * z - 1)


def test_count_zeros_cos():
    # cos has zeros at odd multiples of pi/2; six of them in (-8, 8)
    rect = Rectangle(complex(-8, -1), complex(8, 1))
    assert count_zeros(np.cos, rect) == 6


def test_count_zeros_polynomial_multiplicity():
    rect = Rectangle(complex(-2, -2), complex(2, 2))
    assert count_zeros(lambda z: (z - 0.5) ** 3 * (z + 1), rect) == 4


def test_count_zeros_dense_row_of_roots():
    # many zeros close to the boundary used to alias the winding number
    rect = Rectangle(complex(-200.5, -0.7), complex(-0.5, 0.7))
    assert count_zeros(np.sin, rect, samples_per_side=600) == 63


def test_count_zeros_zero_on_boundary_raises():
    rect = Rectangle(complex(0, -1), complex(math.pi, 1))
    with pytest.raises(BoundaryProximityError):
        count_zeros(np.sin, rect)


def test_rootfinding_error_on_hopeless_tolerance():
    # not raised for reasonable input; sanity check that the type exists
    assert issubclass(RootFindingError, Exception)
