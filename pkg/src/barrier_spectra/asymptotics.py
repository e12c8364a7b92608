"""Closed-form eigenvalue predictors for the discrete barrier in the large-n
regime, matching against computed spectra, and log-log rate regression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import linregress


@dataclass(frozen=True)
class AsymptoticPrediction:
    j: int
    phi: float
    r: float
    lambda_approx: complex

    def __post_init__(self):
        if not 0 < self.phi < math.pi:
            raise ValueError("phi must lie in (0, pi)")
        if not 0 < self.r < 1:
            raise ValueError("r must lie in (0, 1)")


def window_index_range(n: int, extended: bool = False,
                       eps: float = 0.05) -> tuple[int, int]:
    """Admissible index range for the predictor: the central window
    (n+2)/8 <= j <= (3n+2)/8, or the near-endpoint extension controlled
    by eps."""
    if extended:
        lo = math.ceil((2 * n * eps + 1) / 4)
        hi = math.floor((2 * n * (1 - eps) + 1) / 4)
    else:
        lo = math.ceil((n + 2) / 8)
        hi = math.floor((3 * n + 2) / 8)
    return lo, hi


def predict_discrete(j: int, n: int, extended: bool = False,
                     eps: float = 0.05) -> AsymptoticPrediction:
    """Leading-order root angle/radius and eigenvalue for index j:
    phi = pi(4j-1)/(2n), r = 1 - (2/3) log(n)/n,
    lambda ~ 2 cos(phi) + i n^(-2/3)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    lo, hi = window_index_range(n, extended, eps)
    if not lo <= j <= hi:
        raise ValueError(f"index j={j} outside the window [{lo}, {hi}]")
    phi = math.pi * (4 * j - 1) / (2 * n)
    r = 1.0 - (2.0 / 3.0) * math.log(n) / n
    lam = 2.0 * math.cos(phi) + 1j * n ** (-2.0 / 3.0)
    return AsymptoticPrediction(j=j, phi=phi, r=r, lambda_approx=lam)


def predict_window(n: int, extended: bool = False, eps: float = 0.05) -> list:
    lo, hi = window_index_range(n, extended, eps)
    return [predict_discrete(j, n, extended, eps) for j in range(lo, hi + 1)]


def match_and_measure(predictions, spectrum,
                      max_unmatched_fraction: float = 0.10) -> list:
    """Greedy nearest-neighbor matching of predictions to computed
    eigenvalues; each eigenvalue is consumed at most once.

    Returns [(j, matched_lambda, error)], unmatched predictions omitted;
    raises if more than the allowed fraction stays unmatched.
    """
    lams = np.array([ep.lam if hasattr(ep, "lam") else complex(ep)
                     for ep in spectrum])
    available = np.ones(len(lams), dtype=bool)
    matched = []
    unmatched = 0
    # process tightest predictions first so greedy choices stay sensible
    for pred in sorted(predictions, key=lambda q: q.phi):
        if not available.any():
            unmatched += 1
            continue
        d = np.abs(lams - pred.lambda_approx)
        d[~available] = np.inf
        i = int(np.argmin(d))
        # a prediction should land within the inter-eigenvalue spacing
        if not np.isfinite(d[i]):
            unmatched += 1
            continue
        available[i] = False
        matched.append((pred.j, complex(lams[i]), float(d[i])))
    total = len(list(predictions))
    if total and unmatched / total > max_unmatched_fraction:
        raise ValueError(
            f"{unmatched}/{total} predictions unmatched (> "
            f"{max_unmatched_fraction:.0%})")
    return matched


def rate_regress(samples) -> float:
    """Least-squares slope of log(error) vs log(scale).

    Zero errors are floored at 1e-300 so constant-zero inputs degenerate
    loudly rather than silently.
    """
    samples = list(samples)
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    scales = np.array([s for s, _ in samples], dtype=float)
    errors = np.array([e for _, e in samples], dtype=float)
    if np.any(scales <= 0) or np.any(errors <= 0):
        raise ValueError("scales and errors must be positive")
    x = np.log(scales)
    if np.allclose(x, x[0]):
        raise ValueError("degenerate scales: zero variance")
    return float(linregress(x, np.log(errors)).slope)
