"""Distances to the essential spectrum, Lieb-Thirring sum functionals, and
divergence-scan drivers over ladders of barrier lengths n (discrete) or
coupling strengths h (continuous).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import SingularInputError


@dataclass(frozen=True)
class SumSpec:
    """Selects exactly one sum functional: omega (plain distance powers),
    sigma (distance^p over |lambda^2-4|^sigma), or tau (the tau-regularized
    variant)."""

    p: float
    omega: Optional[float] = None
    sigma: Optional[float] = None
    tau: Optional[float] = None

    def __post_init__(self):
        set_modes = sum(v is not None for v in (self.omega, self.sigma, self.tau))
        if set_modes != 1:
            raise ValueError("exactly one of omega/sigma/tau must be set")
        if self.omega is not None:
            if self.p < 0 or self.omega < 0:
                raise ValueError("need p >= 0 and omega >= 0")
        else:
            if self.p < 1:
                raise ValueError("need p >= 1")
        if self.sigma is not None and self.sigma < 0.5:
            raise ValueError("need sigma >= 1/2")
        if self.tau is not None and not 0 < self.tau < 1:
            raise ValueError("need 0 < tau < 1")

    def evaluate(self, spectrum) -> float:
        if self.omega is not None:
            return sum_band_powers(spectrum, self.omega)
        if self.sigma is not None:
            return sum_weighted(spectrum, self.p, self.sigma)
        return sum_tau_regularized(spectrum, self.p, self.tau)


@dataclass(frozen=True)
class ScanRow:
    """One ladder step: parameter (n or h), potential norm, raw and scaled
    sums, eigenvalue count, plus an error note if the step failed."""

    param: float
    norm_p: float
    raw_sum: float
    scaled_sum: float
    eigencount: int
    error: Optional[str] = None


def dist_to_band(lam: complex) -> float:
    """Euclidean distance from lambda to the segment [-2,2]."""
    lam = complex(lam)
    if abs(lam.real) <= 2:
        return abs(lam.imag)
    endpoint = 2.0 if lam.real > 2 else -2.0
    return abs(lam - endpoint)


def dist_to_halfline(lam: complex) -> float:
    """Euclidean distance from lambda to [0, inf)."""
    lam = complex(lam)
    if lam.real >= 0:
        return abs(lam.imag)
    return abs(lam)


def sum_band_powers(spectrum, omega: float) -> float:
    """Sum of dist(lambda, [-2,2])^omega over the spectrum."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    return float(sum(dist_to_band(lam) ** omega for lam in spectrum))


def sum_weighted(spectrum, p: float, sigma: float) -> float:
    """Sum of dist(lambda, [-2,2])^p / |lambda^2 - 4|^sigma."""
    if p < 1 or sigma < 0:
        raise ValueError("need p >= 1 and sigma >= 0")
    total = 0.0
    for lam in spectrum:
        lam = complex(lam)
        w = abs(lam * lam - 4)
        if w == 0 and sigma > 0:
            raise SingularInputError("lambda = +/-2 makes the weight singular")
        total += dist_to_band(lam) ** p / (w ** sigma if sigma else 1.0)
    return total


def sum_tau_regularized(spectrum, p: float, tau: float) -> float:
    """The tau-regularized functional: dist^(p+tau)/|lambda^2-4|^(1/2) for
    p > 1, and dist^(1+tau)/|lambda^2-4|^(1/2+tau/4) for p = 1."""
    if p < 1 or not 0 < tau < 1:
        raise ValueError("need p >= 1 and 0 < tau < 1")
    total = 0.0
    for lam in spectrum:
        lam = complex(lam)
        w = abs(lam * lam - 4)
        if w == 0:
            raise SingularInputError("lambda = +/-2 makes the weight singular")
        if p > 1:
            total += dist_to_band(lam) ** (p + tau) / w ** 0.5
        else:
            total += dist_to_band(lam) ** (1 + tau) / w ** (0.5 + tau / 4)
    return total


def discrete_potential_norm(n: int, p: float) -> float:
    """l^p norm of the i*n^(-2/3) barrier over n sites: n^(1/p - 2/3)."""
    return n ** (1.0 / p - 2.0 / 3.0)


def _default_discrete_spectrum(n: int):
    from .jacobi_barrier import DiscreteBarrier, discrete_spectrum

    h = n ** (-2.0 / 3.0)
    return [ep.lam for ep in discrete_spectrum(DiscreteBarrier(n=n, h=h))]


def scan_discrete(p: float, mode: SumSpec, n_list,
                  spectrum_provider: Optional[Callable] = None) -> list:
    """Divergence scan over barrier lengths with coupling h = n^(-2/3).

    ``spectrum_provider(n)`` may supply precomputed eigenvalue lists (the
    default recomputes each step). Failed steps are annotated, not fatal.
    """
    provider = spectrum_provider or _default_discrete_spectrum
    rows = []
    for n in n_list:
        if n < 2:
            raise ValueError("every n must be at least 2")
        norm = discrete_potential_norm(n, p)
        try:
            spectrum = provider(n)
            raw = mode.evaluate(spectrum)
            rows.append(ScanRow(param=float(n), norm_p=norm, raw_sum=raw,
                                scaled_sum=raw / norm ** p,
                                eigencount=len(spectrum)))
        except Exception as exc:  # annotate, keep scanning
            rows.append(ScanRow(param=float(n), norm_p=norm, raw_sum=0.0,
                                scaled_sum=0.0, eigencount=0, error=str(exc)))
    return rows


def _default_continuous_spectrum(h: float, w):
    from .schrodinger_barrier import ContinuousBarrier, continuous_spectrum

    return [ep.lam for ep in continuous_spectrum(ContinuousBarrier(h=h), w)]


def scan_continuous(p: float, sigma: float, h_list, w=None,
                    spectrum_provider: Optional[Callable] = None) -> list:
    """Divergence scan over couplings h for the continuous barrier.

    raw = sum (Im lambda)^p / |lambda|^sigma over the window spectrum;
    scaled = h^(2 sigma - p - 1) * raw; the norm column is the rescaled
    potential's L^p norm (2 h^(1-p))^(1/p).
    """
    if p < 1 or sigma < 0.5:
        raise ValueError("need p >= 1 and sigma >= 1/2")
    if w is None:
        from .schrodinger_barrier import SeedWindow
        w = SeedWindow()
    provider = spectrum_provider or (lambda h: _default_continuous_spectrum(h, w))
    rows = []
    for h in h_list:
        if not h > 0:
            raise ValueError("every h must be positive")
        norm = (2.0 * h ** (1.0 - p)) ** (1.0 / p)
        try:
            spectrum = provider(h)
            raw = float(sum(complex(lam).imag ** p / abs(lam) ** sigma
                            for lam in spectrum))
            rows.append(ScanRow(param=float(h), norm_p=norm, raw_sum=raw,
                                scaled_sum=h ** (2 * sigma - p - 1) * raw,
                                eigencount=len(spectrum)))
        except Exception as exc:
            rows.append(ScanRow(param=float(h), norm_p=norm, raw_sum=0.0,
                                scaled_sum=0.0, eigencount=0, error=str(exc)))
    return rows
