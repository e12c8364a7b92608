"""Continuous 1-D Schrodinger operator -d^2/dx^2 + i*h on [-1,1]:
characteristic equation, seed asymptotics, windowed Newton solve with
argument-principle certification, and the rescaling identity to the
unit-strength long-barrier operator.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, SingularInputError
from .numeric_core import Rectangle, count_zeros

DEDUP_DISTANCE = 1e-6
CHAR_TOL_DEFAULT = 1e-9


@dataclass(frozen=True)
class ContinuousBarrier:
    """Operator with potential i*h on [-1,1], zero elsewhere."""

    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("coupling magnitude h must be positive")


@dataclass(frozen=True)
class ContinuousEigenpoint:
    j: int
    mu: complex
    k: complex
    lam: complex
    residual: float


@dataclass(frozen=True)
class SeedWindow:
    """Exponent window alpha log h <= Im mu <= beta log h for the seed
    indices; gamma controls the seed error order h^(-gamma)."""

    alpha: float = 0.15
    beta: float = 0.40
    gamma: float = 0.25

    def __post_init__(self):
        if not 0 < self.gamma < 2 * self.alpha < 2 * self.beta < 1:
            raise ValueError("need 0 < gamma < 2*alpha < 2*beta < 1")


def char_residual(mu: complex, h: float):
    """mu^2 + i*h*cos^2(mu); zero exactly at eigenvalue parameters."""
    c = np.cos(mu)
    return mu * mu + 1j * h * c * c


def char_scale(mu: complex, h: float):
    """Natural magnitude scale of the characteristic equation at mu."""
    return np.maximum(np.abs(mu) ** 2, h * np.abs(np.cos(mu)) ** 2)


def reduced_residual(mu: complex, h: float):
    """mu + e^(-i pi/4) sqrt(h) cos(mu); its zeros are one factor of the
    characteristic equation (the squaring identity)."""
    return mu + cmath.exp(-1j * math.pi / 4) * math.sqrt(h) * np.cos(mu)


def reduced_residual_other(mu: complex, h: float):
    """mu - e^(-i pi/4) sqrt(h) cos(mu), the complementary factor: the
    characteristic function is exactly the product of the two reduced
    factors, so both zero families interleave in the same Im-mu band."""
    return mu - cmath.exp(-1j * math.pi / 4) * math.sqrt(h) * np.cos(mu)


def admissible(mu: complex) -> bool:
    """Decaying-tail condition Re(mu tan mu) > 0.

    Evaluated via the closed form (Im mu) sinh(2 Im mu) < (Re mu) sin(2 Re mu),
    which is stable where |cos mu| is large; agreement with the direct form
    is asserted away from the poles of tan.
    """
    mu = complex(mu)
    if abs(np.cos(mu)) <= 1e-14:
        raise SingularInputError("mu too close to a pole of tan")
    x, y = mu.real, mu.imag
    lhs = y * math.sinh(2 * y)
    rhs = x * math.sin(2 * x)
    closed = lhs < rhs
    direct = (mu * np.tan(mu)).real
    if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs), abs(rhs)):
        assert closed == (direct > 0), "closed form disagrees with Re(mu tan mu)"
    return closed


def mu_tan_mu(mu: complex) -> complex:
    mu = complex(mu)
    c = np.cos(mu)
    if abs(c) <= 1e-14:
        raise SingularInputError("mu too close to a pole of tan")
    return mu * np.sin(mu) / c


def seed_mu(j: int, h: float) -> complex:
    """Leading-order location of the j-th window root:
    (pi/4)(7-8j) + i log(pi(8j-7)/(2 sqrt(h)))."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    if not h > 0:
        raise ValueError("h must be positive")
    return (math.pi / 4) * (7 - 8 * j) + 1j * math.log(
        math.pi * (8 * j - 7) / (2 * math.sqrt(h)))


def window_j_range(h: float, w: SeedWindow) -> tuple[int, int]:
    """Index range h^(alpha+1/2) <= j <= h^(beta+1/2); may be empty."""
    j_min = math.ceil(h ** (w.alpha + 0.5))
    j_max = math.floor(h ** (w.beta + 0.5))
    return j_min, j_max


def eigenfunction_matching(mu: complex, h: float) -> float:
    """Derivative-matching defect |i k cos(mu) + mu sin(mu)| at the barrier
    edge with k = i mu tan mu; identically zero in exact arithmetic."""
    mu = complex(mu)
    c = np.cos(mu)
    if abs(c) <= 1e-14:
        raise SingularInputError("mu too close to a pole of tan")
    k = 1j * mu * np.sin(mu) / c
    return abs(1j * k * c + mu * np.sin(mu))


def _vector_newton_reduced(mu0: np.ndarray, h: float, tol: float,
                           max_iter: int = 80):
    """Damped Newton on the reduced equation, vectorized over seeds.

    Returns (mu, converged) where the residual test is relative to
    max(|mu|, sqrt(h)|cos mu|).
    """
    rot = cmath.exp(-1j * math.pi / 4) * math.sqrt(h)
    mu = np.array(mu0, dtype=complex)

    def f_and_scale(m):
        c = np.cos(m)
        f = m + rot * c
        scale = np.maximum(np.abs(m), abs(rot) * np.abs(c))
        return f, c, scale

    # the achievable relative residual is floored near |mu|*eps by argument
    # rounding in cos, so the requested tol cannot be honored for huge |mu|
    eff_tol = np.maximum(tol, 32 * np.finfo(float).eps * np.abs(mu))

    f, c, scale = f_and_scale(mu)
    done = np.abs(f) <= eff_tol * scale
    for _ in range(max_iter):
        if done.all():
            break
        act = ~done
        d = 1.0 - rot * np.sin(mu[act])
        d = np.where(np.abs(d) < 1e-300, 1e-300, d)
        step = f[act] / d
        lam = np.ones(step.shape)
        for _ in range(25):
            cand = mu[act] - lam * step
            fc = cand + rot * np.cos(cand)
            better = np.abs(fc) < np.abs(f[act])
            if better.all():
                break
            lam = np.where(better, lam, lam * 0.5)
        mu[act] = mu[act] - lam * step
        f, c, scale = f_and_scale(mu)
        done = np.abs(f) <= eff_tol * scale
    return mu, done


def _count_window_roots(h: float, mus: np.ndarray) -> tuple[int, Rectangle]:
    """Argument-principle count of seeded-branch zeros over a rectangle
    hugging the found roots, strictly inside Re mu < 0.

    The rectangle is counted with the full characteristic function and the
    exact complementary factor is counted separately; their difference is
    the zero count of the seeded branch, since the characteristic function
    is exactly the product of the two reduced factors.
    """
    re_lo = mus.real.min() - math.pi
    re_hi = min(mus.real.max() + math.pi, -1.0)
    im_lo = mus.imag.min() - 0.5
    im_hi = mus.imag.max() + 0.5
    rect = Rectangle(complex(re_lo, im_lo), complex(re_hi, im_hi))
    # zeros are spaced 2 pi along Re mu per factor; resolve well below that
    # spacing so boundary phase increments cannot alias whole turns away
    samples = max(256, int(3.0 * (re_hi - re_lo)))
    count_full = count_zeros(lambda m: char_residual(m, h), rect,
                             samples_per_side=samples)
    count_other = count_zeros(lambda m: reduced_residual_other(m, h), rect,
                              samples_per_side=samples)
    return count_full - count_other, rect


def continuous_spectrum(op: ContinuousBarrier, w: SeedWindow = SeedWindow(),
                        tol: float = CHAR_TOL_DEFAULT,
                        certify_count: bool = True) -> list:
    """Certified window eigenvalues of the continuous barrier operator.

    Seeds over the whole index window are Newton-refined against the reduced
    equation, deduplicated, filtered by the decaying-tail condition, and
    certified both pointwise (characteristic residual) and globally
    (argument-principle zero count over the window rectangle).
    """
    j_min, j_max = window_j_range(op.h, w)
    if j_min > j_max:
        return []
    js = np.arange(j_min, j_max + 1)
    seeds = np.array([seed_mu(int(j), op.h) for j in js])
    # 1e-12 sits safely above the rounding floor of cos at |mu| ~ h^(beta+1/2)
    mus, ok = _vector_newton_reduced(seeds, op.h, tol=1e-12)
    fail_rate = 1.0 - ok.mean()
    if fail_rate > 0.01:
        raise CertificationError(
            f"Newton failed on {fail_rate:.1%} of the seed window")
    mus, js = mus[ok], js[ok]

    # dedupe convergence onto the same root
    order = np.lexsort((mus.imag, mus.real))
    mus, js = mus[order], js[order]
    keep = np.ones(len(mus), dtype=bool)
    for i in range(1, len(mus)):
        if abs(mus[i] - mus[i - 1]) < DEDUP_DISTANCE:
            keep[i] = False
    mus, js = mus[keep], js[keep]

    if np.any(np.abs(mus.real) <= 1e-8):
        raise CertificationError("purely imaginary root encountered")

    points = []
    rejected = 0
    for j, mu in zip(js, mus):
        mu = complex(mu)
        if not admissible(mu):
            rejected += 1
            continue
        lam = mu * mu + 1j * op.h
        k = 1j * mu_tan_mu(mu)
        res = abs(char_residual(mu, op.h))
        scale = float(char_scale(mu, op.h))
        if res > tol * scale:
            raise CertificationError(
                f"characteristic residual {res:.3e} above gate at j={j}")
        if abs(k * k - lam) > 1e-8 * max(abs(lam), 1.0):
            raise CertificationError(f"k^2 != lambda at j={j}")
        points.append(ContinuousEigenpoint(j=int(j), mu=mu, k=k, lam=lam,
                                           residual=res / scale))

    if certify_count and len(mus):
        count, rect = _count_window_roots(op.h, mus)
        if count != len(mus):
            raise CertificationError(
                f"argument principle counted {count} zeros in {rect} "
                f"but {len(mus)} distinct roots were found")
    return points


def solve_char_direct(h: float, re_range: tuple[float, float],
                      im_range: tuple[float, float],
                      grid: int | tuple[int, int] = 60,
                      tol: float = CHAR_TOL_DEFAULT) -> list:
    """Roots of the full characteristic equation from a coarse grid of Newton
    seeds over a mu-region (used for figure reproduction; reports roots
    regardless of which reduced factor they solve).

    grid may be a single count or (along Re, along Im); only converged roots
    inside the stated region are kept, deduplicated at DEDUP_DISTANCE.
    """
    g_re, g_im = grid if isinstance(grid, tuple) else (grid, grid)
    res = np.linspace(re_range[0], re_range[1], g_re)
    ims = np.linspace(im_range[0], im_range[1], g_im)
    seeds = (res[:, None] + 1j * ims[None, :]).ravel()
    mu = seeds.copy()
    # seeds far from any root may diverge and overflow cos; they are
    # discarded by the finiteness filter below
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(60):
            c = np.cos(mu)
            f = mu * mu + 1j * h * c * c
            d = 2 * mu - 2j * h * c * np.sin(mu)
            d = np.where(np.abs(d) < 1e-300, 1e-300, d)
            mu = np.where(np.isfinite(d) & np.isfinite(f), mu - f / d, np.inf)
        resid = np.abs(char_residual(mu, h))
        ok = np.isfinite(mu) & (resid <= tol * char_scale(mu, h))
    ok &= (mu.real >= re_range[0]) & (mu.real <= re_range[1])
    ok &= (mu.imag >= im_range[0]) & (mu.imag <= im_range[1])
    mu = mu[ok]
    roots = []
    for m in sorted(mu, key=lambda v: (v.real, v.imag)):
        if all(abs(m - r) >= DEDUP_DISTANCE for r in roots):
            roots.append(complex(m))
    return roots


def rescale_to_tilde(op: ContinuousBarrier, spectrum: list, p: float,
                     sigma: float) -> tuple[float, float]:
    """Both sides of the exact rescaling identity between the normalized
    functional of the unit-strength long barrier and the h-barrier sum.

    lhs sums dist(lambda/h^2, [0,inf))^p / |lambda/h^2|^sigma over the
    rescaled spectrum, normalized by the potential norm 2 h^(1-p);
    rhs = (1/2) h^(2 sigma - p - 1) * sum (Im lambda)^p / |lambda|^sigma.
    """
    if p < 1 or sigma < 0.5:
        raise ValueError("need p >= 1 and sigma >= 1/2")
    from .lt_functionals import dist_to_halfline

    norm_p_p = 2.0 * op.h ** (1.0 - p)
    lhs = 0.0
    rhs = 0.0
    for ep in spectrum:
        lam = ep.lam if hasattr(ep, "lam") else complex(ep)
        if lam == 0:
            raise SingularInputError("lambda = 0 makes the weight singular")
        lt = lam / op.h ** 2
        lhs += dist_to_halfline(lt) ** p / abs(lt) ** sigma
        rhs += lam.imag ** p / abs(lam) ** sigma
    lhs /= norm_p_p
    rhs *= 0.5 * op.h ** (2 * sigma - p - 1)
    return lhs, rhs


def potential_norm_p_p(h: float, p: float) -> float:
    """L^p norm (to the p) of the rescaled unit-strength potential: 2 h^(1-p)."""
    return 2.0 * h ** (1.0 - p)
