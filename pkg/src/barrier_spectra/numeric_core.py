"""Complex-analytic numerics: sparse polynomials, simultaneous root iteration,
damped Newton refinement, Chebyshev polynomials of the second kind, and
argument-principle zero counting over rectangles.

All functions here are pure; they hold no state and are safe to call from
concurrent workers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundaryProximityError, NewtonError, RootFindingError


def _int_power(z, d):
    """z**d for nonnegative integer d by repeated squaring (works on arrays)."""
    if d == 0:
        return np.ones_like(z) if isinstance(z, np.ndarray) else 1.0 + 0.0j
    result = None
    base = z
    e = d
    while e > 0:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


@dataclass(frozen=True)
class SparsePolynomial:
    """Polynomial stored as (degree, coefficient) pairs.

    Degrees are strictly increasing and coefficients nonzero; use
    ``from_terms`` to build one from unsorted/duplicated input.
    """

    terms: tuple

    def __post_init__(self):
        degs = [d for d, _ in self.terms]
        if degs != sorted(set(degs)):
            raise ValueError("degrees must be strictly increasing")
        if any(d < 0 for d in degs):
            raise ValueError("degrees must be nonnegative")
        if any(c == 0 for _, c in self.terms):
            raise ValueError("zero coefficients are not stored")

    @classmethod
    def from_terms(cls, pairs) -> "SparsePolynomial":
        acc: dict = {}
        for d, c in pairs:
            acc[int(d)] = acc.get(int(d), 0.0 + 0.0j) + complex(c)
        terms = tuple((d, acc[d]) for d in sorted(acc) if acc[d] != 0)
        return cls(terms)

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def coefficient(self, degree: int) -> complex:
        for d, c in self.terms:
            if d == degree:
                return c
        return 0.0 + 0.0j


def evaluate(p: SparsePolynomial, z):
    """Evaluate p and p' at z (scalar or array) using per-term binary powers.

    Returns (value, derivative).
    """
    zero = np.zeros_like(z) if isinstance(z, np.ndarray) else 0.0 + 0.0j
    value = zero + 0.0
    deriv = zero + 0.0
    for d, c in p.terms:
        if d == 0:
            value = value + c
            continue
        zp = _int_power(z, d - 1)
        deriv = deriv + (d * c) * zp
        value = value + c * (zp * z)
    return value, deriv


def term_magnitude(p: SparsePolynomial, z):
    """Sum of |c_d|*|z|^d, the natural backward-error scale at z."""
    az = np.abs(z)
    total = np.zeros_like(az) if isinstance(az, np.ndarray) else 0.0
    for d, c in p.terms:
        total = total + abs(c) * _int_power(az, d) if d else total + abs(c)
    return total


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicities plus the worst certified backward error."""

    roots: tuple  # of (value: complex, multiplicity: int)
    certified_backward_error: float

    def flat(self):
        """All roots repeated by multiplicity."""
        out = []
        for z, m in self.roots:
            out.extend([z] * m)
        return out


@dataclass(frozen=True)
class Rectangle:
    lower_left: complex
    upper_right: complex

    def __post_init__(self):
        if not (self.upper_right.real > self.lower_left.real
                and self.upper_right.imag > self.lower_left.imag):
            raise ValueError("rectangle must have strictly positive extents")

    def corners(self):
        a, b = self.lower_left, self.upper_right
        return [a, complex(b.real, a.imag), b, complex(a.real, b.imag)]


def _aberth_pass(p, z0, tol, max_iter):
    """Run Ehrlich-Aberth simultaneous iteration from the given start points.

    Returns (roots, backward_errors). Converged points are frozen so that
    slowly converging clusters (multiple roots) get the remaining budget.
    """
    z = np.array(z0, dtype=complex)
    for _ in range(max_iter):
        val, der = evaluate(p, z)
        scale = term_magnitude(p, z)
        be = np.abs(val) / np.maximum(scale, 1e-300)
        active = be > tol
        if not active.any():
            break
        # Newton correction; guard vanishing derivative with a tiny nudge
        der = np.where(np.abs(der) < 1e-300, 1e-300, der)
        w = val / der
        diff = z[active, None] - z[None, :]
        idx_active = np.nonzero(active)[0]
        diff[np.arange(len(idx_active)), idx_active] = np.inf
        repulse = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - w[active] * repulse
        denom = np.where(np.abs(denom) < 1e-30, 1e-30, denom)
        step = w[active] / denom
        # cap absurd steps to keep the cloud together
        cap = 1.0 + np.abs(z[active])
        big = np.abs(step) > cap
        step = np.where(big, step * (cap / np.abs(step)), step)
        z[active] = z[active] - step
    val, _ = evaluate(p, z)
    be = np.abs(val) / np.maximum(term_magnitude(p, z), 1e-300)
    return z, be


def _polish_multiple_roots(p, z, be, tol):
    """Collapse near-coincident root estimates onto the derivative's zero.

    A genuine multiple root is a simple zero of p', so a couple of Newton
    steps on p' pins it to machine accuracy, after which plain clustering
    can assign the multiplicity.
    """
    # estimates of an m-fold root scatter at ~ (backward error)^(1/m); the
    # polish step itself rejects genuinely distinct roots this close
    pair_radius = max(1e2 * math.sqrt(tol), 1e3 * tol)
    order = np.argsort(z.real + 1e-9 * z.imag)
    zs = z[order]
    for i in range(len(zs) - 1):
        for j in range(i + 1, len(zs)):
            if abs(zs[j].real - zs[i].real) > pair_radius:
                break
            if abs(zs[j] - zs[i]) >= pair_radius:
                continue
            w = 0.5 * (zs[i] + zs[j])
            for _ in range(40):
                _, d1 = evaluate(p, w)
                # derivative of p' via second differences of the sparse form
                d2 = _second_derivative(p, w)
                if abs(d2) < 1e-300:
                    break
                step = d1 / d2
                w = w - step
                if abs(step) <= 1e-15 * max(1.0, abs(w)):
                    break
            pw, _ = evaluate(p, w)
            if abs(pw) <= max(10 * tol, 1e3 * max(be[order[i]], be[order[j]])) * \
                    max(term_magnitude(p, w), 1e-300):
                zs[i] = w
                zs[j] = w
    z[order] = zs
    return z


def _second_derivative(p, z):
    total = 0.0 + 0.0j
    for d, c in p.terms:
        if d >= 2:
            total += d * (d - 1) * c * _int_power(z, d - 2)
    return total


def solve_polynomial(p: SparsePolynomial, tol: float = 1e-12,
                     max_iter: int = 300) -> RootSet:
    """All complex roots of p with multiplicities (Ehrlich-Aberth iteration).

    Backward error |p(z)| / sum(|c_d| |z|^d) <= tol is certified for every
    returned location; estimates closer than 10*tol are merged into
    multiplicity groups.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = p.degree
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d == 1:
        c1 = p.terms[-1][1]
        c0 = p.coefficient(0)
        return RootSet(((-c0 / c1, 1),), 0.0)

    # start on the circle motivated by the barrier problem's root radius,
    # with a retry from the Cauchy bound for generic polynomials
    lead = p.terms[-1][1]
    cauchy = 1.0 + max(abs(c) / abs(lead) for deg, c in p.terms if deg < d) \
        if len(p.terms) > 1 else 1.0
    r_spec = max(1e-3, 1.0 - (2.0 / 3.0) * math.log(max(d, 2)) / d)
    angles = 2.0 * np.pi * (np.arange(d) + 0.5) / d + 0.4 / d
    starts = [r_spec * np.exp(1j * angles), cauchy * np.exp(1j * angles)]

    best = None
    for z0 in starts:
        z, be = _aberth_pass(p, z0, tol, max_iter)
        if best is None or be.max() < best[1].max():
            best = (z, be)
        if be.max() <= tol:
            break
    z, be = best
    if be.max() > tol:
        raise RootFindingError(
            f"root iteration stalled at backward error {be.max():.3e}",
            worst_residual=float(be.max()))

    z = _polish_multiple_roots(p, z, be, tol)

    # cluster within 10*tol into multiplicity groups
    merge_radius = 10 * tol
    taken = np.zeros(len(z), dtype=bool)
    groups = []
    for i in np.argsort(np.abs(z)):
        if taken[i]:
            continue
        members = np.abs(z - z[i]) <= merge_radius
        members &= ~taken
        taken |= members
        groups.append((complex(np.mean(z[members])), int(members.sum())))
    val, _ = evaluate(p, np.array([g[0] for g in groups]))
    worst = float(np.max(np.abs(val) /
                         np.maximum(term_magnitude(p, np.array([g[0] for g in groups])), 1e-300)))
    groups.sort(key=lambda g: (g[0].real, g[0].imag))
    return RootSet(tuple(groups), max(worst, float(be.max())))


def newton_refine(f, seed: complex, tol: float = 1e-12, max_iter: int = 60,
                  scale=None) -> complex:
    """Damped Newton iteration for a holomorphic equation.

    ``f(mu)`` must return (value, derivative). ``scale(mu)``, if given,
    returns the magnitude of the largest additive term of f at mu; the
    stopping test is |f(mu)| <= tol * scale(mu).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if scale is None:
        scale = lambda mu: max(1.0, abs(mu))
    mu = complex(seed)
    fv, fd = f(mu)
    for _ in range(max_iter):
        if abs(fv) <= tol * scale(mu):
            return mu
        if abs(fd) < 1e-300:
            raise NewtonError("derivative vanished", last_iterate=mu)
        step = fv / fd
        lam = 1.0
        for _ in range(25):
            cand = mu - lam * step
            cv, cd = f(cand)
            if abs(cv) < abs(fv):
                mu, fv, fd = cand, cv, cd
                break
            lam *= 0.5
        else:
            raise NewtonError("residual stopped decreasing", last_iterate=mu)
    if abs(fv) <= tol * scale(mu):
        return mu
    raise NewtonError(f"no convergence after {max_iter} iterations "
                      f"(|f| = {abs(fv):.3e})", last_iterate=mu)


def chebyshev_U(n: int, xi):
    """Chebyshev polynomial of the second kind via the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    one = np.ones_like(xi) if isinstance(xi, np.ndarray) else 1.0 + 0.0j
    if n == 0:
        return one
    prev, cur = one, 2 * xi * one
    for _ in range(n - 1):
        prev, cur = cur, 2 * xi * cur - prev
    return cur


def _rect_points(region: Rectangle, t):
    """Map boundary parameters t in [0, 4) to points, counterclockwise."""
    a, b = region.lower_left, region.upper_right
    w = b.real - a.real
    h = b.imag - a.imag
    t = np.asarray(t, dtype=float)
    side = np.floor(t).astype(int) % 4
    frac = t - np.floor(t)
    pts = np.empty(t.shape, dtype=complex)
    pts[side == 0] = a + w * frac[side == 0]
    pts[side == 1] = complex(b.real, a.imag) + 1j * h * frac[side == 1]
    pts[side == 2] = b - w * frac[side == 2]
    pts[side == 3] = complex(a.real, b.imag) - 1j * h * frac[side == 3]
    return pts


def count_zeros(f, region: Rectangle, samples_per_side: int = 256) -> int:
    """Zeros of f inside the rectangle, with multiplicity (argument principle).

    Phase increments along the boundary are accumulated; any increment above
    pi/2 triggers bisection of that segment, so no winding can be skipped.
    """
    if samples_per_side < 64:
        raise ValueError("samples_per_side must be at least 64")
    t = np.linspace(0.0, 4.0, 4 * samples_per_side, endpoint=False)
    t = np.append(t, 4.0)
    vals = np.asarray(f(_rect_points(region, t)), dtype=complex)

    min_spacing = 4.0 / (4 * samples_per_side) / 2.0 ** 40
    candidate = None
    for _ in range(80):
        amax = np.abs(vals).max()
        if np.abs(vals).min() < 1e-12 * amax:
            raise BoundaryProximityError(
                "boundary sample too close to a zero of f")
        dphase = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(dphase) > np.pi / 2
        if not bad.any():
            total = dphase.sum() / (2 * np.pi)
            n = int(round(total))
            if abs(total - n) > 0.25:
                raise BoundaryProximityError(
                    f"winding number {total} is not close to an integer")
            # a smooth-looking phase can still alias whole turns away when
            # zeros sit between consecutive samples; accept the count only
            # after it survives one global halving of the sample spacing
            if candidate == n:
                return n
            candidate = n
            mids = 0.5 * (t[:-1] + t[1:])
            mvals = np.asarray(f(_rect_points(region, mids)), dtype=complex)
            order = np.argsort(np.concatenate([t, mids]), kind="stable")
            t = np.concatenate([t, mids])[order]
            vals = np.concatenate([vals, mvals])[order]
            continue
        candidate = None
        if (t[1:][bad] - t[:-1][bad]).min() < min_spacing:
            raise BoundaryProximityError(
                "phase did not settle under subdivision (zero on boundary?)")
        mids = 0.5 * (t[:-1][bad] + t[1:][bad])
        mvals = np.asarray(f(_rect_points(region, mids)), dtype=complex)
        order = np.argsort(np.concatenate([t, mids]), kind="stable")
        t = np.concatenate([t, mids])[order]
        vals = np.concatenate([vals, mvals])[order]
    raise BoundaryProximityError("subdivision budget exhausted")
