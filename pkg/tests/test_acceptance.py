"""Acceptance criteria, one test per criterion, run at the stated tolerances.

Each test is one pass/fail line under pytest -v and prints a measured
summary. Criteria 7, 9 and 11 test asymptotic statements whose activation
thresholds lie far beyond the desk-scale parameter ladders; they are
implemented faithfully and fail with the measured numbers rather than being
weakened (see the decisions ledger outside the package).
"""

import math
import time

import numpy as np

from barrier_spectra import (Branch, ContinuousBarrier, DiscreteBarrier,
                             SumSpec, birman_schwinger_det, chebyshev_det_form,
                             char_poly, discrete_spectrum,
                             k_from_z, match_and_measure, predict_window,
                             rate_regress, rescale_to_tilde, scan_continuous,
                             scan_discrete, solve_char_direct)
from barrier_spectra.cli_io import (RunConfig, emit_region_contour,
                                    region_contains, run)
from barrier_spectra.jacobi_barrier import branch_disk_roots
from barrier_spectra.lt_functionals import dist_to_band
from barrier_spectra.numeric_core import evaluate
from barrier_spectra.schrodinger_barrier import admissible, char_residual, char_scale


def report(num, ok, detail, limit, elapsed):
    line = ("criterion %02d %s: %s [%.1fs, limit %.0fs]"
            % (num, "PASS" if ok else "FAIL", detail, elapsed, limit))
    print(line)
    assert elapsed < limit, line
    assert ok, line


def test_criterion_01_disk_root_count():
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 5, 10, 39, 100):
        for h in (0.1, 1.0):
            total = sum(len(branch_disk_roots(DiscreteBarrier(n=n, h=h), b)[0])
                        for b in Branch)
            if total != 2 * n - 2:
                bad.append((n, h, total))
    report(1, not bad, "disk multiplicity 2n-2 on 12 operators" +
           (" offenders %s" % bad if bad else ""), 10, time.perf_counter() - t0)


def test_criterion_02_oracle_certification(rng):
    t0 = time.perf_counter()
    op = DiscreteBarrier(n=39, h=0.1)
    spec = discrete_spectrum(op)
    worst_res = max(ep.bs_residual for ep in spec)
    worst_rel = 0.0
    for _ in range(100):
        k = rng.uniform(0.05, 0.95) * np.exp(1j * np.pi * rng.uniform())
        d1, d2 = birman_schwinger_det(op, k), chebyshev_det_form(op, k)
        worst_rel = max(worst_rel, abs(d1 - d2) / max(abs(d1), abs(d2)))
    ok = worst_res <= 1e-6 and worst_rel <= 1e-8
    report(2, ok, "%d eigenvalues, worst oracle residual %.2e, closed-form "
           "agreement %.2e" % (len(spec), worst_res, worst_rel), 10,
           time.perf_counter() - t0)


def test_criterion_03_symmetry_suite():
    t0 = time.perf_counter()
    checks = 0
    worst = 0.0
    for n in range(2, 13):
        for h in (0.1, 1.0):
            op = DiscreteBarrier(n=n, h=h)
            for branch in Branch:
                p = char_poly(op, branch)
                coeffs = {d: c for d, c in p.terms}
                # palindrome
                for d, c in p.terms:
                    worst = max(worst, abs(c - coeffs.get(2 * n - d, 0.0)))
                    checks += 1
                disk, circle = branch_disk_roots(op, branch)
                # z <-> 1/z pairing
                for z in disk:
                    val, _ = evaluate(p, 1.0 / z)
                    scale = max(abs(c) * abs(1 / z) ** d for d, c in p.terms)
                    worst = max(worst, abs(val) / scale)
                    checks += 1
                # parity mapping z -> -conj(z): branch kept for odd n,
                # swapped for even n
                other = branch if n % 2 else (
                    Branch.PLUS if branch is Branch.MINUS else Branch.MINUS)
                q = char_poly(op, other)
                for z in disk:
                    w = -np.conj(z)
                    val, _ = evaluate(q, w)
                    scale = max(abs(c) * abs(w) ** d for d, c in q.terms)
                    worst = max(worst, abs(val) / scale)
                    checks += 1
                # unit-circle double roots where present
                for z0 in (1.0, -1.0):
                    val, der = evaluate(p, z0)
                    if abs(val) < 1e-10:
                        worst = max(worst, abs(der))
                        checks += 1
    ok = worst <= 1e-8
    report(3, ok, "%d symmetry checks, worst defect %.2e" % (checks, worst),
           5, time.perf_counter() - t0)


def test_criterion_04_boundary_inadmissibility():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(3, 51):
        for z0 in (1.0, -1.0):
            for branch in Branch:
                den = z0 ** n + (1 if branch is Branch.PLUS else -1) * z0
                if abs(den) > 1e-12:
                    continue  # z0 is not a root of this branch's denominator
                k = k_from_z(z0, n, branch)
                worst = max(worst, abs(abs(k) - (n + 1) / (n - 1)))
    ok = worst <= 1e-10
    report(4, ok, "boundary |k| limit (n+1)/(n-1), worst error %.2e" % worst,
           1, time.perf_counter() - t0)


def test_criterion_05_band_power_sum_contrast(discrete_ladder):
    t0 = time.perf_counter()
    ns = sorted(discrete_ladder)
    prov = lambda n: [ep.lam for ep in discrete_ladder[n]]
    grow = [r.scaled_sum for r in
            scan_discrete(1.0, SumSpec(p=1, omega=0.5), ns, prov)]
    flat = [r.scaled_sum for r in
            scan_discrete(1.0, SumSpec(p=1, omega=1.0), ns, prov)]
    ratios = [grow[i + 1] / grow[i] for i in range(len(grow) - 1)]
    ok = all(r >= 1.15 for r in ratios) and max(flat) / min(flat) < 2.0
    report(5, ok, "omega=1/2 scaled sums %s (ratios %s), omega=1 band "
           "factor %.2f" % (["%.3g" % v for v in grow],
                            ["%.2f" % r for r in ratios],
                            max(flat) / min(flat)),
           300, time.perf_counter() - t0)


def test_criterion_06_weighted_sum_growth(discrete_ladder):
    t0 = time.perf_counter()
    ns = sorted(discrete_ladder)
    prov = lambda n: [ep.lam for ep in discrete_ladder[n]]
    grow = [r.scaled_sum for r in
            scan_discrete(1.0, SumSpec(p=1, sigma=0.5), ns, prov)]
    hk = [r.scaled_sum for r in
          scan_discrete(1.0, SumSpec(p=1, tau=0.5), ns, prov)]
    ok = all(b > a for a, b in zip(grow, grow[1:])) \
        and max(hk) / min(hk) < 3.0
    report(6, ok, "sigma=1/2 scaled sums %s, tau=1/2 band factor %.2f"
           % (["%.3g" % v for v in grow], max(hk) / min(hk)),
           300, time.perf_counter() - t0)


def test_criterion_07_asymptotics(discrete_ladder):
    t0 = time.perf_counter()
    samples = []
    min_dist_ok = True
    min_dist_detail = []
    for n in sorted(discrete_ladder):
        matched = match_and_measure(predict_window(n), discrete_ladder[n])
        samples.append((n, max(e for _, _, e in matched)))
        if n >= 800:
            d = min(dist_to_band(lam) for _, lam, _ in matched)
            min_dist_detail.append("n=%d min dist %.2e (need %.2e)"
                                   % (n, d, 0.5 * n ** (-2 / 3)))
            min_dist_ok = min_dist_ok and d >= 0.5 * n ** (-2 / 3)
    slope = rate_regress(samples)
    ok = -1.1 < slope < -0.7 and min_dist_ok
    report(7, ok, "max-error slope %.2f (need (-1.1,-0.7)); %s; window "
           "centers lack eigenvalues at these n"
           % (slope, "; ".join(min_dist_detail)),
           300, time.perf_counter() - t0)


def test_criterion_08_continuous_certification(continuous_2500, tmp_path):
    t0 = time.perf_counter()
    h = 2500.0
    # window pipeline: certified (count match enforced internally), possibly
    # empty at this h; the eigenvalue cloud comes from the direct solve
    worst = max((ep.residual for ep in continuous_2500), default=0.0)
    mus = solve_char_direct(h, (-450.0, -0.5), (-1.0, 3.5), grid=(320, 40))
    cloud = [m for m in mus if admissible(m)]
    strip_ok = True
    for mu in cloud:
        lam = mu * mu + 1j * h
        strip_ok &= 0 < lam.imag <= h
        worst = max(worst, abs(char_residual(mu, h)) / float(char_scale(mu, h)))
    env = run(RunConfig(command="figure2", parameters={"h": h},
                        output_dir=tmp_path, formats=("json", "svg")))
    svg_ok = (tmp_path / "figure2.svg").exists() and env.error is None
    ok = worst <= 1e-9 and strip_ok and svg_ok and len(cloud) > 100
    report(8, ok, "window certified (%d pts), cloud %d eigenvalues in strip, "
           "worst residual %.2e, figure-2 SVG emitted"
           % (len(continuous_2500), len(cloud), worst), 30,
           time.perf_counter() - t0)


def test_criterion_09_window_eigenvalue_bounds(continuous_ladder):
    t0 = time.perf_counter()
    h = 1e4
    spec = continuous_ladder[h]
    im_ok = all(ep.lam.imag > h / 2 for ep in spec)
    mod_ok = all(abs(ep.lam) ** 0.5 <= 2 * math.pi * ep.j for ep in spec)
    # the bounds are claimed for every index in the default window; an empty
    # certified spectrum means the claim's hypotheses are not met at this h
    nonempty = len(spec) > 0
    ok = nonempty and im_ok and mod_ok
    report(9, ok, "window eigenvalues at h=1e4: %d (all default-window roots "
           "fail the decaying-tail test at this h; the bound needs far "
           "larger h)" % len(spec), 60, time.perf_counter() - t0)


def test_criterion_10_scaling_identity(continuous_2500):
    t0 = time.perf_counter()
    h = 2500.0
    op = ContinuousBarrier(h=h)
    mus = solve_char_direct(h, (-450.0, -0.5), (-1.0, 3.5), grid=(320, 40))
    cloud = [m * m + 1j * h for m in mus if admissible(m)]
    worst = 0.0
    for p, sigma in ((1.0, 0.5), (2.0, 1.0)):
        for spectrum in (continuous_2500, cloud):
            lhs, rhs = rescale_to_tilde(op, spectrum, p, sigma)
            if rhs != 0:
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
    norm_ok = abs(2.0 * h ** (1.0 - 2.0) - 2.0 / h) == 0.0
    ok = worst <= 1e-12 and norm_ok
    report(10, ok, "rescaling identity rel error %.2e on %d eigenvalues, "
           "norm 2h^(1-p) exact" % (worst, len(cloud)), 60,
           time.perf_counter() - t0)


def test_criterion_11_continuous_scan_growth(continuous_ladder):
    t0 = time.perf_counter()
    hs = sorted(continuous_ladder)
    prov = lambda h: [ep.lam for ep in continuous_ladder[h]]
    half = [r.scaled_sum for r in scan_continuous(1.0, 0.5, hs, None, prov)]
    one = [r.scaled_sum for r in scan_continuous(1.0, 1.0, hs, None, prov)]
    increasing = all(b > a for a, b in zip(half, half[1:]))
    diffs = [b - a for a, b in zip(half, half[1:])]
    log_like = increasing and max(diffs) <= 2 * min(diffs)
    try:
        slope = rate_regress(list(zip(hs, one)))
        slope_ok = abs(slope - 0.35) <= 0.15
        slope_txt = "%.2f" % slope
    except ValueError as exc:
        slope_ok = False
        slope_txt = "undefined (%s)" % exc
    ok = log_like and slope_ok
    report(11, ok, "sigma=1/2 scaled sums %s, sigma=1 slope %s vs 0.35 "
           "(default window is empty below h=1e5)"
           % (["%.3g" % v for v in half], slope_txt), 600,
           time.perf_counter() - t0)


def test_criterion_12_figure1_reproduction(tmp_path):
    t0 = time.perf_counter()
    op = DiscreteBarrier(n=39, h=0.1)
    mismatches = 0
    checked = 0
    for branch in Branch:
        polys = emit_region_contour(39, branch)
        disk, _ = branch_disk_roots(op, branch)
        for z in disk:
            if z.imag <= 0:
                continue
            inside = region_contains(polys, z)
            adm = abs(k_from_z(z, 39, branch)) < 1
            mismatches += inside != adm
            checked += 1
    env = run(RunConfig(command="figure1", parameters={"n": 39, "h": 0.1},
                        output_dir=tmp_path, formats=("json", "svg")))
    ok = mismatches == 0 and (tmp_path / "figure1.svg").exists() \
        and env.error is None
    report(12, ok, "%d roots, containment matches admissibility, three-panel "
           "SVG emitted" % checked, 10, time.perf_counter() - t0)
