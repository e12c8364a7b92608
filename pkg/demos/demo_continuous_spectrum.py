"""Eigenvalue cloud of the continuous barrier -d^2/dx^2 + i h on [-1, 1].

Two routes to the same spectrum:

1. the seeded window pipeline (continuous_spectrum): asymptotic seeds
   refined by Newton, filtered by the decaying-tail condition, and
   certified by an argument-principle count. The default index window only
   becomes admissible at very large h; at h = 1e5 it certifies 74 points.

2. a direct solve of the full characteristic equation mu^2 + i h cos^2 mu
   from a coarse seed grid (solve_char_direct), which finds the low-index
   admissible cloud at moderate h.
"""

from barrier_spectra import (ContinuousBarrier, admissible,
                             continuous_spectrum, solve_char_direct)
from barrier_spectra.cli_io import default_mu_region

h = 2500.0

re_lo, re_hi, im_lo, im_hi = default_mu_region(h)
mus = solve_char_direct(h, (re_lo, re_hi), (im_lo, im_hi),
                        grid=(max(60, int((re_hi - re_lo) / 1.5)), 40))
cloud = [m for m in mus if admissible(m)]
lams = [m * m + 1j * h for m in cloud]

print(f"h = {h}: direct solve found {len(mus)} characteristic roots, "
      f"{len(cloud)} admissible")
print("five largest |Im lambda|:")
for lam in sorted(lams, key=lambda z: -z.imag)[:5]:
    print(f"  {lam.real:14.3f} {lam.imag:+10.3f}i")

# the seeded window route at a coupling where the window is admissible
h_big = 1e5
spec = continuous_spectrum(ContinuousBarrier(h=h_big))
print(f"\nh = {h_big:g}: certified window spectrum has {len(spec)} points")
if spec:
    worst = max(ep.residual for ep in spec)
    print(f"worst characteristic residual: {worst:.2e}")
    ep = spec[0]
    print(f"first point: j = {ep.j}, mu = {ep.mu:.4f}, "
          f"lambda = {ep.lam:.4f}")
