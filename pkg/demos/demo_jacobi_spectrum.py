"""Compute and print the certified spectrum of a discrete barrier operator.

Builds the n = 39, h = 0.1 operator, solves both characteristic branches,
keeps the admissible disk roots, and prints each eigenvalue with its
Birman-Schwinger residual. Also shows the closed-form determinant agreeing
with the dense matrix determinant at a few sample points.
"""

import numpy as np

from barrier_spectra import (Branch, DiscreteBarrier, birman_schwinger_det,
                             chebyshev_det_form, discrete_spectrum)

op = DiscreteBarrier(n=39, h=0.1)
spec = discrete_spectrum(op)

print(f"discrete barrier n={op.n}, h={op.h}: {len(spec)} eigenvalues")
print(f"{'lambda':>28s} {'branch':>7s} {'BS residual':>12s}")
for ep in spec:
    print(f"{ep.lam.real:13.8f} {ep.lam.imag:+13.8f}i "
          f"{ep.branch.name:>7s} {ep.bs_residual:12.2e}")

# the Chebyshev closed form and the dense Birman-Schwinger matrix agree
rng = np.random.default_rng(7)
print("\ndeterminant cross-check (closed form vs dense matrix):")
for _ in range(3):
    k = rng.uniform(0.1, 0.9) * np.exp(1j * np.pi * rng.uniform())
    d1 = birman_schwinger_det(op, k)
    d2 = chebyshev_det_form(op, k)
    print(f"  k = {k:.4f}: |rel diff| = {abs(d1 - d2) / abs(d1):.2e}")

# eigenvalues cluster just above the band [-2, 2] at height ~ h
ims = [ep.lam.imag for ep in spec]
print(f"\nIm(lambda) range: [{min(ims):.4f}, {max(ims):.4f}] (h = {op.h})")
