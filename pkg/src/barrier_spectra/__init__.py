"""Spectra and Lieb-Thirring functionals of non-self-adjoint rectangular
barrier Schrodinger operators, discrete and continuous."""

__version__ = "0.1.0"

from .asymptotics import (AsymptoticPrediction, match_and_measure,
                          predict_discrete, predict_window, rate_regress)
from .jacobi_barrier import (Branch, DiscreteBarrier, DiscreteEigenpoint,
                             birman_schwinger_det, char_poly,
                             chebyshev_det_form, discrete_spectrum, k_from_z)
from .lt_functionals import (ScanRow, SumSpec, dist_to_band,
                             dist_to_halfline, scan_continuous, scan_discrete,
                             sum_band_powers, sum_tau_regularized,
                             sum_weighted)
from .numeric_core import (Rectangle, RootSet, SparsePolynomial, chebyshev_U,
                           count_zeros, evaluate, newton_refine,
                           solve_polynomial)
from .schrodinger_barrier import (ContinuousBarrier, ContinuousEigenpoint,
                                  SeedWindow, admissible, char_residual,
                                  continuous_spectrum, eigenfunction_matching,
                                  reduced_residual, reduced_residual_other,
                                  rescale_to_tilde, seed_mu, solve_char_direct,
                                  window_j_range)
