"""
Closed-form determinants of Toeplitz and Toeplitz-plus-Hankel matrices with
rational symbols, a brute-force matrix oracle, and eigenvalue-locus tools.
"""
from .day_toeplitz import bc_toeplitz_det, bocg_det_toeplitz, day_det, szego_E_toeplitz, szego_G
from .fredholm import alphas, be_det, cauchy_type_det, d_i_det, k_entry, psi_fourier, vanishing_residual
from .matrix_oracle import DenseMatrix, build_hankel, build_th, build_toeplitz, det_lu, eigenvalues
from .scalars import EXACT, FLOAT, GaussianRational, format_scalar, parse_scalar
from .symbol import DayForm, RationalSymbolBC, SymbolError, day_to_bc, fourier_coeff, validate
from .th_formula import e_th, perturb, th_det, th_det_even, th_det_k1

__version__ = "0.1.0"

__all__ = [
    "DayForm",
    "DenseMatrix",
    "EXACT",
    "FLOAT",
    "GaussianRational",
    "RationalSymbolBC",
    "SymbolError",
    "alphas",
    "bc_toeplitz_det",
    "be_det",
    "bocg_det_toeplitz",
    "build_hankel",
    "build_th",
    "build_toeplitz",
    "cauchy_type_det",
    "d_i_det",
    "day_det",
    "day_to_bc",
    "det_lu",
    "e_th",
    "eigenvalues",
    "format_scalar",
    "fourier_coeff",
    "k_entry",
    "parse_scalar",
    "perturb",
    "psi_fourier",
    "szego_E_toeplitz",
    "szego_G",
    "th_det",
    "th_det_even",
    "th_det_k1",
    "validate",
    "vanishing_residual",
]
