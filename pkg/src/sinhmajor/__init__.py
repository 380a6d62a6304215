"""Sinh-ratio matrix means: evaluation, classification, certificates and norm checks."""
from .classifier import (Classification, classify, classify_single, two_factor_criterion)
from .density import combined_density, sinh_ratio_density, reconstruct_log_h
from .exponents import ExponentPair, abs_normalize, combined_pair_tuples, weak_submajorize
from .expander import SinhProductTerm, certify_nonnegative, expand
from .factorizer import Factorization, Quad, SimpleRatio, factorize, quad_factor_check
from .gram import gram_matrix, gram_probe, gram_report, sym_eigen
from .matmeans import ky_fan_norms, mean_apply, singular_values, verify_inequality
from .scalarfn import eval_f, eval_h, eval_mean, sinhc

__version__ = "0.1.0"

__all__ = [
    "Classification", "classify", "classify_single", "two_factor_criterion",
    "combined_density", "sinh_ratio_density", "reconstruct_log_h",
    "ExponentPair", "abs_normalize", "combined_pair_tuples", "weak_submajorize",
    "SinhProductTerm", "certify_nonnegative", "expand",
    "Factorization", "Quad", "SimpleRatio", "factorize", "quad_factor_check",
    "gram_matrix", "gram_probe", "gram_report", "sym_eigen",
    "ky_fan_norms", "mean_apply", "singular_values", "verify_inequality",
    "eval_f", "eval_h", "eval_mean", "sinhc",
]
