"""Faber-Walsh polynomials on compact sets with several components."""

from .faber_walsh import (FaberWalshFamily, SeriesExpansion, acf, affine_covariance_check,
                          chebyshev_star_oracle, faber_relation_check, fw_contour, fw_family,
                          fw_recursion, fw_series, norm_decay_table, polynomial_part_oracle,
                          sup_norm_on_E)
from .lemniscatic import FocusSequence, LemniscaticDomain, abs_U, build_focus_sequence, green_L, \
    level_curve_points
from .maps import ConformalPair, ConvergenceError, pair_for_set, sym_intervals_pair
from .poly import ComplexPolynomial, LaurentAtInfinity
from .sets import set_from_json

__all__ = [
    "ComplexPolynomial", "LaurentAtInfinity", "LemniscaticDomain", "FocusSequence", "abs_U", "green_L",
    "level_curve_points", "build_focus_sequence", "ConformalPair", "ConvergenceError", "pair_for_set",
    "sym_intervals_pair", "FaberWalshFamily", "SeriesExpansion", "fw_recursion", "fw_family", "fw_contour",
    "polynomial_part_oracle", "fw_series", "acf", "sup_norm_on_E", "norm_decay_table", "chebyshev_star_oracle",
    "faber_relation_check", "affine_covariance_check", "set_from_json",
]
