"""Boolean selfdecomposable distributions: transforms, Levy data and SD diagnostics."""

from .catalog import entry, family_ids
from .convolution import boolean_convolve, bp_forward, bp_inverse, free_f_solve, sd_decompose
from .measure_model import GeneratingPair, LevyTriplet, SpectralMeasure, pair_from_triplet, triplet_from_pair
from .sd_analysis import check_boolean_sd, normal_threshold, shift_threshold, unimodality_check
from .transforms import TransformHandle, cauchy, f_transform, k_from_F, stieltjes_invert

__version__ = "0.1.0"

__all__ = [
    "GeneratingPair", "LevyTriplet", "SpectralMeasure", "TransformHandle",
    "boolean_convolve", "bp_forward", "bp_inverse", "cauchy", "check_boolean_sd", "entry",
    "f_transform", "family_ids", "free_f_solve", "k_from_F", "normal_threshold",
    "pair_from_triplet", "sd_decompose", "shift_threshold", "stieltjes_invert",
    "triplet_from_pair", "unimodality_check",
]
