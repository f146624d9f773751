"""Weighted-norm estimates and uncertainty principles for quadratic
time-frequency representations, with a desk-scale numerical verifier."""

from .grid import (DEFAULT_GRID, SCAN_GRID, GridSpec, PhaseSpaceField,
                   SampledSignal, default_battery, fourier_transform,
                   inverse_fourier_transform, make_signal, refine)
from .weights import WeightFunction, builtin_weight, check_weight_conditions, young_conjugate
from .norms import (SetMask, WeightedNormParams, dispersion,
                    epsilon_concentration, weighted_lp_norm, weighted_set_measure)
from .tfr import (CohenKernel, ConventionRegistry, born_jordan, cohen_apply,
                  calibrate_conventions, get_conventions, rihaczek,
                  rihaczek_star, spectrogram, stft, stft_inverse, tau_wigner, wigner)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_GRID", "SCAN_GRID", "GridSpec", "PhaseSpaceField", "SampledSignal",
    "default_battery", "fourier_transform", "inverse_fourier_transform",
    "make_signal", "refine",
    "WeightFunction", "builtin_weight", "check_weight_conditions", "young_conjugate",
    "SetMask", "WeightedNormParams", "dispersion", "epsilon_concentration",
    "weighted_lp_norm", "weighted_set_measure",
    "CohenKernel", "ConventionRegistry", "born_jordan", "cohen_apply",
    "calibrate_conventions", "get_conventions", "rihaczek", "rihaczek_star",
    "spectrogram", "stft", "stft_inverse", "tau_wigner", "wigner",
    "__version__",
]
