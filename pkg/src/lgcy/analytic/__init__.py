"""Numeric side: nilpotent complex series, Gamma functions, series and contour integrals."""

from .contour import (
    BandError,
    ContinuationSample,
    ContourSpec,
    MBResult,
    PoleProximityWarning,
    TruncationWarning,
    check_band,
    continuation_sample,
    integrand_Fl,
    left_residue,
    mellin_barnes_integrate,
    mirror_image_numeric,
    residue_sum_left,
)
from .nilpotent import FjrwNumeric, NilpotentComplex, relative_error
from .series import (
    ConvergenceDomainError,
    SeriesResult,
    eval_series,
    gamma_fjrw_class,
    gamma_gw_class,
    hfjrw_closed,
    pf_residual,
)
from .special import (
    EULER_GAMMA,
    PoleError,
    complex_digamma,
    complex_gamma,
    complex_polygamma,
    gamma_nilpotent,
)

__all__ = [
    "BandError",
    "ContinuationSample",
    "ContourSpec",
    "ConvergenceDomainError",
    "EULER_GAMMA",
    "FjrwNumeric",
    "MBResult",
    "NilpotentComplex",
    "PoleError",
    "PoleProximityWarning",
    "SeriesResult",
    "TruncationWarning",
    "check_band",
    "complex_digamma",
    "complex_gamma",
    "complex_polygamma",
    "continuation_sample",
    "eval_series",
    "gamma_fjrw_class",
    "gamma_gw_class",
    "gamma_nilpotent",
    "hfjrw_closed",
    "integrand_Fl",
    "left_residue",
    "mellin_barnes_integrate",
    "mirror_image_numeric",
    "pf_residual",
    "relative_error",
    "residue_sum_left",
]
