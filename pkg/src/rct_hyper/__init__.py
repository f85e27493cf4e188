"""Zero-balanced Gauss hypergeometric evaluation, cubic and Landen
transformation identity checks, parameter-region classification, and
inequality scanning over parameter grids."""

__version__ = "0.1.0"

from .errors import DomainError, MixedTrendError, TurningPointNotFound
from .special_core import (
    EULER_GAMMA,
    LN_27,
    GammaValue,
    Params,
    beta,
    digamma,
    gamma_value,
    log_gamma,
    r_constant,
)
from .hypergeometric import (
    EvalResult,
    HypParams,
    Method,
    SeriesCoefficients,
    contiguous_check,
    hyp2f1,
    hyp2f1_derivative,
    hyp2f1_one_minus,
    pochhammer,
    zero_balanced_asymptotic,
)
from .rct_transforms import (
    CubicMap,
    VerifyResult,
    cbrt,
    cubic_forward,
    cubic_map,
    run_verification,
    uniform_grid,
    verify_differentiated_rct,
    verify_landen,
    verify_rct1,
    verify_rct2,
)
from .regions import RegionLabel, classify, defining_values, h_sequence, h_star_sequence
from .inequality_lab import (
    CLAIM_IDS,
    ScanReport,
    ScanRow,
    Trend,
    TurningPoint,
    coefficient_quotient,
    default_grid,
    find_turning_point,
    iter_scan,
    j_function,
    quotient_f,
    quotient_g,
    region_expectation,
    sample_region,
    sequence_trend,
    trend_of_values,
    verify_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
