"""Function-space quantities of planar harmonic mappings given as finite series.

Circle means ``I_p``, the harmonic area function ``A_h``, weighted area integral
means ``M_{p,alpha}``, Hardy and weighted Bergman norms, coefficient bounds and
instance-level checks of the surrounding inequalities.
"""

from .core import (
    GradientPair,
    HarmonicSeries,
    WirtingerJet,
    analytic_completions,
    area_function_exact,
    decompose,
    eval_series,
    gen_family,
    jet,
    parseval_i2,
    real_gradients,
)
from .errors import DivergentMeasure, InvalidAlpha, NonConvergenceWarning, ParseError, SingularPoint
from .quadrature import QuadratureConfig, circle_mean_p, weighted_area_integral, weighted_disk_measure
from .means import area_function, area_mean, bergman_norm, hardy_norm, i_p
from .bounds import ExtremalParams, check_coeff_bounds, coeff_bound_alpha0, coeff_bound_factor, pointwise_bound

__version__ = "0.1.0"
