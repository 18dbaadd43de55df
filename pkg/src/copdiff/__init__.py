"""Copula numerics: Pickands measures, Extreme Value copulas, pathological
constructions and derivative diagnostics."""

from .core import (
    M, W, Pi, Copula, SampleSet, cdf, kernel_cdf, validate_copula,
    disintegration_residual, kernel_quantile, sample, empirical_copula, make_rng,
)
from .pickands import (
    PickandsMeasure, PickandsFunction, upsilon, measure_cdf, validate_measure,
    cantor_cdf, cantor_integral, d_plus, d_minus, g_a, endpoints_LR, normalize,
    gumbel_function,
)
from .evc import (
    ExtremeValueCopula, evc_from_measure, evc_from_function, gumbel, evc_kernel,
    graph_function, graph_mass, component_masses, support_bounds, jump_size, transpose,
)
from .constructions import (
    ShuffleCopula, CheckerboardCopula, RotationCopula, MixtureCopula, shuffle_map,
    shuffle_cdf, shuffle_kernel, checkerboard, checkerboard_approx, rotation_cdf,
    rotation_kernel, convex_combination,
)
from .analysis import (
    d_inf, d_p, one_sided_partial, nondiff_scan, kernel_derivative_consistency,
    schwarz_check,
)
from .specs import load_copula, parse_copula, dump_copula

__version__ = "0.1.0"
