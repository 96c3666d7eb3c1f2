"""Simulation of the CTES analogue factoring algorithm."""
from .curlicue import (
    CurlicueCurve,
    CurlicueParams,
    ctes_intensity,
    curlicue_amplitude,
    curlicue_curve,
    curlicue_intensity,
    exact_intensity_at_trial,
    hyperbolic,
)
from .errors import DomainError, ParameterError
from .extractor import (
    Candidate,
    FactorReport,
    candidate_trials,
    classify,
    factor,
    oracle_divisors,
)
from .interferogram import (
    Interferogram,
    RescaledView,
    SamplingConfig,
    SpectralWindow,
    build_grid,
    record,
    rescale,
    safe_step,
)
from .planner import (
    CoverageInterval,
    InterferogramPlan,
    Method,
    coverage_intervals,
    sequence_plan_range,
    sequence_plan_single_N,
    single_plan_method1,
    single_plan_method2,
)

__version__ = "0.1.0"
