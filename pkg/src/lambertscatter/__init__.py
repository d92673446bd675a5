"""Above-barrier quantum scattering on the Lambert-W step potential.

A numerics library built in four layers:

* :mod:`~lambertscatter.specfun` -- from-scratch complex special functions,
* :mod:`~lambertscatter.potentials` -- barrier shapes and the Lambert
  coordinate transformation,
* :mod:`~lambertscatter.analytic` -- the exact wavefunction and closed-form
  reflection coefficients,
* :mod:`~lambertscatter.oracle` -- an independent Numerov integrator with
  asymptotic matching that certifies every closed form,
* :mod:`~lambertscatter.heun` -- the bi-confluent machinery behind the
  generalized conditionally integrable barrier,

plus :mod:`~lambertscatter.verify` (the acceptance-check suite) and a CLI
(``lambert-scatter``) for parameter sweeps and figure-data regeneration.

Default units are m = 1/2, hbar = 1, so 2m/hbar^2 = 1 and k = sqrt(E).
"""

from .errors import (
    ConvergenceError,
    DomainError,
    IllConditionedError,
    MatchingError,
    PoleError,
    RegimeError,
)
from .specfun import complex_pow, kummer_m, lambert_w, log_gamma, tricomi_u
from .potentials import (
    GeneralizedBarrier,
    LambertBarrier,
    PhysicsConfig,
    SqrtRatioBarrier,
    StepBarrier,
    TanhBarrier,
    evaluate,
    evaluate_derivative,
    rho,
    z_of_x,
)
from .analytic import (
    BasisCoefficients,
    ReflectionResult,
    ScatterParams,
    WaveNumbers,
    asymptotic_left,
    asymptotic_right,
    basis_functions,
    hypergeom_ode_residual,
    reflection_closed_form,
    reflection_step,
    reflection_tanh,
    reflection_wavenumbers,
    scatter_params,
    small_sigma_expansion,
    wave_numbers,
    wavefunction,
)
from .oracle import (
    Grid,
    OracleConfig,
    SchrodingerSamples,
    default_config,
    extract_reflection,
    integrate_schrodinger,
    schrodinger_residual,
)
from .heun import (
    BiconfluentParams,
    GeneralizedSolutionParams,
    HypergeometricReduction,
    SeriesValue,
    biconfluent_series,
    biconfluent_series_derivatives,
    heun_wavefunction,
    invariant_match,
    map_params,
    reduce_to_hypergeometric,
    w_transform,
    w_transform_derivatives,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "IllConditionedError",
    "MatchingError",
    "PoleError",
    "RegimeError",
    "complex_pow",
    "kummer_m",
    "lambert_w",
    "log_gamma",
    "tricomi_u",
    "GeneralizedBarrier",
    "LambertBarrier",
    "PhysicsConfig",
    "SqrtRatioBarrier",
    "StepBarrier",
    "TanhBarrier",
    "evaluate",
    "evaluate_derivative",
    "rho",
    "z_of_x",
    "BasisCoefficients",
    "ReflectionResult",
    "ScatterParams",
    "WaveNumbers",
    "asymptotic_left",
    "asymptotic_right",
    "basis_functions",
    "hypergeom_ode_residual",
    "reflection_closed_form",
    "reflection_step",
    "reflection_tanh",
    "reflection_wavenumbers",
    "scatter_params",
    "small_sigma_expansion",
    "wave_numbers",
    "wavefunction",
    "Grid",
    "OracleConfig",
    "SchrodingerSamples",
    "default_config",
    "extract_reflection",
    "integrate_schrodinger",
    "schrodinger_residual",
    "BiconfluentParams",
    "GeneralizedSolutionParams",
    "HypergeometricReduction",
    "SeriesValue",
    "biconfluent_series",
    "biconfluent_series_derivatives",
    "heun_wavefunction",
    "invariant_match",
    "map_params",
    "reduce_to_hypergeometric",
    "w_transform",
    "w_transform_derivatives",
    "__version__",
]
