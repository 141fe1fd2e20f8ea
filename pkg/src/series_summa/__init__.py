"""Orthogonal series expansion, Fejer-type kernel mollification,
generalized summation of trigonometric series, and series solutions of
string, membrane, and Helmholtz boundary value problems."""

from .errors import (
    DegenerateInput,
    DomainError,
    NonConvergence,
    ResonanceError,
    SeriesSummaError,
    UnknownKernel,
    UnknownMethod,
)
from .expressions import compile_expression
from .fourier import (
    ComplexTrigSeries,
    DoubleTrigSeries,
    TrigSeries,
    differentiate_series,
    dirichlet_kernel,
    double_partial_sum,
    double_trig_coefficients,
    from_complex,
    from_json_dict,
    integrate_series,
    parseval_gap,
    partial_sum,
    to_complex,
    to_json_dict,
    trig_coefficients,
)
from .kernels import (
    KernelSpec,
    PeriodicKernel,
    ValidationReport,
    builtin,
    catalog_names,
    check_moments,
    convolve,
    delta_eval,
    kernel_from_dict,
    load_kernel,
    periodic_smooth,
    periodize,
    phi,
    smooth,
    validate,
)
from .orthopoly import (
    associated_legendre,
    chebyshev,
    chebyshev_family,
    check_family,
    eval_series,
    expand,
    gram_schmidt,
    legendre,
    legendre_coefficients,
    legendre_derivative,
    legendre_family,
    legendre_norm_sq,
)
from .pde import (
    HelmholtzProblem,
    HelmholtzSolution,
    MembraneProblem,
    ModalSolution,
    StringProblem,
    helmholtz_green,
    helmholtz_solve,
    membrane_forced,
    membrane_free,
    mode_energies,
    string_forced,
    string_free,
    string_green,
)
from .quadrature import QuadConfig, integrate, integrate_improper, integrate_rect2d
from .summation import (
    GeneralizedSumResult,
    SummationMethod,
    generalized_sum,
    method,
    method_names,
    summed_derivative,
    summed_double,
    summed_partial,
    summed_value,
)

__version__ = "0.1.0"
