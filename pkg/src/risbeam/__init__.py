"""Phase-shift code design toolkit for a uni-polarized linear RIS.

The package models the power-domain array factor of an M-element
reflecting surface driven by a phase-shift code, generates classical
polyphase families (Barker, Frank, Chu) alongside randomized and
closed-form baselines, optimizes codes with a continuous genetic
algorithm, and scores everything with deterministic beam metrics and a
Monte-Carlo spectral-efficiency simulation.

Hot kernels run on numba when available; set RISBEAM_BACKEND=numpy to
force the pure-numpy fallback.
"""

from ._kernels import available_backends, default_backend
from ._version import __version__
from .codes import (
    FAMILIES,
    barker,
    barker_sidelobe_ratio_db,
    chu,
    chu_best_q,
    frank,
    max_average,
    random_best,
    reference_code,
)
from .ga import (
    GaConfig,
    GaRun,
    discretization_error_bound,
    fitness,
    lipschitz_constant,
    mutate_clamped,
    run_cga,
    run_multistart,
)
from .metrics import (
    MetricsReport,
    a_min_db,
    avg_pdaf_closed_form,
    bessel_j0,
    metrics_report,
    u_half,
)
from .model import (
    AcfSequence,
    AngularGrid,
    ArrayGeometry,
    ElementPattern,
    InvalidInputError,
    PhaseCode,
    UnsupportedConfigurationError,
    acf,
    element_gain,
    pdaf,
    pdaf_profile,
    pdaf_values,
    retarget,
)
from .sesim import (
    SeBounds,
    SeReport,
    SimScenario,
    link_constant_v,
    run_mcmc,
    scenario_preset,
    se_mean_bounds,
    se_of_ue,
)

__all__ = [
    "AcfSequence",
    "AngularGrid",
    "ArrayGeometry",
    "ElementPattern",
    "FAMILIES",
    "GaConfig",
    "GaRun",
    "InvalidInputError",
    "MetricsReport",
    "PhaseCode",
    "SeBounds",
    "SeReport",
    "SimScenario",
    "UnsupportedConfigurationError",
    "__version__",
    "a_min_db",
    "acf",
    "available_backends",
    "avg_pdaf_closed_form",
    "barker",
    "barker_sidelobe_ratio_db",
    "bessel_j0",
    "chu",
    "chu_best_q",
    "default_backend",
    "discretization_error_bound",
    "element_gain",
    "fitness",
    "frank",
    "link_constant_v",
    "lipschitz_constant",
    "max_average",
    "metrics_report",
    "mutate_clamped",
    "pdaf",
    "pdaf_profile",
    "pdaf_values",
    "random_best",
    "reference_code",
    "retarget",
    "run_cga",
    "run_mcmc",
    "run_multistart",
    "scenario_preset",
    "se_mean_bounds",
    "se_of_ue",
    "u_half",
]
