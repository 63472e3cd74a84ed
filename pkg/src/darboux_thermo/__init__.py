"""One-parameter Darboux-deformed quantum oscillator actions and their thermodynamics."""

__version__ = "0.1.0"

from .darboux import (  # noqa: E402
    ActionEvaluator,
    bernoulli_thermal_residual,
    f_particular,
    f_thermal,
    parse_lambda,
    singularity_locus,
)
from .errors import (  # noqa: E402
    ConvergenceError,
    DarbouxThermoError,
    DegenerateCycleError,
    DomainError,
    EvaluationError,
    PreconditionError,
    RangeError,
    SingularityError,
)
from .grid import SeriesGrid  # noqa: E402
from .numerics import Bracket, Tolerance, derivative, find_root, integrate  # noqa: E402
from .thermo import (  # noqa: E402
    CarnotConfig,
    CarnotResult,
    ResistanceModel,
    carnot_efficiency,
    entropy,
    entropy_antiderivative,
    entropy_two_var,
    fdt_spectrum,
    heat_capacity,
    internal_energy,
)
from .zeromode import ZeroModeSeed  # noqa: E402
