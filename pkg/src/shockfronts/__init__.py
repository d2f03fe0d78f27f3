"""Sharp traveling wavefronts for reaction-diffusion equations whose
diffusivity changes sign.

The public surface re-exports the main types and operations of each layer:
model construction and regime classification, admissible jump states, the
reduced z-field, speed selection, profile reconstruction, and the built-in
population-invasion model with closed-form cross-checks.
"""

from .admissible import (AdmissibleSet, StepFront, admissible_set, eta_of,
                         pair_table, step_fronts, zeta_of)
from .biomodel import (BioDerived, BioParams, bio_model, derive, eta_closed,
                       jump_function, speed_interval, summary)
from .errors import (BracketFailure, ConsistencyError, DomainError,
                     IntegrationFailure, NonNegativeExcursion, ParamError,
                     PreconditionError, RegimeError, StructureViolation,
                     WavefrontError)
from .model import ModelSpec, Regime, RegimeClass, build_model, classify
from .modelio import ModelBundle, load_model, model_from_config
from .profile import (ReflectedProfile, ShockProfile, WeakReport,
                      build_profile, characteristic_speeds, reflect_profile,
                      verify_weak)
from .speed import (SpeedBounds, SpeedResult, jump_functional, solve_speed,
                    speed_bounds)
from .zfield import (Branch, ZSolution, collocation_residual, eval_z,
                     solve_lower, solve_upper, z_endpoint_lower,
                     z_endpoint_upper)

__version__ = "0.1.0"
