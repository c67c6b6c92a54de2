"""Entropy-stable nodal DG solver for 1D/2D special relativistic hydrodynamics."""

from .errors import AdmissibilityError, ConfigError, ConvergenceError, FluxDegeneracyError
from .state import (
    ConservedState,
    EntropyVector,
    PrimitiveState,
    ThermoDerived,
    cons_to_prim,
    entropy,
    entropy_flux,
    entropy_potential,
    entropy_variables,
    is_admissible,
    lorentz_factor,
    max_signal_speed,
    prim_to_cons,
    sound_speed,
    specific_enthalpy,
)
from .sbp import QuadratureRule, SbpMatrices, build_sbp, differentiate, gauss_lobatto, operators
from .fluxes import ec_condition_residual, ec_flux, lf_flux, log_mean, physical_flux
from .grid import DgField, Grid1D, Grid2D, cell_average, node_coordinate, project_initial_condition
from .solver import (
    BoundaryKind,
    SolverConfig,
    apply_boundary,
    compute_dt,
    residual_1d,
    residual_2d,
    semidiscrete_entropy_rate,
    total_entropy,
)
from .limiters import LimiterConfig, apply_bounds, apply_tvb, minmod_tvb
from .timestepping import SSP_RK2, SSP_RK3, SspScheme, integrate, scheme_for_degree, ssp_step
from .problems import ProblemSpec, accuracy_test, catalog, isentropic_pulse, riemann_1d, riemann_2d
from .config import RunConfig, parse_config
from .runner import ErrorReport, convergence, run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
