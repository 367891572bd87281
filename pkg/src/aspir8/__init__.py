"""1D blood flow in a vessel with an inserted aspiration catheter.

Finite-volume solver with a relaxation-based Riemann solver for the coupling
problem at the catheter tip.  All quantities are in CGS units.
"""

from .boundary import (
    BoundarySpec,
    FixedVelocity,
    InletPressure,
    Neumann,
    Reflection,
)
from .coupling import (
    CouplingData,
    CouplingFailure,
    TraceData,
    device_boundary_velocity,
    riemann_solve,
    solve_area_coupling,
    solve_velocity_coupling,
)
from .experiments import (
    ConfigError,
    ExperimentConfig,
    Snapshot,
    build_experiment,
    default_config,
    load_config,
    parse_config,
    run_experiment,
)
from .kernels import BACKEND
from .physio import (
    CatheterConfig,
    Side,
    VesselParams,
    inverse_pressure,
    pressure,
    wave_speed,
)
from .scheme import (
    Grid,
    SimState,
    SnapshotObserver,
    StepFailure,
    compute_lambda,
    interface_fluxes,
    interior_fluxes,
    run,
    step,
    traces,
)

__version__ = "0.1.0"
