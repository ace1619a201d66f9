"""Femtocell-assisted macro base-station sleeping: coverage probability, SNIR, energy."""

from .controller import DecisionSnapshot, NetworkPowerState, Timeline, decide, run_schedule
from .coverage import (
    CoverageSummary,
    SweepRow,
    bs_off_probability_exact,
    bs_off_probability_simplified,
    monte_carlo_user_in_fap,
    sweep_fap_count,
    user_in_fap_probability,
)
from .energy import EnergyReport, PowerModel, energy_proposed, energy_traditional, report, report_from_timeline
from .errors import (
    DegenerateLayoutError,
    FemtoSleepError,
    InvalidParameterError,
    InvalidScheduleError,
    NoServiceError,
    OutOfCoverageError,
    OutOfModelRangeError,
)
from .layout import (
    CoverageClass,
    MacroCell,
    NetworkLayout,
    Point,
    Station,
    default_layout,
    fap_area,
    locate,
    validate,
)
from .propagation import (
    FemtoLossParams,
    MacroLossParams,
    SnirInputs,
    dbm_to_mw,
    femto_path_loss,
    macro_path_loss,
    mobile_antenna_correction,
    mw_to_dbm,
    snir,
    snir_at_user,
)
from .simkit import ScenarioConfig, SimulationResult, run_simulation, sample_user_positions

__version__ = "0.1.0"
