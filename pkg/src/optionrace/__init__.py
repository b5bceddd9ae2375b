"""Preemption race with endogenous existential risk: thresholds, policy levers, Monte Carlo."""

from .mechanisms import (
    LiabilitySolution,
    SolverError,
    WarningShotReport,
    critical_private_liability,
    critical_windfall_share,
    published_critical_liability,
    warning_shot,
)
from .model import (
    BeliefState,
    DomainError,
    RaceParameters,
    Region,
    RegionLabel,
    ThresholdSet,
    classify_region,
    compute_thresholds,
    follower_payoff,
    leader_payoff,
    liability_threshold,
    nuclear_threshold,
    preemption_threshold,
    research_time_for_safety,
    safety_probability,
    saviour_premium,
    saviour_threshold,
    suicide_bound_d,
    survival_threshold,
)
from .simulator import (
    EnsembleStats,
    RaceOutcome,
    SimConfig,
    SimulationError,
    breakout_scenario,
    first_crossing,
    run_race,
    simulate_path,
    validate_engine,
)

__version__ = "0.1.0"
