"""Optimal discrimination of Pauli dynamical maps over input states and time."""

from .discrimination import (
    DiscriminationReport,
    Priors,
    brute_force_ent,
    brute_force_no_ent,
    discriminate,
    entanglement_advantage,
    error_prob_ent,
    error_prob_no_ent,
    helstrom,
    r_vector,
)
from .linalg import eigenvalues_hermitian, trace_norm
from .pauli_dynamics import (
    DecayRates,
    apply_channel,
    apply_channel_extended,
    channel_probabilities,
    exponent_vector,
    hadamard4,
    stationary_probabilities,
)
from .scenarios import ScenarioSolution, find_advantage_threshold, solve
from .time_opt import (
    AT_INFINITY,
    OptimizationResult,
    OptimizerConfig,
    StrategyMode,
    curve,
    error_at,
    minimize_error,
)

__version__ = "0.1.0"
