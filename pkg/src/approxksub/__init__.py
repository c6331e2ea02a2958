"""Greedy maximization of exactly and approximately k-submodular functions."""

from .bounds import Bound, BoundQuery, bound, ratio
from .core import (
    REL_SLACK,
    Assignment,
    BudgetExceededError,
    ConfigError,
    Constraint,
    FunctionObjective,
    GroundSet,
    GroupSize,
    IndividualSize,
    InfeasibleConstraintError,
    KSubError,
    ModularObjective,
    Objective,
    PreconditionError,
    TotalSize,
    is_feasible,
    marginal_gain,
)
from .exact import (
    Limits,
    VerifierReport,
    brute_force_max,
    min_epsilon_as,
    verify_adr_envelope,
    verify_as_envelope,
    verify_k_submodular,
    verify_monotone,
    verify_orthant_submodular,
    verify_pairwise_monotone,
)
from .greedy import (
    GreedyTrace,
    baseline_degree,
    baseline_random,
    greedy,
    greedy_group,
    greedy_is,
    greedy_ts,
    interpolate_is,
    interpolate_ts,
    pad_solution,
)
from .noise import NoiseSpec, NoisyObjective, canonical, make_adr, make_ag_as, make_maxg_as, make_meang_as, make_noisy

__version__ = "0.1.0"
