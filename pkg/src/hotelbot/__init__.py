"""Active goal recognition for assistive assembly.

A robot helps a human assemble color-coded insect hotels without being told
which variant the human is building. The package models the joint system as
a POMDP: a stochastic worker policy, noisy part sensing, a particle-filter
belief over inventory/workspace/intent, and an online Monte-Carlo planner
that decides when to look, when to fetch parts, and when to stay out of the
way. Hot loops are numba-compiled with a pure-python fallback
(HOTELBOT_NO_NUMBA=1) that produces bit-identical results.
"""

from ._rng import NUMBA_DISABLED, Rng, derive_seed
from .belief import (
    BeliefCollapse,
    EmptyBelief,
    Marginals,
    ParticleBelief,
    belief_update,
    init_belief,
    marginals,
)
from .config import list_bundled, load_bundled, load_config, loads_config, resolve_config
from .domain import (
    WAIT,
    ActionKind,
    CalledOnTerminalState,
    DisjointnessViolation,
    EmptyRequiredSet,
    HotelType,
    JointState,
    Observation,
    ObsKind,
    PartId,
    ProbabilityOutOfRange,
    RewardTable,
    RobotAction,
    ScenarioSpec,
    SpecError,
    UnknownHotelType,
    UnknownPartReference,
    WorkerEvent,
    WorkerEventKind,
    WorkerParams,
    is_complete,
    is_terminal,
    observe_inventory,
    observe_workspace,
    required_parts,
    restock,
    validate_spec,
)
from .exact import DomainTooLarge, ExactPosterior, ImpossibleHistory, exact_filter
from .harness import (
    BenchmarkRow,
    EmptyInput,
    EpisodeResult,
    TimelineEvent,
    discounted_return,
    read_benchmark_csv,
    run_benchmark,
    run_cell,
    run_episode,
    summarize,
    timeline_run,
    timeline_summary,
    write_benchmark_csv,
    write_timeline_jsonl,
)
from .interactive import interactive_session
from .planner import (
    Planner,
    PlannerConfig,
    SearchNode,
    plan,
    relevance_score,
    rollout,
    root_bonus,
    ucb1_select,
)
from .sim import observation_likelihood, sample_initial_state, sample_observation, step
from .worker import worker_step

__version__ = "0.1.0"

__all__ = [
    "ActionKind",
    "BeliefCollapse",
    "BenchmarkRow",
    "CalledOnTerminalState",
    "DisjointnessViolation",
    "DomainTooLarge",
    "EmptyBelief",
    "EmptyInput",
    "EmptyRequiredSet",
    "EpisodeResult",
    "ExactPosterior",
    "HotelType",
    "ImpossibleHistory",
    "JointState",
    "Marginals",
    "NUMBA_DISABLED",
    "Observation",
    "ObsKind",
    "PartId",
    "ParticleBelief",
    "Planner",
    "PlannerConfig",
    "ProbabilityOutOfRange",
    "RewardTable",
    "Rng",
    "RobotAction",
    "ScenarioSpec",
    "SearchNode",
    "SpecError",
    "TimelineEvent",
    "UnknownHotelType",
    "UnknownPartReference",
    "WAIT",
    "WorkerEvent",
    "WorkerEventKind",
    "WorkerParams",
    "belief_update",
    "derive_seed",
    "exact_filter",
    "init_belief",
    "interactive_session",
    "is_complete",
    "is_terminal",
    "list_bundled",
    "load_bundled",
    "load_config",
    "loads_config",
    "marginals",
    "observation_likelihood",
    "observe_inventory",
    "observe_workspace",
    "plan",
    "read_benchmark_csv",
    "relevance_score",
    "required_parts",
    "resolve_config",
    "restock",
    "rollout",
    "root_bonus",
    "run_benchmark",
    "run_cell",
    "discounted_return",
    "run_episode",
    "sample_initial_state",
    "sample_observation",
    "step",
    "summarize",
    "timeline_run",
    "timeline_summary",
    "ucb1_select",
    "validate_spec",
    "worker_step",
    "write_benchmark_csv",
    "write_timeline_jsonl",
]
