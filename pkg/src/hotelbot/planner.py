"""Online Monte-Carlo planner: UCB1 tree search over the generative model.

Two variants share the same tree mechanics. The baseline rolls out with
uniformly random actions (standard POMCP). The relevance variant biases
rollout action sampling toward actions that matter for the sampled state's
intent, and seeds the root's action values with belief-weighted bonuses, so
simulations concentrate on plausible restocks and informative observations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from ._rng import Rng
from .belief import EmptyBelief, ParticleBelief, marginals
from .domain import (
    ActionKind,
    JointState,
    RobotAction,
    ScenarioSpec,
)

_VARIANTS = ("baseline", "relevance")
_SELECTIONS = ("max-visits", "max-value")


@dataclass(frozen=True)
class PlannerConfig:
    """Search parameters; discount comes from the scenario."""

    budget: int = 512
    ucb_c: float = 10.0
    max_depth: Optional[int] = None  # None: remaining horizon
    variant: str = "baseline"
    lambda_bonus: float = 2.0
    n_init: int = 1
    final_selection: str = "max-visits"
    belief_size: int = 2000

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError(f"budget must be >= 1, got {self.budget}")
        if not self.ucb_c > 0:
            raise ValueError(f"ucb_c must be positive, got {self.ucb_c}")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError(f"max_depth must be positive, got {self.max_depth}")
        if self.variant not in _VARIANTS:
            raise ValueError(f"variant must be one of {_VARIANTS}, got {self.variant!r}")
        if self.n_init < 0:
            raise ValueError(f"n_init must be non-negative, got {self.n_init}")
        if self.final_selection not in _SELECTIONS:
            raise ValueError(
                f"final_selection must be one of {_SELECTIONS}, got {self.final_selection!r}"
            )
        if self.belief_size < 1:
            raise ValueError(f"belief_size must be >= 1, got {self.belief_size}")


@dataclass
class SearchNode:
    """Plain view of one node's statistics (kernel arrays hold the real tree)."""

    visits: int
    counts: np.ndarray
    values: np.ndarray


def relevance_score(s: JointState, a: RobotAction, spec: ScenarioSpec) -> float:
    """How much an action matters given the concrete state's intent; (0, 1]."""
    return float(
        _kernels.action_score(
            int(s.available), int(s.assembled), int(s.intent), a.to_index(spec), spec.sim_params
        )
    )


def rollout(
    s: JointState, depth: int, spec: ScenarioSpec, cfg: PlannerConfig, rng: Rng
) -> float:
    """Discounted return of one random playout from s, at most depth steps."""
    variant = 1 if cfg.variant == "relevance" else 0
    return float(
        _kernels.rollout_kernel(
            int(s.available),
            int(s.assembled),
            int(s.intent),
            int(s.step),
            int(depth),
            spec.discount,
            variant,
            spec.sim_params,
            rng.state,
        )
    )


def ucb1_select(node: SearchNode, cfg: PlannerConfig, rng: Optional[Rng] = None) -> int:
    """UCB1 argmax over a node's actions; untried first, random ties."""
    if rng is None:
        rng = Rng(0)
    n_actions = node.counts.shape[0]
    n_act = node.counts.reshape(1, n_actions).astype(np.int64)
    q_val = node.values.reshape(1, n_actions).astype(np.float64)
    n_visits = np.array([node.visits], np.int64)
    return int(
        _kernels.select_action(0, n_visits, n_act, q_val, cfg.n_init, cfg.ucb_c, rng.state)
    )


def _type_required_indicator(spec: ScenarioSpec) -> np.ndarray:
    """indicator[t, p] = 1 if part p is required by hotel type t."""
    bits = np.arange(spec.n_parts, dtype=np.int64)
    return ((spec.required_masks[:, None] >> bits) & 1).astype(np.float64)


def root_bonus(
    b: ParticleBelief, a: RobotAction, spec: ScenarioSpec, cfg: PlannerConfig
) -> float:
    """Optimistic initial value for a root action under the current belief."""
    if a.kind is ActionKind.WAIT:
        return 0.0
    m = marginals(b)
    req_ind = _type_required_indicator(spec)
    p = a.part
    if a.kind is ActionKind.RESTOCK:
        p_required = float(m.types @ req_ind[:, p])
        return cfg.lambda_bonus * (1.0 - m.available[p]) * p_required * (1.0 - m.assembled[p])
    # observe actions share one bonus: relevance of checking part p
    p_needed = _joint_required_unassembled(b, spec, p)
    return cfg.lambda_bonus * 0.3 * p_needed


def _joint_required_unassembled(b: ParticleBelief, spec: ScenarioSpec, p: int) -> float:
    req_by_intent = ((spec.required_masks >> p) & 1).astype(np.float64)
    required = req_by_intent[b.intent]
    unassembled = 1.0 - ((b.asm >> p) & 1).astype(np.float64)
    return float(np.sum(b.weights * required * unassembled))


def _root_bonus_vector(
    b: ParticleBelief, spec: ScenarioSpec, cfg: PlannerConfig
) -> np.ndarray:
    """root_bonus for every action index at once."""
    n = spec.n_parts
    out = np.zeros(3 * n + 1)
    m = marginals(b)
    req_ind = _type_required_indicator(spec)
    p_required = m.types @ req_ind  # [n_parts]
    joint = np.array([_joint_required_unassembled(b, spec, p) for p in range(n)])
    out[:n] = cfg.lambda_bonus * 0.3 * joint
    out[n : 2 * n] = out[:n]
    out[2 * n : 3 * n] = (
        cfg.lambda_bonus * (1.0 - m.available) * p_required * (1.0 - m.assembled)
    )
    return out


class Planner:
    """Stateful search over one episode; reuses the tree across decisions."""

    def __init__(self, spec: ScenarioSpec, cfg: PlannerConfig, rng: Rng):
        self.spec = spec
        self.cfg = cfg
        self.rng = rng
        self.node_count = np.zeros(1, np.int64)
        self.root = -1
        self._alloc(cfg.budget + 16)

    def _alloc(self, capacity: int) -> None:
        n_actions = self.spec.n_actions
        self.n_visits = np.zeros(capacity, np.int64)
        self.n_act = np.zeros((capacity, n_actions), np.int64)
        self.q_val = np.zeros((capacity, n_actions), np.float64)
        self.child = np.full((capacity, n_actions, 2), -1, np.int32)

    @property
    def capacity(self) -> int:
        return int(self.n_visits.shape[0])

    def _ensure_capacity(self, needed: int) -> None:
        if needed <= self.capacity:
            return
        new_cap = max(needed, 2 * self.capacity)
        count = int(self.node_count[0])
        old = (self.n_visits, self.n_act, self.q_val, self.child)
        self._alloc(new_cap)
        self.n_visits[:count] = old[0][:count]
        self.n_act[:count] = old[1][:count]
        self.q_val[:count] = old[2][:count]
        self.child[:count] = old[3][:count]

    def reset(self) -> None:
        self.node_count[0] = 0
        self.root = -1

    def _q_bound(self) -> float:
        r_min, r_max = self.spec.step_reward_bounds
        peak = max(abs(r_min), abs(r_max))
        gamma = self.spec.discount
        if gamma < 1.0:
            bound = peak / (1.0 - gamma)
        else:
            bound = peak * self.spec.horizon
        return max(bound, abs(self.cfg.lambda_bonus)) + 1e-9

    def _make_root(self, b: ParticleBelief) -> None:
        self._ensure_capacity(int(self.node_count[0]) + 1)
        nc = int(self.node_count[0])
        self.n_visits[nc] = 0
        self.n_act[nc, :] = self.cfg.n_init
        if self.cfg.variant == "relevance":
            self.q_val[nc, :] = _root_bonus_vector(b, self.spec, self.cfg)
        else:
            self.q_val[nc, :] = 0.0
        self.child[nc, :, :] = -1
        self.node_count[0] = nc + 1
        self.root = nc

    def plan(self, b: ParticleBelief) -> RobotAction:
        """Run cfg.budget simulations and return the chosen root action."""
        if b.capacity == 0:
            raise EmptyBelief("cannot plan on an empty belief")
        remaining = self.spec.horizon - b.step
        if remaining < 1:
            raise ValueError("belief is already at the horizon; nothing to plan")
        max_depth = remaining
        if self.cfg.max_depth is not None:
            max_depth = min(max_depth, self.cfg.max_depth)
        if self.root < 0:
            self._make_root(b)
        self._ensure_capacity(int(self.node_count[0]) + self.cfg.budget + 1)
        variant = 1 if self.cfg.variant == "relevance" else 0
        _kernels.search_kernel(
            b.avail,
            b.asm,
            b.intent,
            b.cumulative_weights(),
            int(b.step),
            self.spec.sim_params,
            self.spec.discount,
            self.cfg.ucb_c,
            int(max_depth),
            int(self.cfg.n_init),
            variant,
            int(self.cfg.budget),
            self._q_bound(),
            self.n_visits,
            self.n_act,
            self.q_val,
            self.child,
            self.node_count,
            self.root,
            self.rng.state,
        )
        return RobotAction.from_index(self._select_final(), self.spec)

    def _select_final(self) -> int:
        if self.cfg.final_selection == "max-visits":
            real = self.n_act[self.root] - self.cfg.n_init
            return int(np.argmax(real))
        return int(np.argmax(self.q_val[self.root]))

    def root_node(self) -> SearchNode:
        """Copy of the current root statistics (for inspection and tests)."""
        return SearchNode(
            visits=int(self.n_visits[self.root]),
            counts=self.n_act[self.root].copy(),
            values=self.q_val[self.root].copy(),
        )

    def advance(self, a: RobotAction, o) -> None:
        """Promote the (action, observation) subtree to the root, or reset."""
        if self.root < 0:
            return
        a_idx = a.to_index(self.spec)
        nxt = int(self.child[self.root, a_idx, o.outcome_bit])
        if nxt < 0:
            self.reset()
            return
        count = int(self.node_count[0])
        n_actions = self.spec.n_actions
        new_visits = np.zeros_like(self.n_visits)
        new_act = np.zeros_like(self.n_act)
        new_q = np.zeros_like(self.q_val)
        new_child = np.full((self.capacity, n_actions, 2), -1, np.int32)
        live = _kernels.compact_tree(
            nxt,
            count,
            self.n_visits,
            self.n_act,
            self.q_val,
            self.child,
            new_visits,
            new_act,
            new_q,
            new_child,
        )
        self.n_visits = new_visits
        self.n_act = new_act
        self.q_val = new_q
        self.child = new_child
        self.node_count[0] = live
        self.root = 0


def plan(b: ParticleBelief, spec: ScenarioSpec, cfg: PlannerConfig, rng: Rng) -> RobotAction:
    """One-shot planning call (fresh tree); see Planner for reuse."""
    return Planner(spec, cfg, rng).plan(b)
