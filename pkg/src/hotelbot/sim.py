"""Generative model G(s, a) -> (s', o, r): the black box the planner samples.

Step order: the robot action lands first (restocks change the table, sensing
costs accrue), the noisy observation is drawn from that post-action world,
then the worker makes one move and the step counter advances.
"""

from __future__ import annotations

from typing import List, Tuple

from . import _kernels
from ._rng import Rng
from .domain import (
    ActionKind,
    CalledOnTerminalState,
    JointState,
    Observation,
    ObsKind,
    RobotAction,
    ScenarioSpec,
    WorkerEvent,
    is_terminal,
)
from .worker import event_from_code


def sample_initial_state(spec: ScenarioSpec, rng: Rng) -> JointState:
    """Random start: Bernoulli inventory, uniform intent unless pinned, empty
    workspace."""
    avail = 0
    for p, q in enumerate(spec.initial_inventory):
        if rng.uniform() < q:
            avail |= 1 << p
    if spec.intent_index is not None:
        intent = spec.intent_index
    else:
        intent = rng.below(spec.n_types)
    return JointState(available=avail, assembled=0, intent=intent, step=0)


def step(
    s: JointState, a: RobotAction, spec: ScenarioSpec, rng: Rng
) -> Tuple[JointState, Observation, float, List[WorkerEvent], bool]:
    """One joint step; returns (next, observation, reward, events, terminal)."""
    if is_terminal(s, spec):
        raise CalledOnTerminalState("step on terminal state")
    avail, asm, stp, obs_bit, r, code, part, terminal = _kernels.transition(
        int(s.available),
        int(s.assembled),
        int(s.intent),
        int(s.step),
        a.to_index(spec),
        spec.sim_params,
        rng.state,
    )
    nxt = JointState(int(avail), int(asm), s.intent, int(stp))
    obs = Observation.from_outcome(a, int(obs_bit))
    events = [event_from_code(code, part)]
    return nxt, obs, float(r), events, bool(terminal)


def sample_observation(
    a: RobotAction, s_post: JointState, spec: ScenarioSpec, rng: Rng
) -> Observation:
    """Draw the noisy observation for action a in the post-action state."""
    bit = _kernels.sample_obs_bit(
        int(s_post.available), int(s_post.assembled), a.to_index(spec), spec.sim_params, rng.state
    )
    return Observation.from_outcome(a, int(bit))


def observation_likelihood(
    o: Observation, a: RobotAction, s_post: JointState, spec: ScenarioSpec
) -> float:
    """Exact density of sample_observation; 0 for kind/part mismatches."""
    if not o.matches_action(a):
        return 0.0
    if a.kind in (ActionKind.RESTOCK, ActionKind.WAIT):
        return 1.0
    return float(
        _kernels.likelihood_bit(
            int(s_post.available),
            int(s_post.assembled),
            a.to_index(spec),
            o.outcome_bit,
            spec.sim_params,
        )
    )
