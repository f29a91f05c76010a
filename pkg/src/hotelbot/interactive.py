"""Terminal session where a human plays the worker against the robot.

Each turn shows the robot's belief and chosen action, applies the action to
the true state, then asks the human for the worker move. The belief only
ever sees the robot's own observations, so the human can watch it converge
on their intent.
"""

from __future__ import annotations

from typing import Callable, Optional

from . import _kernels
from ._rng import Rng, derive_seed
from .belief import BeliefCollapse, belief_update, init_belief, marginals
from .domain import (
    ActionKind,
    JointState,
    Observation,
    ScenarioSpec,
    is_complete,
    is_terminal,
)
from .planner import Planner, PlannerConfig
from .sim import sample_initial_state, sample_observation

PROMPT = "worker move (assemble <part> | remove <part> | pause | quit): "


def _format_marginals(b, spec: ScenarioSpec) -> str:
    m = marginals(b)
    avail = " ".join(f"{spec.labels[p]}={m.available[p]:.2f}" for p in range(spec.n_parts))
    asm = " ".join(f"{spec.labels[p]}={m.assembled[p]:.2f}" for p in range(spec.n_parts))
    types = " ".join(
        f"{t.name}={m.types[i]:.2f}" for i, t in enumerate(spec.hotel_types)
    )
    return f"  P(available): {avail}\n  P(assembled): {asm}\n  P(type): {types}"


def _parse_move(line: str, spec: ScenarioSpec) -> Optional[tuple]:
    words = line.strip().lower().split()
    if not words:
        return None
    if words[0] in ("quit", "q", "exit"):
        return ("quit", None)
    if words[0] == "pause":
        return ("pause", None)
    if words[0] in ("assemble", "remove") and len(words) == 2:
        if words[1] not in spec.label_index:
            return None
        return (words[0], spec.label_index[words[1]])
    return None


def interactive_session(
    spec: ScenarioSpec,
    cfg: PlannerConfig,
    seed: int = 0,
    input_fn: Callable[[str], str] = input,
    output_fn: Callable[[str], None] = print,
) -> float:
    """Run the loop until terminal or quit; returns the discounted return."""
    rng_env = Rng(derive_seed(seed, "env"))
    rng_belief = Rng(derive_seed(seed, "belief"))
    rng_plan = Rng(derive_seed(seed, "plan"))

    s = sample_initial_state(spec, rng_env)
    b = init_belief(spec, cfg.belief_size, rng_belief)
    planner = Planner(spec, cfg, rng_plan)
    prm = spec.sim_params
    rewards = spec.rewards

    intent_name = spec.hotel_types[s.intent].name
    output_fn(f"you are the worker; your hotel type is {intent_name!r}")
    output_fn(f"inventory: {sorted(spec.labels_of(s.available)) or 'empty'}")

    total = 0.0
    while not is_terminal(s, spec):
        output_fn(f"\n-- step {s.step} --")
        output_fn(_format_marginals(b, spec))
        a = planner.plan(b)
        output_fn(f"robot: {a.describe(spec)}")

        avail2, robot_r = _kernels.robot_apply(
            s.available, s.assembled, s.intent, a.to_index(spec), prm
        )
        s_post = JointState(int(avail2), s.assembled, s.intent, s.step)
        o = sample_observation(a, s_post, spec, rng_env)
        output_fn(f"robot observes: {o.kind.value}" + ("" if o.part is None else f"({spec.labels[o.part]})"))

        move = None
        while move is None:
            move = _parse_move(input_fn(PROMPT), spec)
            if move is None:
                output_fn("unrecognized move")
                continue
            kind, p = move
            if kind == "assemble" and not (s_post.available >> p) & 1:
                output_fn(f"{spec.labels[p]} is not in the inventory")
                move = None
            elif kind == "remove" and not (s_post.assembled >> p) & 1:
                output_fn(f"{spec.labels[p]} is not assembled")
                move = None

        kind, p = move
        if kind == "quit":
            break
        worker_r = 0.0
        avail3, asm3 = s_post.available, s_post.assembled
        if kind == "assemble":
            avail3 &= ~(1 << p)
            asm3 |= 1 << p
            if (spec.required_masks[s.intent] >> p) & 1:
                worker_r += rewards.worker_assembled
                if asm3 == int(spec.required_masks[s.intent]):
                    worker_r += rewards.hotel_completed
        elif kind == "remove":
            asm3 &= ~(1 << p)
            avail3 |= 1 << p

        r = float(robot_r) + worker_r
        total += spec.discount**s.step * r
        output_fn(f"reward {r:+.1f}")
        s = JointState(int(avail3), int(asm3), s.intent, s.step + 1)
        try:
            b = belief_update(b, a, o, spec, rng_belief)
        except BeliefCollapse:
            output_fn("belief collapsed; ending session")
            break
        planner.advance(a, o)

    if is_complete(s, spec):
        output_fn(f"\nhotel {intent_name!r} completed in {s.step} steps")
    output_fn(f"discounted return: {total:.3f}")
    return total
