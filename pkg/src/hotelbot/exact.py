"""Exact Bayes filter by exhaustive enumeration; verification oracle.

Only feasible on tiny domains: each part carries a ternary status digit
(0 absent, 1 available, 2 assembled), so the state space is
n_types * 3**n_parts. The worker's stochasticity is marginalized through an
analytic transition matrix instead of sampling, which makes the posterior
exact. Mirrors the particle filter's ordering: robot action, observation
reweighting, worker move, all per history entry.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .belief import Marginals
from .domain import (
    ActionKind,
    Observation,
    RobotAction,
    ScenarioSpec,
)

MAX_EXACT_PARTS = 5
MAX_EXACT_TYPES = 3


class DomainTooLarge(ValueError):
    """The scenario exceeds what exhaustive enumeration supports."""


class ImpossibleHistory(ValueError):
    """The observation history has probability zero under the model."""


def _check_size(spec: ScenarioSpec) -> None:
    if spec.n_parts > MAX_EXACT_PARTS or spec.n_types > MAX_EXACT_TYPES:
        raise DomainTooLarge(
            f"exact filter supports at most {MAX_EXACT_PARTS} parts and "
            f"{MAX_EXACT_TYPES} hotel types, got {spec.n_parts}/{spec.n_types}"
        )


class ExactPosterior:
    """Dense posterior over (intent, part-status vector)."""

    def __init__(self, spec: ScenarioSpec, dist: np.ndarray, step: int):
        self.spec = spec
        self.dist = dist  # [n_types, 3**n_parts]
        self.step = step

    @property
    def total(self) -> float:
        return float(self.dist.sum())

    def marginals(self) -> Marginals:
        spec = self.spec
        digits = _digit_table(spec.n_parts)  # [n_parts, S]
        mass = self.dist.sum(axis=0)  # [S]
        available = np.array([mass[digits[p] == 1].sum() for p in range(spec.n_parts)])
        assembled = np.array([mass[digits[p] == 2].sum() for p in range(spec.n_parts)])
        types = self.dist.sum(axis=1)
        return Marginals(available, assembled, types)


def _digit_table(n_parts: int) -> np.ndarray:
    """digit_table[p, s] = ternary digit of part p in state index s."""
    size = 3**n_parts
    s = np.arange(size)
    return np.stack([(s // 3**p) % 3 for p in range(n_parts)])


def _prior(spec: ScenarioSpec) -> np.ndarray:
    vec = np.array([1.0])
    for q in spec.initial_inventory:
        vec = np.kron(np.array([1.0 - q, q, 0.0]), vec)
    dist = np.zeros((spec.n_types, vec.shape[0]))
    if spec.intent_index is not None:
        dist[spec.intent_index] = vec
    else:
        dist[:] = vec / spec.n_types
    return dist


def _restock_map(n_parts: int, part: int) -> np.ndarray:
    """State index map for Restock(part): absent becomes available."""
    digits = _digit_table(n_parts)
    s = np.arange(3**n_parts)
    return np.where(digits[part] == 0, s + 3**part, s)


def _likelihood(spec: ScenarioSpec, a: RobotAction, o: Observation) -> np.ndarray:
    size = 3**spec.n_parts
    if a.kind in (ActionKind.RESTOCK, ActionKind.WAIT):
        return np.ones(size)
    digits = _digit_table(spec.n_parts)
    if a.kind is ActionKind.OBSERVE_INVENTORY:
        truth = digits[a.part] == 1
    else:
        truth = digits[a.part] == 2
    alpha = spec.sensor_accuracy
    return np.where(truth == bool(o.outcome_bit), alpha, 1.0 - alpha)


def _worker_matrix(spec: ScenarioSpec, intent: int) -> np.ndarray:
    """W[s, s'] = P(worker moves status vector s to s') for this intent."""
    n = spec.n_parts
    size = 3**n
    req = int(spec.required_masks[intent])
    p_pause = spec.worker.p_pause
    p_mistake = spec.worker.p_mistake
    W = np.zeros((size, size))
    for s in range(size):
        digits = [(s // 3**p) % 3 for p in range(n)]
        assembled = {p for p in range(n) if digits[p] == 2}
        available = {p for p in range(n) if digits[p] == 1}
        req_set = {p for p in range(n) if (req >> p) & 1}
        if assembled == req_set:
            W[s, s] = 1.0  # complete: absorbing
            continue
        W[s, s] += p_pause
        wrong = assembled - req_set
        if wrong:
            for p in wrong:
                W[s, s - 3**p] += (1.0 - p_pause) / len(wrong)
            continue
        rem = 1.0 - p_pause
        mistakes = available - req_set
        if mistakes:
            for p in mistakes:
                W[s, s + 3**p] += p_mistake / len(mistakes)
            rem -= p_mistake
        progress = available & (req_set - assembled)
        if progress:
            for p in progress:
                W[s, s + 3**p] += rem / len(progress)
        else:
            W[s, s] += rem  # blocked
    return W


def exact_filter(
    spec: ScenarioSpec, history: Sequence[Tuple[RobotAction, Observation]]
) -> ExactPosterior:
    """Exact posterior after the given action/observation history."""
    _check_size(spec)
    dist = _prior(spec)
    workers = [_worker_matrix(spec, t) for t in range(spec.n_types)]
    step = 0
    for a, o in history:
        if not o.matches_action(a):
            raise ValueError(f"observation {o} cannot result from action {a}")
        if a.kind is ActionKind.RESTOCK:
            mapping = _restock_map(spec.n_parts, a.part)
            moved = np.zeros_like(dist)
            for t in range(spec.n_types):
                np.add.at(moved[t], mapping, dist[t])
            dist = moved
        dist = dist * _likelihood(spec, a, o)[None, :]
        total = dist.sum()
        if total <= 0.0:
            raise ImpossibleHistory(f"history has zero probability at step {step}")
        dist /= total
        if step < spec.horizon:
            dist = np.stack([dist[t] @ workers[t] for t in range(spec.n_types)])
        step += 1
    return ExactPosterior(spec, dist, step)
