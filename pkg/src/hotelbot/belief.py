"""Robot belief state: a weighted particle filter over JointState.

The update is weighted (likelihoods are available in closed form) rather
than rejection-based: apply the robot action to every particle, reweight by
the observation likelihood, advance each particle's worker by sampling, then
normalize. Systematic resampling kicks in when the effective sample size
halves; particle deprivation triggers one reinvigoration attempt before
giving up with BeliefCollapse.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from . import _kernels
from ._rng import Rng
from .domain import JointState, Observation, RobotAction, ScenarioSpec

DEPRIVATION_EPS = 1e-12


class EmptyBelief(ValueError):
    """An operation needed particles but the belief has none."""


class BeliefCollapse(RuntimeError):
    """No particle explains the observation, even after reinvigoration."""


Marginals = namedtuple("Marginals", "available assembled types")


@dataclass(frozen=True)
class ParticleBelief:
    """Struct-of-arrays particle set; weights normalized, one shared step."""

    avail: np.ndarray
    asm: np.ndarray
    intent: np.ndarray
    weights: np.ndarray
    n_parts: int
    n_types: int
    step: int = 0

    @property
    def capacity(self) -> int:
        return int(self.avail.shape[0])

    def particles(self) -> Iterator[Tuple[JointState, float]]:
        for i in range(self.capacity):
            yield (
                JointState(int(self.avail[i]), int(self.asm[i]), int(self.intent[i]), self.step),
                float(self.weights[i]),
            )

    def cumulative_weights(self) -> np.ndarray:
        return np.cumsum(self.weights)


def init_belief(spec: ScenarioSpec, K: int, rng: Rng) -> ParticleBelief:
    """K i.i.d. prior particles with uniform weights."""
    if K < 1:
        raise ValueError(f"belief capacity must be positive, got {K}")
    avail = np.empty(K, np.int64)
    asm = np.empty(K, np.int64)
    intent = np.empty(K, np.int64)
    fixed = -1 if spec.intent_index is None else spec.intent_index
    _kernels.init_particles_kernel(
        spec.inventory_probs, spec.n_types, fixed, avail, asm, intent, rng.state
    )
    weights = np.full(K, 1.0 / K)
    return ParticleBelief(avail, asm, intent, weights, spec.n_parts, spec.n_types, step=0)


def _resample(
    avail: np.ndarray, asm: np.ndarray, intent: np.ndarray, weights: np.ndarray, rng: Rng
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    idx = np.empty(weights.shape[0], np.int64)
    _kernels.systematic_resample_kernel(weights, idx, rng.state)
    uniform = np.full(weights.shape[0], 1.0 / weights.shape[0])
    return avail[idx], asm[idx], intent[idx], uniform


def belief_update(
    b: ParticleBelief, a: RobotAction, o: Observation, spec: ScenarioSpec, rng: Rng
) -> ParticleBelief:
    """Bayes update for (action, observation); returns a new belief."""
    if b.capacity == 0:
        raise EmptyBelief("cannot update an empty belief")
    if not o.matches_action(a):
        raise ValueError(f"observation {o} cannot result from action {a}")
    a_idx = a.to_index(spec)
    prm = spec.sim_params

    avail = b.avail.copy()
    asm = b.asm.copy()
    intent = b.intent.copy()
    weights = b.weights.copy()
    total = _kernels.update_particles_kernel(
        avail, asm, intent, weights, a_idx, o.outcome_bit, b.step, prm, rng.state
    )

    if total < DEPRIVATION_EPS:
        # deprivation: restart from the pre-update belief, jitter, retry once
        avail, asm, intent, weights = _resample(b.avail, b.asm, b.intent, b.weights, rng)
        _kernels.reinvigorate_kernel(avail, asm, intent, spec.n_parts, spec.n_types, rng.state)
        total = _kernels.update_particles_kernel(
            avail, asm, intent, weights, a_idx, o.outcome_bit, b.step, prm, rng.state
        )
        if total < DEPRIVATION_EPS:
            raise BeliefCollapse(
                f"belief inconsistent with {o} after {a.describe(spec)} at step {b.step}"
            )

    weights /= total
    ess = 1.0 / float(np.sum(weights * weights))
    if ess < b.capacity / 2.0:
        avail, asm, intent, weights = _resample(avail, asm, intent, weights, rng)
    return ParticleBelief(avail, asm, intent, weights, b.n_parts, b.n_types, step=b.step + 1)


def marginals(b: ParticleBelief) -> Marginals:
    """Weighted marginals: P(available), P(assembled) per part; type dist."""
    if b.capacity == 0:
        raise EmptyBelief("marginals of an empty belief")
    bits = np.arange(b.n_parts, dtype=np.int64)
    avail_ind = (b.avail[:, None] >> bits) & 1
    asm_ind = (b.asm[:, None] >> bits) & 1
    w = b.weights
    available = avail_ind.astype(np.float64).T @ w
    assembled = asm_ind.astype(np.float64).T @ w
    types = np.zeros(b.n_types)
    np.add.at(types, b.intent, w)
    return Marginals(available, assembled, types)
