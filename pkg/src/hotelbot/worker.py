"""Worker task model: one stochastic assembly move per step.

The worker pursues the hidden hotel type: fixes wrong parts first, sometimes
pauses, sometimes grabs a non-required part by mistake, otherwise assembles a
missing required part if one is on the table, and is blocked when none is.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Tuple

from . import _kernels
from ._rng import Rng
from .domain import (
    CalledOnTerminalState,
    JointState,
    ScenarioSpec,
    WorkerEvent,
    WorkerEventKind,
    is_terminal,
)

_EVENT_KINDS = {
    _kernels.EV_PAUSED: WorkerEventKind.PAUSED,
    _kernels.EV_REMOVED: WorkerEventKind.REMOVED,
    _kernels.EV_ASSEMBLED: WorkerEventKind.ASSEMBLED,
    _kernels.EV_BLOCKED: WorkerEventKind.BLOCKED,
    _kernels.EV_COMPLETED: WorkerEventKind.COMPLETED,
}


def event_from_code(code: int, part: int) -> WorkerEvent:
    return WorkerEvent(_EVENT_KINDS[code], part if part >= 0 else None)


def worker_step(
    s: JointState, spec: ScenarioSpec, rng: Rng
) -> Tuple[WorkerEvent, JointState, float]:
    """Advance the worker one move; returns (event, next state, reward delta).

    The step counter is untouched: the generative model owns time. An
    EV_COMPLETED event reports the move that assembled the final part.
    """
    if is_terminal(s, spec):
        raise CalledOnTerminalState("worker_step on terminal state")
    code, part, avail, asm, dr = _kernels.worker_kernel(
        int(s.available), int(s.assembled), int(s.intent), spec.sim_params, rng.state
    )
    nxt = replace(s, available=int(avail), assembled=int(asm))
    return event_from_code(code, part), nxt, float(dr)
