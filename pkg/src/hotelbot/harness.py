"""Episode execution, benchmark grids, timeline replay and file formats.

Seeds are split with a stable hash so every episode and every grid cell can
be reproduced in isolation: cell seeds depend only on (master seed, planner,
accuracy, budget, episode index), never on execution order.
"""

from __future__ import annotations

import csv
import json
import math
import sys
from collections import namedtuple
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ._rng import Rng, derive_seed
from .belief import BeliefCollapse, belief_update, init_belief
from .domain import (
    ActionKind,
    ScenarioSpec,
    WorkerEventKind,
    is_complete,
    validate_spec,
)
from .planner import Planner, PlannerConfig
from .sim import sample_initial_state, step


class EmptyInput(ValueError):
    """A statistic was requested over zero samples."""


LogEntry = namedtuple("LogEntry", "step action observation events reward")


@dataclass(frozen=True)
class EpisodeResult:
    discounted_return: float
    undiscounted_return: float
    steps: int
    completed: bool
    event_log: tuple
    collapsed: bool = False  # belief died; episode recorded as failed


@dataclass(frozen=True)
class BenchmarkRow:
    planner: str
    accuracy: float
    budget: int
    episodes: int
    mean_return: float
    std_err: float
    completion_rate: float


@dataclass(frozen=True)
class TimelineEvent:
    t: float
    actor: str  # worker | robot
    kind: str  # assemble | remove | search | bring | observe | plan | wait
    part: Optional[str]
    step: int
    reward: float


def summarize(returns: Sequence[float]) -> Tuple[float, float]:
    """Mean and standard error (n-1 denominator; 0 for a single sample)."""
    n = len(returns)
    if n == 0:
        raise EmptyInput("summarize needs at least one sample")
    mean = sum(returns) / n
    if n == 1:
        return mean, 0.0
    var = sum((x - mean) ** 2 for x in returns) / (n - 1)
    return mean, math.sqrt(var / n)


def discounted_return(rewards: Sequence[float], gamma: float) -> float:
    """Sum of gamma^t * r_t over a reward sequence."""
    total = 0.0
    for t, r in enumerate(rewards):
        total += gamma**t * r
    return total


def run_episode(spec: ScenarioSpec, cfg: PlannerConfig, seed: int) -> EpisodeResult:
    """One closed-loop episode: plan, act, observe, update; deterministic."""
    rng_env = Rng(derive_seed(seed, "env"))
    rng_belief = Rng(derive_seed(seed, "belief"))
    rng_plan = Rng(derive_seed(seed, "plan"))

    s = sample_initial_state(spec, rng_env)
    b = init_belief(spec, cfg.belief_size, rng_belief)
    planner = Planner(spec, cfg, rng_plan)

    log: List[LogEntry] = []
    discounted = 0.0
    undiscounted = 0.0
    collapsed = False
    t = 0
    while True:
        a = planner.plan(b)
        s, o, r, events, terminal = step(s, a, spec, rng_env)
        log.append(LogEntry(t, a, o, tuple(events), r))
        discounted += spec.discount**t * r
        undiscounted += r
        t += 1
        if terminal:
            break
        try:
            b = belief_update(b, a, o, spec, rng_belief)
        except BeliefCollapse:
            collapsed = True
            break
        planner.advance(a, o)

    return EpisodeResult(
        discounted_return=discounted,
        undiscounted_return=undiscounted,
        steps=s.step,
        completed=is_complete(s, spec),
        event_log=tuple(log),
        collapsed=collapsed,
    )


def episode_seed(master_seed: int, planner: str, accuracy: float, budget: int, index: int) -> int:
    return derive_seed(master_seed, planner, accuracy, budget, index)


def run_cell(
    spec: ScenarioSpec,
    planner: str,
    accuracy: float,
    budget: int,
    episodes: int,
    master_seed: int,
    belief_size: int = 2000,
) -> BenchmarkRow:
    """All episodes of one grid cell; reproducible in isolation."""
    cell_spec = validate_spec(replace(spec, sensor_accuracy=accuracy))
    cfg = PlannerConfig(budget=budget, variant=planner, belief_size=belief_size)
    returns = []
    completions = 0
    for i in range(episodes):
        result = run_episode(cell_spec, cfg, episode_seed(master_seed, planner, accuracy, budget, i))
        returns.append(result.discounted_return)
        completions += 1 if result.completed else 0
    mean, err = summarize(returns)
    return BenchmarkRow(
        planner=planner,
        accuracy=round(accuracy, 6),
        budget=budget,
        episodes=episodes,
        mean_return=round(mean, 6),
        std_err=round(err, 6),
        completion_rate=round(completions / episodes, 6),
    )


def run_benchmark(
    spec: ScenarioSpec,
    planners: Sequence[str],
    accuracies: Sequence[float],
    budgets: Sequence[int],
    episodes: int,
    master_seed: int,
    belief_size: int = 2000,
    verbose: bool = False,
) -> List[BenchmarkRow]:
    """One BenchmarkRow per (planner, accuracy, budget), in grid order."""
    rows = []
    for planner in planners:
        for accuracy in accuracies:
            for budget in budgets:
                row = run_cell(
                    spec, planner, accuracy, budget, episodes, master_seed, belief_size
                )
                rows.append(row)
                if verbose:
                    print(
                        f"[bench] {planner} acc={accuracy:g} budget={budget}: "
                        f"mean={row.mean_return:.3f} se={row.std_err:.3f} "
                        f"done={row.completion_rate:.2f}",
                        file=sys.stderr,
                    )
    return rows


CSV_HEADER = ("planner", "accuracy", "budget", "episodes", "mean_return", "std_err", "completion_rate")


def write_benchmark_csv(rows: Iterable[BenchmarkRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow(
                [
                    r.planner,
                    f"{r.accuracy:.6f}",
                    r.budget,
                    r.episodes,
                    f"{r.mean_return:.6f}",
                    f"{r.std_err:.6f}",
                    f"{r.completion_rate:.6f}",
                ]
            )


def read_benchmark_csv(path: str) -> List[BenchmarkRow]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        for rec in reader:
            rows.append(
                BenchmarkRow(
                    planner=rec[0],
                    accuracy=float(rec[1]),
                    budget=int(rec[2]),
                    episodes=int(rec[3]),
                    mean_return=float(rec[4]),
                    std_err=float(rec[5]),
                    completion_rate=float(rec[6]),
                )
            )
    return rows


DEFAULT_DURATIONS: Dict[str, float] = {
    "observe": 5.0,
    "plan": 10.0,
    "search": 30.0,
    "bring": 35.0,
    "wait": 5.0,
}
WORKER_INTERVAL = 30.0

_WORKER_TIMELINE_KIND = {
    WorkerEventKind.ASSEMBLED: "assemble",
    WorkerEventKind.COMPLETED: "assemble",
    WorkerEventKind.REMOVED: "remove",
}


def timeline_run(
    spec: ScenarioSpec,
    cfg: PlannerConfig,
    seed: int,
    durations: Optional[Dict[str, float]] = None,
) -> Tuple[List[TimelineEvent], EpisodeResult]:
    """Replay one episode on a wall clock: worker moves every 30 s, robot
    actions take the configured durations; restocks expand to search+bring."""
    durs = dict(DEFAULT_DURATIONS)
    if durations:
        for k, v in durations.items():
            if k not in durs:
                raise ValueError(f"unknown duration kind {k!r}; known: {sorted(durs)}")
            if not v > 0:
                raise ValueError(f"duration for {k!r} must be positive, got {v}")
            durs[k] = float(v)

    result = run_episode(spec, cfg, seed)
    events: List[TimelineEvent] = []
    t_robot = 0.0
    for entry in result.event_log:
        a = entry.action
        part = None if a.part is None else spec.labels[a.part]
        events.append(TimelineEvent(t_robot, "robot", "plan", None, entry.step, 0.0))
        t_robot += durs["plan"]
        if a.kind is ActionKind.RESTOCK:
            events.append(TimelineEvent(t_robot, "robot", "search", part, entry.step, 0.0))
            t_robot += durs["search"]
            events.append(TimelineEvent(t_robot, "robot", "bring", part, entry.step, entry.reward))
            t_robot += durs["bring"]
        elif a.kind is ActionKind.WAIT:
            events.append(TimelineEvent(t_robot, "robot", "wait", None, entry.step, entry.reward))
            t_robot += durs["wait"]
        else:
            events.append(TimelineEvent(t_robot, "robot", "observe", part, entry.step, entry.reward))
            t_robot += durs["observe"]
        for ev in entry.events:
            kind = _WORKER_TIMELINE_KIND.get(ev.kind)
            if kind is None:
                continue
            wpart = None if ev.part is None else spec.labels[ev.part]
            t_worker = WORKER_INTERVAL * (entry.step + 1)
            events.append(TimelineEvent(t_worker, "worker", kind, wpart, entry.step, 0.0))
    return events, result


def timeline_summary(
    events: Sequence[TimelineEvent],
    result: EpisodeResult,
    durations: Optional[Dict[str, float]] = None,
) -> Dict[str, float]:
    """Aggregate wall-clock figures for a timeline (reported, never gated)."""
    durs = dict(DEFAULT_DURATIONS)
    if durations:
        durs.update(durations)
    robot_times = [e.t for e in events if e.actor == "robot"]
    worker_times = [e.t for e in events if e.actor == "worker"]
    total = max(robot_times + worker_times) if events else 0.0
    search_bring = sum(durs[e.kind] for e in events if e.kind in ("search", "bring"))
    worker_busy = WORKER_INTERVAL * len(worker_times)
    worker_span = WORKER_INTERVAL * result.steps
    return {
        "total_seconds": total,
        "search_bring_seconds": search_bring,
        "worker_idle_seconds": max(worker_span - worker_busy, 0.0),
        "steps": float(result.steps),
        "completed": 1.0 if result.completed else 0.0,
    }


def write_timeline_jsonl(events: Iterable[TimelineEvent], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for e in events:
            fh.write(
                json.dumps(
                    {
                        "t": e.t,
                        "actor": e.actor,
                        "kind": e.kind,
                        "part": e.part,
                        "step": e.step,
                        "reward": e.reward,
                    }
                )
                + "\n"
            )
