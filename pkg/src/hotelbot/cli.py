"""Command line entry points: validate, episode, bench, demo, interactive."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import List, Optional

from .config import resolve_config
from .domain import ScenarioSpec, SpecError, required_parts, validate_spec
from .harness import (
    run_benchmark,
    run_episode,
    summarize,
    timeline_run,
    timeline_summary,
    write_benchmark_csv,
    write_timeline_jsonl,
)
from .interactive import interactive_session
from .planner import PlannerConfig

DESK_BUDGETS = [2**k for k in range(1, 13)]  # 2 .. 4096
FULL_BUDGETS = [2**k for k in range(1, 17)]  # 2 .. 65536
DEFAULT_ACCURACIES = [0.5, 0.65, 0.75, 0.85]


def _parse_floats(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _parse_ints(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _parse_durations(text: str) -> dict:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        if not value:
            raise SpecError(f"durations entry {item!r} must look like kind=seconds")
        out[key.strip()] = float(value)
    return out


def _apply_accuracy(spec: ScenarioSpec, accuracy: Optional[float]) -> ScenarioSpec:
    if accuracy is None:
        return spec
    return validate_spec(replace(spec, sensor_accuracy=accuracy))


def _planner_config(args, default_budget: int = 512) -> PlannerConfig:
    return PlannerConfig(
        budget=args.budget if args.budget is not None else default_budget,
        variant=args.planner,
        belief_size=args.particles,
    )


def _add_common(p: argparse.ArgumentParser, config_default: str) -> None:
    p.add_argument("--config", default=config_default, help="config path or bundled name")
    p.add_argument("--planner", default="baseline", choices=["baseline", "relevance"])
    p.add_argument("--accuracy", type=float, default=None, help="override sensor accuracy")
    p.add_argument("--budget", type=int, default=None, help="simulations per decision")
    p.add_argument("--episodes", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--particles", type=int, default=2000, help="belief particle count")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hotelbot",
        description="Active goal recognition for assistive assembly: "
        "belief tracking and online planning over a noisy-sensor POMDP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="check a scenario config and describe it")
    p_val.add_argument("config", help="config path or bundled name")

    p_ep = sub.add_parser("episode", help="run scripted episodes and summarize returns")
    _add_common(p_ep, "bench_small")

    p_bench = sub.add_parser("bench", help="run the planner x accuracy x budget grid")
    p_bench.add_argument("--config", default="bench_small")
    p_bench.add_argument("--planner", default="baseline,relevance", help="comma list")
    p_bench.add_argument("--accuracy", default=None, help="comma list of accuracies")
    p_bench.add_argument("--budget", default=None, help="comma list of budgets")
    p_bench.add_argument("--episodes", type=int, default=100)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", default="bench.csv")
    p_bench.add_argument("--particles", type=int, default=2000)
    p_bench.add_argument(
        "--full", action="store_true", help="full budget ladder up to 65536 simulations"
    )

    p_demo = sub.add_parser("demo", help="timeline replay of the tabletop scenario")
    _add_common(p_demo, "demo_six")
    p_demo.set_defaults(planner="relevance")
    p_demo.add_argument("--durations", default="", help="kind=seconds, comma separated")

    p_int = sub.add_parser("interactive", help="you play the worker at the terminal")
    _add_common(p_int, "demo_six")
    p_int.set_defaults(planner="relevance")

    return parser


def _cmd_validate(args) -> int:
    spec = resolve_config(args.config)
    print(f"config ok: {len(spec.parts)} parts, {spec.n_types} hotel types")
    print(f"  parts: {', '.join(spec.labels)}")
    print(f"  common: {', '.join(sorted(spec.common_parts))}")
    for i, t in enumerate(spec.hotel_types):
        req = ", ".join(sorted(required_parts(i, spec)))
        print(f"  {t.name}: requires {req}")
    print(
        f"  worker: p_pause={spec.worker.p_pause} p_mistake={spec.worker.p_mistake}; "
        f"sensor accuracy {spec.sensor_accuracy}; horizon {spec.horizon}; "
        f"discount {spec.discount}"
    )
    return 0


def _cmd_episode(args) -> int:
    spec = _apply_accuracy(resolve_config(args.config), args.accuracy)
    cfg = _planner_config(args)
    returns = []
    completed = 0
    for i in range(args.episodes):
        result = run_episode(spec, cfg, seed=args.seed + i)
        returns.append(result.discounted_return)
        completed += 1 if result.completed else 0
        flag = "completed" if result.completed else ("collapsed" if result.collapsed else "timeout")
        print(
            f"episode {i}: return={result.discounted_return:.3f} "
            f"steps={result.steps} {flag}"
        )
    mean, err = summarize(returns)
    print(
        f"mean return {mean:.3f} +/- {err:.3f} (se), "
        f"completion {completed}/{args.episodes}"
    )
    return 0


def _cmd_bench(args) -> int:
    spec = resolve_config(args.config)
    planners = [p.strip() for p in args.planner.split(",") if p.strip()]
    accuracies = _parse_floats(args.accuracy) if args.accuracy else DEFAULT_ACCURACIES
    if args.budget:
        budgets = _parse_ints(args.budget)
    else:
        budgets = FULL_BUDGETS if args.full else DESK_BUDGETS
    rows = run_benchmark(
        spec,
        planners,
        accuracies,
        budgets,
        args.episodes,
        args.seed,
        belief_size=args.particles,
        verbose=True,
    )
    write_benchmark_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_demo(args) -> int:
    spec = _apply_accuracy(resolve_config(args.config), args.accuracy)
    cfg = _planner_config(args, default_budget=4096)
    durations = _parse_durations(args.durations)
    out = args.out or "timeline.jsonl"
    events, result = timeline_run(spec, cfg, args.seed, durations)
    write_timeline_jsonl(events, out)
    stats = timeline_summary(events, result, durations)
    state = "completed" if result.completed else "did not complete"
    print(f"demo episode {state} in {result.steps} steps; return {result.discounted_return:.3f}")
    print(
        f"timeline: {stats['total_seconds']:.0f}s total, "
        f"{stats['search_bring_seconds']:.0f}s search+bring, "
        f"{stats['worker_idle_seconds']:.0f}s worker idle"
    )
    print(f"wrote {len(events)} events to {out}")
    return 0


def _cmd_interactive(args) -> int:
    spec = _apply_accuracy(resolve_config(args.config), args.accuracy)
    cfg = _planner_config(args)
    interactive_session(spec, cfg, seed=args.seed)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "episode": _cmd_episode,
    "bench": _cmd_bench,
    "demo": _cmd_demo,
    "interactive": _cmd_interactive,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SpecError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
