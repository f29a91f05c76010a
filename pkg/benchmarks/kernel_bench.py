"""Hot-path timings: compiled kernels vs the pure-numpy fallback.

Usage: python3 benchmarks/kernel_bench.py [--repeats N]

Times three workloads (generative steps, particle-filter updates, full
planner decisions) in the current process, then re-runs itself with
HOTELBOT_NO_NUMBA=1 in a subprocess and prints both columns.  Each workload
is warmed once before timing so compilation cost is excluded.
"""

import argparse
import json
import os
import subprocess
import sys
import time

from hotelbot import (
    NUMBA_DISABLED,
    PlannerConfig,
    Rng,
    RobotAction,
    belief_update,
    init_belief,
    is_terminal,
    load_bundled,
    sample_initial_state,
    step,
)
from hotelbot.planner import Planner

SPEC = load_bundled("bench_small")


def bench_env_steps(n=50_000):
    rng = Rng(1)
    s = sample_initial_state(SPEC, rng)
    t0 = time.perf_counter()
    for _ in range(n):
        a = RobotAction.from_index(int(rng.below(SPEC.n_actions)), SPEC)
        s, _, _, _, term = step(s, a, SPEC, rng)
        if term:
            s = sample_initial_state(SPEC, rng)
    return (time.perf_counter() - t0) / n


def bench_belief_updates(n=300, particles=2000):
    rng = Rng(2)
    env_rng = Rng(3)
    s = sample_initial_state(SPEC, env_rng)
    b = init_belief(SPEC, particles, rng)
    t0 = time.perf_counter()
    done = 0
    while done < n:
        a = RobotAction.from_index(int(env_rng.below(SPEC.n_actions)), SPEC)
        s, o, _, _, term = step(s, a, SPEC, env_rng)
        if term:
            s = sample_initial_state(SPEC, env_rng)
            b = init_belief(SPEC, particles, rng)
            continue
        b = belief_update(b, a, o, SPEC, rng)
        done += 1
    return (time.perf_counter() - t0) / n


def bench_plan_decisions(n=30, budget=512):
    rng = Rng(4)
    env_rng = Rng(5)
    s = sample_initial_state(SPEC, env_rng)
    b = init_belief(SPEC, 2000, rng)
    planner = Planner(SPEC, PlannerConfig(budget=budget), Rng(6))
    t0 = time.perf_counter()
    for _ in range(n):
        a = planner.plan(b)
        s, o, _, _, term = step(s, a, SPEC, env_rng)
        if term or is_terminal(s, SPEC):
            s = sample_initial_state(SPEC, env_rng)
            b = init_belief(SPEC, 2000, rng)
            planner = Planner(SPEC, PlannerConfig(budget=budget), Rng(6))
            continue
        b = belief_update(b, a, o, SPEC, rng)
        planner.advance(a, o)
    return (time.perf_counter() - t0) / n


WORKLOADS = (
    ("env step", bench_env_steps, dict(n=2_000), dict()),
    ("belief update (K=2000)", bench_belief_updates, dict(n=20), dict()),
    ("plan (budget 512)", bench_plan_decisions, dict(n=3), dict()),
)


def run_all(repeats):
    out = {}
    for name, fn, warm_kwargs, kwargs in WORKLOADS:
        fn(**warm_kwargs)  # warm: triggers jit compilation when numba is on
        out[name] = min(fn(**kwargs) for _ in range(repeats))
    return out


def fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.2f} s "


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print raw timings (child mode)")
    args = ap.parse_args(argv)

    mine = run_all(args.repeats)
    if args.json:
        print(json.dumps(mine))
        return 0

    if NUMBA_DISABLED:
        print("HOTELBOT_NO_NUMBA is set; timing the fallback only.\n")
        for name, sec in mine.items():
            print(f"{name:28s} {fmt(sec)}/op")
        return 0

    env = dict(os.environ, HOTELBOT_NO_NUMBA="1")
    child = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json", "--repeats", str(args.repeats)],
        env=env, capture_output=True, text=True, timeout=1800,
    )
    if child.returncode != 0:
        print(child.stderr, file=sys.stderr)
        return 1
    theirs = json.loads(child.stdout)

    print(f"{'workload':28s} {'numba':>12s} {'fallback':>12s} {'speedup':>9s}")
    for name, sec in mine.items():
        other = theirs[name]
        print(f"{name:28s} {fmt(sec)} {fmt(other)} {other / sec:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
