"""Command-line interface: bench, eval, replay, serve."""

from __future__ import annotations

import argparse
import random
import sys

from .bench import CSV_HEADER, compare_backends, run_scaling
from .errors import ConfigurationError, ReplayError
from .evaluate import run_eval


def _add_bench(sub: argparse._SubParsersAction) -> None:
    p = sub.add_parser("bench", help="throughput benchmark over concurrent envs")
    p.add_argument("--envs", type=int, nargs="+", default=[1],
                   help="concurrent environment counts, e.g. --envs 1 2 4")
    p.add_argument("--steps", type=int, default=2000, help="steps per environment")
    p.add_argument("--repr", dest="representation", default="raw",
                   choices=["raw", "float115", "smm", "pixels"])
    p.add_argument("--scenario", default="11_vs_11_medium")
    p.add_argument("--out", default="-", help="CSV output path ('-' = stdout)")
    p.add_argument("--backend", default="", choices=["", "compiled", "python"],
                   help="force a kernel backend in the workers")
    p.add_argument("--compare-backends", action="store_true",
                   help="measure each available kernel backend at n=1")


def _add_eval(sub) -> None:
    p = sub.add_parser("eval", help="bot-vs-bot or replay-vs-bot evaluation")
    p.add_argument("--left", required=True, help="controller spec, e.g. bot:0.95")
    p.add_argument("--right", required=True, help="controller spec, e.g. bot:0.05")
    p.add_argument("--episodes", type=int, default=10)
    p.add_argument("--scenario", default="11_vs_11_medium")
    p.add_argument("--seed", type=int, default=0)


def _add_replay(sub) -> None:
    p = sub.add_parser("replay", help="record or verify a deterministic replay")
    p.add_argument("mode", choices=["record", "verify"])
    p.add_argument("--file", required=True)
    p.add_argument("--scenario", default="11_vs_11_medium")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--actions-seed", type=int, default=0,
                   help="seed for the random action source when recording")


def _add_serve(sub) -> None:
    p = sub.add_parser("serve", help="wire server for the browser viewer")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--scenario", default="11_vs_11_medium")
    p.add_argument("--human-side", choices=["left", "right"], default="left")
    p.add_argument("--replay", default=None,
                   help="serve a recorded replay with pause/seek instead of live play")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--host", default="127.0.0.1")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="minipitch",
        description="deterministic football simulation: benchmark, evaluate, "
                    "replay, serve",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_bench(sub)
    _add_eval(sub)
    _add_replay(sub)
    _add_serve(sub)
    args = parser.parse_args(argv)

    try:
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "replay":
            return _cmd_replay(args)
        if args.command == "serve":
            return _cmd_serve(args)
    except (ConfigurationError, ReplayError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_bench(args) -> int:
    if args.compare_backends:
        rows = compare_backends(args.steps, args.representation, args.scenario)
        print(CSV_HEADER + ",backend")
        for name, row in sorted(rows.items()):
            print(f"{row.csv()},{name}")
        return 0
    report = run_scaling(args.envs, args.steps, args.representation,
                         args.scenario, backend=args.backend)
    text = report.csv()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.out}")
    return 0


def _cmd_eval(args) -> int:
    result = run_eval(args.left, args.right, args.episodes, args.scenario,
                      seed=args.seed)
    print(f"{args.left} vs {args.right} on {args.scenario}: {result}")
    return 0


def _cmd_replay(args) -> int:
    from .env import EnvOptions, create_environment
    from .replay import record_episode, verify_replay

    if args.mode == "record":
        env = create_environment(args.scenario, EnvOptions(seed=args.seed))
        n_actions = sum(env.controlled_counts())
        rng = random.Random(args.actions_seed)

        def source(step_index, observations):
            return [rng.randrange(19) for _ in range(n_actions)]

        recording = record_episode(env, source, args.file)
        print(f"recorded {recording.steps} steps to {args.file} "
              f"({len(recording.checkpoints)} checkpoints)")
        return 0

    verdict = verify_replay(args.file)
    print(f"{args.file}: {verdict}")
    return 0 if verdict.ok else 1


def _cmd_serve(args) -> int:
    try:
        import uvicorn
    except ImportError:
        print("error: serving needs the 'serve' extra (pip install minipitch[serve])",
              file=sys.stderr)
        return 2
    from .server import build_app

    app = build_app(scenario=args.scenario, human_side=args.human_side,
                    replay_path=args.replay, seed=args.seed)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
