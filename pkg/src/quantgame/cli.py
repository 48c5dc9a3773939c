"""Command line interface: analyze, correlate, simulate, power, serve."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from quantgame.engine import DisplayMode, GameConfig
from quantgame.logfmt import parse_log
from quantgame.simulate import make_model, power_analysis, simulate_session
from quantgame.stats import (
    aggregate,
    correlation_report,
    pair_summaries,
    render_correlation,
    render_pair_table,
    render_report,
    session_key,
)

STORE_ENV_VAR = "QUANTGAME_STORE"


def _read_sessions(paths, fmt_hint=None):
    sessions = []
    for path in paths:
        text = Path(path).read_text(encoding="utf-8")
        fmt = fmt_hint or ("txt" if path.endswith(".txt") else "csv")
        parsed = parse_log(text, fmt)
        for warning in parsed.warnings:
            print(f"warning: {path}: line {warning.line_no}: {warning.message}",
                  file=sys.stderr)
        if parsed.records:
            sessions.append((session_key(parsed.records), parsed.records))
    return sessions


def cmd_analyze(args):
    sessions = _read_sessions(args.logs)
    fmt = {"md": "markdown", "csv": "csv"}[args.format]
    report = aggregate(sessions, set_size=args.set_size,
                       exact_chance=args.exact_chance,
                       include_flagged=args.include_flagged)
    sys.stdout.write(render_report(report, fmt))
    return 0


def cmd_correlate(args):
    sessions = _read_sessions(args.logs)
    records = [r for _, session in sessions for r in session
               if len(r.values) == 2]
    pairs = pair_summaries(records, include_flagged=args.include_flagged)
    sys.stdout.write(render_pair_table(pairs))
    sys.stdout.write("\n")
    sys.stdout.write(render_correlation(correlation_report(pairs)))
    return 0


def cmd_simulate(args):
    model = make_model(args.model)
    config = GameConfig(mode=DisplayMode(args.mode), set_size=args.set_size,
                        trials_per_game=args.trials)
    result = simulate_session(model, config, n_games=args.games,
                              seed=args.seed)
    out = Path(args.out)
    text = result.txt if out.suffix == ".txt" else result.csv
    out.write_text(text, encoding="utf-8")
    print(f"wrote {len(result.records)} records to {out} "
          f"(model={result.metadata['model']}, seed={result.seed})")
    return 0


def cmd_power(args):
    model = make_model(args.model)
    config = GameConfig(set_size=args.set_size)
    grid = [int(n) for n in args.grid.split(",")]
    points = power_analysis(model, config, grid, alpha=args.alpha,
                            replicates=args.replicates, seed=args.seed)
    print("n_trials,detection_rate,replicates")
    for point in points:
        print(f"{point.n_trials},{point.detection_rate:.4f},{point.replicates}")
    return 0


def cmd_serve(args):
    import uvicorn

    from quantgame.service import create_app

    store = args.store or os.environ.get(STORE_ENV_VAR) or "./quantgame-store"
    uvicorn.run(create_app(store), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantgame",
        description="Quantity-discrimination experiment toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="accuracy/p-value grid from logs")
    p.add_argument("logs", nargs="+")
    p.add_argument("--subject", default=None,
                   help="label only; logs are already per subject")
    p.add_argument("--set-size", type=int, default=2, choices=(2, 3, 4, 5))
    p.add_argument("--group-by", default="session,mode,type",
                   help="grid always includes session, mode, type and total")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--exact-chance", action="store_true",
                   help="use 1/set_size instead of the literal 0.5/0.33/0.25")
    p.add_argument("--include-flagged", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("correlate", help="pair table + Pearson matrix")
    p.add_argument("logs", nargs="+")
    p.add_argument("--subject", default=None)
    p.add_argument("--include-flagged", action="store_true")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("simulate", help="generate a synthetic session log")
    p.add_argument("--model", default="ratio-table",
                   choices=("uniform", "perfect", "ratio-table",
                            "ratio-logistic"))
    p.add_argument("--mode", default="dice",
                   choices=[m.value for m in DisplayMode])
    p.add_argument("--set-size", type=int, default=2)
    p.add_argument("--trials", type=int, default=20,
                   help="trials per game")
    p.add_argument("--games", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("power", help="Monte Carlo detection-rate grid")
    p.add_argument("--model", default="ratio-table",
                   choices=("uniform", "perfect", "ratio-table",
                            "ratio-logistic"))
    p.add_argument("--set-size", type=int, default=2)
    p.add_argument("--grid", default="50,100,200")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("serve", help="run the log-repository service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--store", default=None,
                   help=f"store directory (or ${STORE_ENV_VAR})")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
