"""Command-line front end: run, compare, and generate subcommands."""

from __future__ import annotations

import argparse
import sys

from .engine import ALGORITHMS, EngineConfig, JoinEngine
from .harness import (
    PROFILES,
    compare_engines,
    generate_stream,
    load_events,
    run_engine,
    write_comparison_csv,
    write_metrics_csv,
    write_snapshots,
    write_stream,
)
from .records import StreamFormatError
from .similarity import SimilarityKind

SIM_NAMES = tuple(kind.value for kind in SimilarityKind)


def _add_engine_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", action="append", required=True,
                        help="stream file; pass twice for a two-stream join")
    parser.add_argument("--k", type=int, default=10)
    parser.add_argument("--window-secs", type=float, default=60.0)
    parser.add_argument("--sim", choices=SIM_NAMES, default="jaccard")
    parser.add_argument("--mode", choices=("self-join", "rr-join"), default=None,
                        help="inferred from the number of inputs when omitted")


def _resolve_mode(args: argparse.Namespace) -> str:
    inputs = args.input
    mode = args.mode or ("rr-join" if len(inputs) == 2 else "self-join")
    if mode == "rr-join" and len(inputs) != 2:
        raise SystemExit("error: rr-join requires exactly two --input streams")
    if mode == "self-join" and len(inputs) != 1:
        raise SystemExit("error: self-join takes exactly one --input stream")
    return mode


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streamtopk",
        description="Continuous top-k set-similarity join over sliding windows.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one engine over a stream")
    _add_engine_args(run)
    run.add_argument("--algo", choices=ALGORITHMS, default="swoop")
    run.add_argument("--metrics-out", default=None,
                     help="write the metrics CSV here (default: stdout)")
    run.add_argument("--snapshot-out", default=None,
                     help="write sampled top-k snapshots to this file")
    run.add_argument("--snapshot-every", type=int, default=1,
                     help="snapshot sampling period in events")

    cmp_parser = sub.add_parser(
        "compare", help="run several engines on one stream and check agreement")
    _add_engine_args(cmp_parser)
    cmp_parser.add_argument("--algos", default="base,swoop,swoop-noopt",
                            help="comma-separated algorithm list")
    cmp_parser.add_argument("--metrics-out", default=None,
                            help="write the side-by-side CSV here (default: stdout)")

    gen = sub.add_parser("generate", help="write a synthetic stream file")
    gen.add_argument("--profile", choices=PROFILES, default="uniform")
    gen.add_argument("--events", type=int, required=True)
    gen.add_argument("--universe", type=int, default=1000)
    gen.add_argument("--set-size", default="4:8",
                     help="token count per set, as N or LO:HI")
    gen.add_argument("--rate", type=float, default=1.0,
                     help="sets per second (fixed spacing)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--zipf-exponent", type=float, default=1.2)
    gen.add_argument("--out", required=True)
    return parser


def _parse_set_size(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        if sep:
            return int(lo), int(hi)
        return int(lo), int(lo)
    except ValueError:
        raise SystemExit(f"error: bad --set-size {text!r}") from None


def _cmd_run(args: argparse.Namespace) -> int:
    mode = _resolve_mode(args)
    events = load_events(args.input)
    config = EngineConfig(algorithm=args.algo, k=args.k, window=args.window_secs,
                          similarity=SimilarityKind(args.sim), mode=mode)
    snapshot_every = args.snapshot_every if args.snapshot_out else 0
    result = run_engine(JoinEngine(config), events, snapshot_every=snapshot_every)
    if args.snapshot_out:
        with open(args.snapshot_out, "w", encoding="utf-8") as handle:
            write_snapshots(handle, result.snapshots)
    if args.metrics_out:
        with open(args.metrics_out, "w", encoding="utf-8") as handle:
            write_metrics_csv(handle, [result.metrics])
    else:
        write_metrics_csv(sys.stdout, [result.metrics])
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    mode = _resolve_mode(args)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for algo in algos:
        if algo not in ALGORITHMS:
            raise SystemExit(f"error: unknown algorithm {algo!r}")
    if not algos:
        raise SystemExit("error: --algos must name at least one algorithm")
    events = load_events(args.input)
    engines = {}
    for algo in algos:
        config = EngineConfig(algorithm=algo, k=args.k, window=args.window_secs,
                              similarity=SimilarityKind(args.sim), mode=mode)
        engines[algo] = JoinEngine(config)
    outcome = compare_engines(engines, events)
    if args.metrics_out:
        with open(args.metrics_out, "w", encoding="utf-8") as handle:
            write_comparison_csv(handle, outcome)
    else:
        write_comparison_csv(sys.stdout, outcome)
    if not outcome.snapshots_match:
        print(f"result mismatch: {outcome.mismatch}", file=sys.stderr)
        return 1
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    lines = generate_stream(
        profile=args.profile,
        events=args.events,
        universe=args.universe,
        set_size=_parse_set_size(args.set_size),
        rate=args.rate,
        seed=args.seed,
        zipf_exponent=args.zipf_exponent,
    )
    write_stream(args.out, lines)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_generate(args)
    except StreamFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
