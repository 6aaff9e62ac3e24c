"""Command line front end.

Every subcommand is a thin driver over the library: parse flags, call
the corresponding functions, serialize the result.  Output is written
to stdout or --out, in one of the formats table, csv, json, svg; errors
print a one-line diagnostic on stderr and exit 2 (bad input or domain)
or 3 (I/O failure).  Identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys

from . import montecarlo, oracle, svgplot
from .core import (
    BinarySequence,
    alignment_score,
    build_score_matrix,
    extremal_alignments,
)
from .errors import DomainError, InvalidInputError, ResourceLimitError
from .flip import delta_score
from .stats import theorem_bound

__all__ = ["main"]

_SWEEP_GRID_KEYS = ("n", "delta", "epsilon", "trials", "seed")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _csv_text(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _table_text(pairs: list[tuple[str, object]]) -> str:
    width = max(len(key) for key, _ in pairs)
    lines = [f"{key.ljust(width)}  {_plain(value)}" for key, value in pairs]
    return "\n".join(lines) + "\n"


def _plain(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _grid_table(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> str:
    widths = [len(name) for name in header]
    for row in rows:
        for k, cell in enumerate(row):
            widths[k] = max(widths[k], len(cell))
    lines = ["  ".join(name.ljust(widths[k]) for k, name in enumerate(header))]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[k]) for k, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


def _mask_string(mask: tuple[bool, ...]) -> str:
    return "".join("1" if b else "0" for b in mask)


def _parse_instance(args) -> tuple[BinarySequence, BinarySequence]:
    x = BinarySequence.from_string(args.x)
    y = BinarySequence.from_string(args.y)
    if len(x) >= len(y):
        raise InvalidInputError(
            f"x must be strictly shorter than y, got |x|={len(x)}, |y|={len(y)}"
        )
    return x, y


def _no_svg(fmt: str) -> None:
    if fmt == "svg":
        raise InvalidInputError("this subcommand has no plot; use table, csv, or json")


def _cmd_align(args) -> int:
    x, y = _parse_instance(args)
    _no_svg(args.format)
    pair = extremal_alignments(build_score_matrix(x, y), x, y)
    fields: list[tuple[str, object]] = [
        ("x", x.to_string()),
        ("y", y.to_string()),
        ("m", len(x)),
        ("n", len(y)),
        ("score", pair.score),
        ("lo", pair.lo.to_string()),
        ("hi", pair.hi.to_string()),
        ("nonunique_mask", _mask_string(pair.nonunique)),
        ("nonunique_count", pair.nonunique_count),
    ]
    if args.format == "json":
        _emit(_json_text(dict(fields)), args.out)
    elif args.format == "csv":
        header = tuple(key for key, _ in fields)
        row = tuple(_plain(value) for _, value in fields)
        _emit(_csv_text(header, [row]), args.out)
    else:
        _emit(_table_text(fields), args.out)
    return 0


def _cmd_uniq(args) -> int:
    x, y = _parse_instance(args)
    _no_svg(args.format)
    pair = extremal_alignments(build_score_matrix(x, y), x, y)
    m = len(x)
    fields: list[tuple[str, object]] = [
        ("x", x.to_string()),
        ("y", y.to_string()),
        ("m", m),
        ("n", len(y)),
        ("nonunique_count", pair.nonunique_count),
        ("nonunique_fraction", pair.nonunique_count / m),
        ("nonunique_mask", _mask_string(pair.nonunique)),
        ("epsilon", args.epsilon),
        (
            "threshold_hit",
            None
            if args.epsilon is None
            else pair.nonunique_count >= m * args.epsilon,
        ),
    ]
    if args.format == "json":
        _emit(_json_text(dict(fields)), args.out)
    elif args.format == "csv":
        header = tuple(key for key, _ in fields)
        row = tuple("" if value is None else _plain(value) for _, value in fields)
        _emit(_csv_text(header, [row]), args.out)
    else:
        _emit(_table_text(fields), args.out)
    return 0


def _cmd_flip(args) -> int:
    x, y = _parse_instance(args)
    _no_svg(args.format)
    pair = extremal_alignments(build_score_matrix(x, y), x, y)
    outcome = delta_score(x, y, args.t, pair=pair)
    if args.format == "json":
        payload = {"t": outcome.t, "delta": outcome.delta, "category": outcome.category}
        _emit(_json_text(payload), args.out)
    elif args.format == "csv":
        _emit(_csv_text(("t", "delta", "category"), [outcome.csv_fragment()]), args.out)
    else:
        fields: list[tuple[str, object]] = [
            ("t", outcome.t),
            ("delta", outcome.delta),
            ("category", outcome.category),
            ("score_before", pair.score),
            ("score_after", pair.score + outcome.delta),
        ]
        _emit(_table_text(fields), args.out)
    return 0


def _cmd_bound(args) -> int:
    _no_svg(args.format)
    report = theorem_bound(args.n, args.delta, args.epsilon)
    payload = report.to_dict()
    if args.format == "json":
        _emit(_json_text(payload), args.out)
    elif args.format == "csv":
        header = tuple(payload)
        row = tuple(_plain(payload[key]) for key in header)
        _emit(_csv_text(header, [row]), args.out)
    else:
        _emit(_table_text(list(payload.items())), args.out)
    return 0


def _cmd_oracle_check(args) -> int:
    lines: list[str] = []
    failures = 0
    for n in range(2, args.max_n + 1):
        for m in range(1, n):
            mismatches = _check_all_instances(m, n, args.cap)
            status = "ok" if mismatches == 0 else f"{mismatches} MISMATCHES"
            lines.append(f"m={m} n={n}: {2 ** (m + n)} instances {status}")
            failures += mismatches
    # Deltas where floor(n - delta*n) keeps the counting bound intact
    # for every n in range; smaller deltas can poke above the bound at
    # isolated n because the floor inflates the binomial.
    for delta in (0.25, 0.3, 0.5, 0.8):
        bad = 0
        for n in range(2, 51):
            if not oracle.entropy_bound_check(n, delta).holds:
                bad += 1
        status = "ok" if bad == 0 else f"{bad} VIOLATIONS"
        lines.append(f"count bound delta={delta} n=2..50: {status}")
        failures += bad
    lines.append("all instances pass" if failures == 0 else f"{failures} failures")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if failures == 0 else 1


def _check_all_instances(m: int, n: int, cap: int) -> int:
    mismatches = 0
    for xbits in itertools.product((0, 1), repeat=m):
        x = BinarySequence(xbits)
        for ybits in itertools.product((0, 1), repeat=n):
            y = BinarySequence(ybits)
            best, optimal = oracle.brute_optimal_set(x, y, cap)
            lo = tuple(min(vals) for vals in zip(*(a.images for a in optimal)))
            hi = tuple(max(vals) for vals in zip(*(a.images for a in optimal)))
            pair = extremal_alignments(build_score_matrix(x, y), x, y)
            ok = (
                pair.score == best
                and pair.lo.images == lo
                and pair.hi.images == hi
                and pair.nonunique_count == sum(a != b for a, b in zip(lo, hi))
                and all(
                    alignment_score(x, y, alignment) == best for alignment in optimal
                )
            )
            if not ok:
                mismatches += 1
    return mismatches


def _cmd_mc(args) -> int:
    config = montecarlo.ExperimentConfig(
        n=args.n,
        delta=args.delta,
        epsilon=args.epsilon,
        trials=args.trials,
        seed=args.seed,
        collect_events=args.events,
        collect_statements=args.statements,
    )
    records = montecarlo.run_trials(config, workers=args.threads)
    summary = montecarlo.summarize(config, records)
    if args.per_trial is not None:
        rows = [montecarlo.trial_csv_row(record) for record in records]
        _emit(_csv_text(montecarlo.TRIAL_CSV_HEADER, rows), args.per_trial)
    if args.format == "json":
        _emit(_json_text(summary.to_dict()), args.out)
    elif args.format == "csv":
        _emit(
            _csv_text(
                montecarlo.SUMMARY_CSV_HEADER, [montecarlo.summary_csv_row(summary)]
            ),
            args.out,
        )
    elif args.format == "svg":
        counts = {-1: 0, 0: 0, 1: 0}
        for record in records:
            counts[record.flip.delta] += 1
        bars = [(str(k), float(counts[k])) for k in (-1, 0, 1)]
        _emit(
            svgplot.bar_chart(
                bars,
                title=f"score change histogram (n={config.n}, delta={config.delta})",
                x_label="score change",
                y_label="trials",
            ),
            args.out,
        )
    else:
        fields = list(summary.to_dict().items())
        fields.append(("m", summary.m))
        for category, count in summary.category_counts.items():
            fields.append((f"count_{category}", count))
        if summary.event_rates is not None:
            fields.extend(sorted(summary.event_rates.items()))
        if summary.statement_means is not None:
            fields.extend(summary.statement_means.items())
        _emit(_table_text(fields), args.out)
    return 0


def _merge_sweep_grid(args) -> list[montecarlo.ExperimentConfig]:
    grid: dict = {}
    flags: dict = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                grid = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"config file is not valid JSON: {exc}")
        if not isinstance(grid, dict):
            raise InvalidInputError("config file must hold a JSON object")
        unknown = set(grid) - set(_SWEEP_GRID_KEYS) - {
            "collect_events",
            "collect_statements",
        }
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
    for key in _SWEEP_GRID_KEYS:
        value = getattr(args, key)
        if value is not None:
            flags[key] = value
    axes = []
    for key in _SWEEP_GRID_KEYS:
        if key in flags:
            axes.append([flags[key]])
        elif key in grid:
            value = grid[key]
            axes.append(list(value) if isinstance(value, list) else [value])
        else:
            raise InvalidInputError(
                f"sweep needs {key!r} from --{key} or the config file"
            )
    collect_events = bool(grid.get("collect_events", False)) or args.events
    collect_statements = bool(grid.get("collect_statements", False)) or args.statements
    return [
        montecarlo.ExperimentConfig(
            n=n,
            delta=delta,
            epsilon=epsilon,
            trials=trials,
            seed=seed,
            collect_events=collect_events,
            collect_statements=collect_statements,
        )
        for n, delta, epsilon, trials, seed in itertools.product(*axes)
    ]


def _cmd_sweep(args) -> int:
    configs = _merge_sweep_grid(args)
    summaries = montecarlo.sweep(configs, workers=args.threads)
    rows = [montecarlo.summary_csv_row(summary) for summary in summaries]
    if args.format == "json":
        _emit(_json_text([summary.to_dict() for summary in summaries]), args.out)
    elif args.format == "csv":
        _emit(_csv_text(montecarlo.SUMMARY_CSV_HEADER, rows), args.out)
    elif args.format == "svg":
        points = [
            (summary.config.delta, summary.mean_u_fraction) for summary in summaries
        ]
        points.sort()
        _emit(
            svgplot.line_plot(
                points,
                title="mean nonunique fraction vs delta",
                x_label="delta",
                y_label="mean nonunique fraction",
            ),
            args.out,
        )
    else:
        _emit(_grid_table(montecarlo.SUMMARY_CSV_HEADER, rows), args.out)
    return 0


def _add_format_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--format",
        choices=("table", "csv", "json", "svg"),
        default="table",
        help="output format (default: table)",
    )
    sub.add_argument("--out", default=None, help="write output to this file")


def _add_instance_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--x", required=True, help="0/1 string, the shorter sequence")
    sub.add_argument("--y", required=True, help="0/1 string, the longer sequence")


def _add_model_flags(sub: argparse.ArgumentParser, required: bool) -> None:
    sub.add_argument("--n", type=_positive_int, required=required, help="length of y")
    sub.add_argument(
        "--delta", type=float, required=required, help="gap proportion in (0,1)"
    )
    sub.add_argument(
        "--epsilon",
        type=float,
        required=required,
        help="uniqueness threshold parameter in (0,1)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alignuniq",
        description="Gapped alignment of binary sequences: scores, local "
        "uniqueness, bit-flip experiments, and the probability bound.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("align", help="solve one instance and show the extremal alignments")
    _add_instance_flags(sub)
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_align)

    sub = commands.add_parser("uniq", help="local-uniqueness statistics of one instance")
    _add_instance_flags(sub)
    sub.add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="also report whether the nonunique count reaches m*epsilon",
    )
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_uniq)

    sub = commands.add_parser("flip", help="score change from flipping one position of x")
    _add_instance_flags(sub)
    sub.add_argument("--t", type=_positive_int, required=True, help="1-based position to flip")
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_flip)

    sub = commands.add_parser("oracle-check", help="exhaustive comparison against brute force")
    sub.add_argument(
        "--max-n",
        type=_positive_int,
        default=6,
        help="largest y length to enumerate (default 6, at most 8)",
    )
    sub.add_argument(
        "--cap",
        type=_positive_int,
        default=oracle.DEFAULT_ENUM_CAP,
        help="alignment enumeration cap per instance",
    )
    sub.add_argument("--out", default=None, help="write the report to this file")
    sub.set_defaults(handler=_cmd_oracle_check)

    sub = commands.add_parser("bound", help="evaluate the probability bound")
    _add_model_flags(sub, required=True)
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_bound)

    sub = commands.add_parser("mc", help="Monte Carlo experiment at one parameter point")
    _add_model_flags(sub, required=True)
    sub.add_argument("--trials", type=_positive_int, default=1000, help="number of trials")
    sub.add_argument("--seed", type=int, default=0, help="experiment seed")
    sub.add_argument("--threads", type=_positive_int, default=1, help="worker processes")
    sub.add_argument("--events", action="store_true", help="collect event memberships")
    sub.add_argument(
        "--statements", action="store_true", help="collect per-trial fraction reports"
    )
    sub.add_argument(
        "--per-trial", default=None, help="also write one CSV row per trial to this file"
    )
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_mc)

    sub = commands.add_parser("sweep", help="run a grid of Monte Carlo experiments")
    sub.add_argument("--config", default=None, help="JSON file with grid axes")
    _add_model_flags(sub, required=False)
    sub.add_argument("--trials", type=_positive_int, default=None, help="number of trials")
    sub.add_argument("--seed", type=int, default=None, help="experiment seed")
    sub.add_argument("--threads", type=_positive_int, default=1, help="worker processes")
    sub.add_argument("--events", action="store_true", help="collect event memberships")
    sub.add_argument(
        "--statements", action="store_true", help="collect per-trial fraction reports"
    )
    _add_format_flags(sub)
    sub.set_defaults(handler=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "oracle-check" and args.max_n > 8:
        print("error: --max-n is capped at 8", file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except (InvalidInputError, DomainError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
