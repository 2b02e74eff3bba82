"""Command-line front end: discretize, reduct, evaluate.

Each subcommand reads a CSV decision table, does its work, and writes to
stdout; diagnostics go to stderr.  Exit status is 0 on success, 1 for
unreadable or invalid input data, and 2 for bad flag values.  JSON output
is canonical (sorted keys, fixed six-decimal floats) so reruns are
byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from .discretize import DEFAULT_MAX_INTERVALS, chimerge, discretize_columns
from .errors import DataError
from .evaluate import CLASSIFIERS, compare
from .jsonout import canonical
from .partition import consistency
from .reduct import run_pipeline
from .table import CATEGORICAL, NUMERIC, DecisionTable, RawColumn, from_columns, parse_columns

ENV_SEED = "RREDUX_SEED"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rredux",
        description="Feature selection for categorical decision tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", required=True, help="path to a CSV file with a header row")
    shared.add_argument("--decision-col", help="decision column name (default: last column)")
    shared.add_argument("--delimiter", default=",", help="CSV delimiter (default: ,)")
    shared.add_argument("--output", choices=("json", "text"), default="text")
    shared.add_argument("--trace", action="store_true", help="include the full pipeline trace")
    shared.add_argument("--drop-missing", action="store_true",
                        help="drop rows with missing cells instead of rejecting the file")
    shared.add_argument("--numeric-cols", metavar="A,B,C",
                        help="comma-separated columns to treat as numeric")
    shared.add_argument("--chi-threshold", type=float,
                        help="ChiMerge stop threshold (default: 0.95 critical value)")
    shared.add_argument("--max-intervals", type=int, default=DEFAULT_MAX_INTERVALS,
                        help="ChiMerge interval cap (default: %(default)s)")

    p_disc = sub.add_parser("discretize", parents=[shared],
                            help="replace numeric columns with ChiMerge interval labels")
    p_disc.add_argument("--emit-cuts", metavar="PATH",
                        help="write the cut points per column to a JSON file")
    p_disc.set_defaults(func=cmd_discretize)

    p_red = sub.add_parser("reduct", parents=[shared],
                           help="compute the single reduct of the table")
    p_red.set_defaults(func=cmd_reduct)

    p_eval = sub.add_parser("evaluate", parents=[shared],
                            help="cross-validate full vs. reduced attribute sets")
    p_eval.add_argument("--folds", type=int, default=5, help="fold count (default: %(default)s)")
    p_eval.add_argument("--seed", type=int,
                        help=f"PRNG seed (default: ${ENV_SEED} or 0)")
    p_eval.add_argument("--classifier", choices=sorted(CLASSIFIERS), default="nb")
    p_eval.set_defaults(func=cmd_evaluate)
    return parser


def _numeric_flags(args) -> tuple[str, ...] | None:
    if args.numeric_cols is None:
        return None
    names = tuple(name.strip() for name in args.numeric_cols.split(",") if name.strip())
    if not names:
        raise ValueError("--numeric-cols given but names no columns")
    return names


def _read_columns(args) -> tuple[list[RawColumn], str]:
    if args.max_intervals < 1:
        raise ValueError("max-intervals must be >= 1")
    with open(args.input, "rb") as source:
        return parse_columns(
            source,
            args.decision_col,
            _numeric_flags(args),
            delimiter=args.delimiter,
            drop_missing=args.drop_missing,
        )


def _encode(columns: list[RawColumn], decision: str, args) -> DecisionTable:
    if any(col.kind == NUMERIC for col in columns):
        table, _ = discretize_columns(
            columns, decision, args.chi_threshold, args.max_intervals
        )
        return table
    return from_columns(columns, decision)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ENV_SEED} must be an integer, got {raw!r}") from None


def _attr_list(attrs) -> str:
    return ", ".join(attrs) if attrs else "-"


def _render_aligned(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]


def _format_blocks(blocks: list[list[str]]) -> str:
    return ", ".join("{" + ", ".join(block) + "}" for block in blocks)


def _element_text(entry: dict) -> str:
    right = entry["right"]
    target = right[0] if len(right) == 1 else "{" + ", ".join(right) + "}"
    text = f"{entry['left']}->{target}"
    if "factor" in entry:
        text += f" {entry['factor']:.6f}"
    return text


def _render_trace(trace: dict) -> list[str]:
    parts = trace["partitions"]
    lines = ["partitions:"]
    lines.append(f"  U/D: {_format_blocks(parts['decision'])}")
    for attr, blocks in parts["plain"].items():
        lines.append(f"  U/{attr}: {_format_blocks(blocks)}")
    for attr, blocks in parts["relative"].items():
        lines.append(f"  U_D/{attr}: {_format_blocks(blocks)}")
    lines.append("delta:")
    lines += [
        f"  {row['source']}->{row['target']} {row['factor']:.6f}"
        for row in trace["delta"]
    ]
    lines.append("ass_selected: " + (
        "; ".join(_element_text(e) for e in trace["ass_selected"]) or "-"))
    avg = trace["avg_factor"]
    lines.append("avg_factor: " + ("-" if avg is None else f"{avg:.6f}"))
    lines.append("ass_filtered: " + (
        "; ".join(_element_text(e) for e in trace["ass_filtered"]) or "-"))
    lines.append("ass_compound: " + (
        "; ".join(_element_text(e) for e in trace["ass_compound"]) or "-"))
    lines.append("iterations:")
    for n, step in enumerate(trace["iterations"], start=1):
        lines.append(
            f"  {n}: select {step['selected']}, delete {_attr_list(step['deleted'])}"
        )
    return lines


def cmd_reduct(args) -> int:
    columns, decision = _read_columns(args)
    result = run_pipeline(_encode(columns, decision, args))
    if args.output == "json":
        payload = {"reduct": list(result.reduct), "isolated": list(result.isolated)}
        if args.trace:
            payload["trace"] = result.trace
        print(canonical(payload))
        return 0
    lines = []
    if args.trace:
        lines += _render_trace(result.trace)
    lines.append(f"reduct: {_attr_list(result.reduct)}")
    lines.append(f"isolated: {_attr_list(result.isolated)}")
    print("\n".join(lines))
    return 0


def cmd_discretize(args) -> int:
    columns, decision = _read_columns(args)
    labels = next(c.cells for c in columns if c.name == decision)
    maps = {}
    converted = []
    for col in columns:
        if col.kind != NUMERIC:
            converted.append(col)
            continue
        imap = chimerge(col.cells, labels, args.chi_threshold, args.max_intervals,
                        attr=col.name)
        maps[col.name] = imap
        converted.append(
            RawColumn(col.name, CATEGORICAL, tuple(imap.label_of(v) for v in col.cells))
        )
    writer = csv.writer(sys.stdout, delimiter=args.delimiter, lineterminator="\n")
    writer.writerow([col.name for col in converted])
    for row in zip(*(col.cells for col in converted)):
        writer.writerow(row)
    if args.emit_cuts:
        payload = {
            attr: {"cut_points": list(imap.cut_points), "labels": list(imap.labels)}
            for attr, imap in maps.items()
        }
        with open(args.emit_cuts, "w", encoding="utf-8") as sidecar:
            sidecar.write(canonical(payload) + "\n")
    return 0


def cmd_evaluate(args) -> int:
    if args.folds < 2:
        raise ValueError("folds must be >= 2")
    seed = _resolve_seed(args)
    columns, decision = _read_columns(args)
    table = _encode(columns, decision, args)
    result = run_pipeline(table)
    full, reduced = compare(table, result.reduct, args.folds, seed, args.classifier)
    sets = {
        "full": (full, consistency(table)),
        "reduced": (reduced, consistency(table, result.reduct)),
    }
    if args.output == "json":
        payload = {
            "classifier": args.classifier,
            "folds": args.folds,
            "seed": seed,
            "reduct": list(result.reduct),
            "isolated": list(result.isolated),
            "delta": full.delta,
        }
        for name, (report, consist) in sets.items():
            payload[name] = {
                "attrs": list(report.attrs),
                "fold_accuracies": list(report.fold_accuracies),
                "mean_accuracy": report.mean_accuracy,
                "consistency": consist,
            }
        if args.trace:
            payload["trace"] = result.trace
        print(canonical(payload))
        return 0
    lines = [
        f"reduct: {_attr_list(result.reduct)}",
        f"isolated: {_attr_list(result.isolated)}",
        f"classifier: {args.classifier}  folds: {args.folds}  seed: {seed}",
    ]
    rows = [["set", "attrs", "mean_accuracy", "consistency"]]
    for name, (report, consist) in sets.items():
        rows.append(
            [name, _attr_list(report.attrs), f"{report.mean_accuracy:.6f}", f"{consist:.6f}"]
        )
    lines += _render_aligned(rows)
    lines.append(f"delta (reduced - full): {full.delta:.6f}")
    print("\n".join(lines))
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
