"""Render contraction-bound figures from ldpbounds CSV files.

The renderer never recomputes anything: every number comes from the CSV,
which must match the emitting subcommand's schema exactly. Two layouts are
supported: the single-parameter envelope figure (three series over t) and
the bound-comparison figure (our bound solid, the comparison bound dashed,
one color per family-parameter value).

Exit codes: 0 success, 2 schema mismatch, 3 unwritable output.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_OUTPUT = 3

SCHEMAS = {
    "fig1": ["t", "dpi", "linear_sdpi", "nonlinear_sdpi"],
    "fig2a": ["x", "series", "ours", "dasgupta"],
    "fig2b": ["x", "series", "ours", "dasgupta"],
}


class SchemaError(ValueError):
    """The CSV does not match the expected column layout."""


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    figure: str  # fig1 | fig2a | fig2b
    out_path: str
    format: str = "png"  # png | svg


def _read_rows(spec: FigureSpec) -> List[List[float]]:
    try:
        with open(spec.csv_path, newline="") as handle:
            raw = list(csv.reader(handle))
    except OSError as exc:
        raise SchemaError(f"cannot read {spec.csv_path}: {exc}") from exc
    expected = SCHEMAS[spec.figure]
    if not raw or raw[0] != expected:
        found = raw[0] if raw else "nothing"
        raise SchemaError(f"{spec.csv_path}: expected header {expected}, found {found}")
    if len(raw) < 2:
        raise SchemaError(f"{spec.csv_path}: no data rows")
    try:
        return [[float(v) for v in row] for row in raw[1:]]
    except ValueError as exc:
        raise SchemaError(f"{spec.csv_path}: non-numeric cell: {exc}") from exc


def _plot_envelopes(ax, rows: List[List[float]]) -> None:
    ts = [r[0] for r in rows]
    ax.plot(ts, [r[1] for r in rows], label="DPI")
    ax.plot(ts, [r[2] for r in rows], label="Linear SDPI")
    ax.plot(ts, [r[3] for r in rows], label="Non-Linear SDPI")
    ax.set_xlabel("input hockey-stick divergence t")
    ax.set_ylabel("output bound")


def _plot_comparison(ax, rows: List[List[float]], x_label: str) -> None:
    families: Dict[float, List[List[float]]] = {}
    for row in rows:
        families.setdefault(row[1], []).append(row)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for index, (value, group) in enumerate(sorted(families.items())):
        color = colors[index % len(colors)]
        xs = [r[0] for r in group]
        ax.plot(xs, [r[2] for r in group], color=color, linestyle="-", label=f"ours ({value:g})")
        ax.plot(xs, [r[3] for r in group], color=color, linestyle="--", label=f"dasgupta ({value:g})")
    ax.set_xlabel(x_label)
    ax.set_ylabel("KL bound (nats)")


def render(spec: FigureSpec):
    """Draw the requested figure and write it; returns the matplotlib figure."""
    if spec.figure not in SCHEMAS:
        raise SchemaError(f"unknown figure {spec.figure!r}; choose from {sorted(SCHEMAS)}")
    if spec.format not in ("png", "svg"):
        raise SchemaError(f"unknown format {spec.format!r}; choose png or svg")
    rows = _read_rows(spec)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if spec.figure == "fig1":
        _plot_envelopes(ax, rows)
    else:
        _plot_comparison(ax, rows, "lambda (= m)" if spec.figure == "fig2a" else "epsilon")
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.out_path, format=spec.format)
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="figrender", description="Render bound figures from ldpbounds CSV output."
    )
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--figure", required=True, choices=sorted(SCHEMAS))
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--format", choices=("png", "svg"), default="png")
    args = parser.parse_args(argv)

    spec = FigureSpec(csv_path=args.csv, figure=args.figure, out_path=args.out, format=args.format)
    try:
        fig = render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"error: cannot write {spec.out_path}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    plt.close(fig)
    return EXIT_OK


def entrypoint() -> None:  # console_scripts hook
    raise SystemExit(main())
