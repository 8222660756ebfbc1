"""Command-line front end.

    hexconvex table  --stat area --max 20 --format csv
    hexconvex series --class orbits --max-area 5
    hexconvex oracle --stat half-perimeter --max 14 --threads 4
    hexconvex verify --max-area 10 --report report.json

Exit status: 0 success, 1 verification mismatch, 2 configuration error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from .group_orbits import TABLE_COLUMNS, SymmetryTable, build_table, table_series, window_for
from .honeycomb_oracle import oracle_census, oracle_table_rows, oracle_window
from .series_core import InvariantViolation, SeriesError
from .symmetry_series import all_fix_series

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_INVARIANT = 0, 1, 2, 3
STATISTICS = ("area", "half-perimeter")
CLASS_LABELS = TABLE_COLUMNS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    statistic: str = "area"
    max_area: int = 0
    max_halfperim: int = 0
    class_selector: str = "all"
    output_format: str = "csv"
    threads: int = 1
    output_path: str | None = None

    def __post_init__(self):
        if self.command in ("table", "oracle") and self.statistic not in STATISTICS:
            raise ConfigError(f"unknown statistic {self.statistic!r}")
        if self.class_selector != "all" and self.class_selector not in CLASS_LABELS:
            raise ConfigError(f"unknown class {self.class_selector!r}; choose from {', '.join(CLASS_LABELS)}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")


# -- formats ------------------------------------------------------------------


def table_to_csv(table: SymmetryTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    writer.writerows(table.rows)
    return buf.getvalue()


def table_from_csv(text: str, statistic: str) -> SymmetryTable:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != ("stat",) + TABLE_COLUMNS:
        raise ValueError(f"unexpected header {header}")
    return SymmetryTable(statistic, [tuple(int(x) for x in row) for row in reader if row])


def table_to_json(table: SymmetryTable) -> str:
    return json.dumps({"statistic": table.statistic, "columns": list(table.header), "rows": [list(r) for r in table.rows]})


def table_to_text(table: SymmetryTable) -> str:
    cells = [table.header] + [tuple(str(x) for x in row) for row in table.rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(table.header))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"


def format_table(table: SymmetryTable, fmt: str) -> str:
    return {"csv": table_to_csv, "json": table_to_json, "text": table_to_text}[fmt](table)


def series_triples(f) -> list[tuple[int, int, int]]:
    return sorted((m.eq, m.et, c) for m, c in f.items())


def format_series(label: str, triples, fmt: str) -> str:
    if fmt == "json":
        nested: dict[str, dict[str, int]] = {}
        for q, t, c in triples:
            nested.setdefault(str(q), {})[str(t)] = c
        return json.dumps({"class": label, "coefficients": nested})
    if fmt == "text":
        return "".join(f"{c} q^{q} t^{t}\n" for q, t, c in triples)
    return "q_deg,t_deg,coef\n" + "".join(f"{q},{t},{c}\n" for q, t, c in triples)


# -- commands -----------------------------------------------------------------


def _hp_limit_for_area(max_area: int) -> int:
    """Largest half-perimeter whose rows are complete when area <= max_area is enumerated."""
    m = 3
    while oracle_window("half-perimeter", m + 1)[0] <= max_area:
        m += 1
    return m


def oracle_table(statistic: str, max_value: int, threads: int) -> SymmetryTable:
    max_area, max_hp = oracle_window(statistic, max_value)
    census = oracle_census(max_area, max_hp, threads=threads)
    first = 1 if statistic == "area" else 3
    return SymmetryTable(statistic, oracle_table_rows(census, statistic, first, max_value))


def run_table(cfg: RunConfig) -> tuple[int, str]:
    if cfg.max_area < 1:
        raise ConfigError("--max must be >= 1")
    return EXIT_OK, format_table(build_table(cfg.statistic, cfg.max_area), cfg.output_format)


def run_oracle(cfg: RunConfig) -> tuple[int, str]:
    if cfg.max_area < 1:
        raise ConfigError("--max must be >= 1")
    return EXIT_OK, format_table(oracle_table(cfg.statistic, cfg.max_area, cfg.threads), cfg.output_format)


def run_series(cfg: RunConfig) -> tuple[int, str]:
    if cfg.max_area < 1:
        raise ConfigError("--max-area must be >= 1")
    bq, bt = window_for("area", cfg.max_area)
    if cfg.max_halfperim:
        bt = cfg.max_halfperim
    cols = table_series(all_fix_series(bq, bt))
    labels = CLASS_LABELS if cfg.class_selector == "all" else (cfg.class_selector,)
    out = []
    for label in labels:
        if len(labels) > 1:
            out.append(f"# {label}\n")
        out.append(format_series(label, series_triples(cols[label]), cfg.output_format))
    return EXIT_OK, "".join(out)


def compare_tables(expected: SymmetryTable, got: SymmetryTable) -> list[dict]:
    """One record per compared cell; ``expected`` is the oracle side."""
    cells = []
    got_rows = {row[0]: row for row in got.rows}
    for row in expected.rows:
        other = got_rows.get(row[0])
        for i, column in enumerate(TABLE_COLUMNS, start=1):
            value = None if other is None else other[i]
            cells.append({
                "statistic": expected.statistic, "value": row[0], "column": column,
                "expected": row[i], "got": value, "match": value == row[i],
            })
    return cells


def verify_report(max_area: int, max_halfperim: int | None, threads: int) -> dict:
    if max_area < 1:
        raise ConfigError("--max-area must be >= 1")
    hp_max = max_halfperim or _hp_limit_for_area(max_area)
    if hp_max < 3:
        raise ConfigError("--max-halfperim must be >= 3")
    cells = []
    for statistic, top in (("area", max_area), ("half-perimeter", hp_max)):
        cells += compare_tables(oracle_table(statistic, top, threads), build_table(statistic, top))
    mismatches = [c for c in cells if not c["match"]]
    return {
        "max_area": max_area, "max_halfperim": hp_max,
        "compared": len(cells), "mismatches": len(mismatches), "ok": not mismatches,
        "cells": cells,
    }


def run_verify(cfg: RunConfig) -> tuple[int, str]:
    report = verify_report(cfg.max_area, cfg.max_halfperim or None, cfg.threads)
    for cell in report["cells"]:
        if not cell["match"]:
            print(
                f"mismatch: {cell['statistic']} {cell['value']} column {cell['column']}: "
                f"oracle {cell['expected']}, series {cell['got']}",
                file=sys.stderr,
            )
    return (EXIT_OK if report["ok"] else EXIT_MISMATCH), json.dumps(report, indent=1) + "\n"


COMMANDS = {"table": run_table, "oracle": run_oracle, "series": run_series, "verify": run_verify}


# -- argument parsing ---------------------------------------------------------


def _default_threads() -> int:
    raw = os.environ.get("HEXCONVEX_THREADS", "1")
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"HEXCONVEX_THREADS must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexconvex", description="Convex hexagonal polyomino enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json", "text")):
        p.add_argument("--format", dest="output_format", choices=formats, default=formats[0])
        p.add_argument("--threads", type=int, default=None, help="worker processes (default: $HEXCONVEX_THREADS or 1)")
        p.add_argument("-o", "--output", dest="output_path", default=None)

    for name, text in (("table", "symmetry-class table from the series"), ("oracle", "the same table by enumeration")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--stat", dest="statistic", choices=STATISTICS, default="area")
        p.add_argument("--max", dest="max_area", type=int, required=True)
        common(p)

    p = sub.add_parser("series", help="(area, half-perimeter) coefficients of one class")
    p.add_argument("--class", dest="class_selector", default="all")
    p.add_argument("--max-area", type=int, required=True)
    p.add_argument("--max-halfperim", type=int, default=0)
    common(p)

    p = sub.add_parser("verify", help="compare series tables with the enumeration")
    p.add_argument("--max-area", type=int, required=True)
    p.add_argument("--max-halfperim", type=int, default=0)
    p.add_argument("--report", dest="output_path", default=None, help="write the JSON report here")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(output_format="json")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__ and v is not None}
    if args.threads is None:
        fields["threads"] = _default_threads()
    return RunConfig(**fields)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        cfg = config_from_args(args)
        status, text = COMMANDS[cfg.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantViolation, SeriesError, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
