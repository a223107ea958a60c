"""Command line interface.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
Diagnostics go to stderr; results go to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import warnings
from pathlib import Path

from . import __version__
from .aggregation import i3, parse_i3_notation
from .corpus import compute_all, ingest, save_store, unit_report
from .errors import CitePRError, IngestError
from .estimation import anchors_from_distribution, cc_for_pr, interpolate_cc, interpolate_pr, pr_for_cc
from .indicators import INDICATORS, display, indicator_table
from .plots import READABILITY_LIMIT, emit_bargraph, emit_beamplot, emit_qq_data, summary_data

log = logging.getLogger("citepr")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        sys.stderr.write(f"\n{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _number(x: float, full: bool) -> str:
    return repr(x) if full else f"{x:.10g}"


def _load(args):
    corpus = ingest(args.input, args.input_format)
    return corpus


def _pick_cell(corpus, spec: str | None):
    if spec is None:
        if len(corpus.cells) != 1:
            raise UsageError(f"corpus has {len(corpus.cells)} cells; choose one with --cell YEAR:CATEGORY")
        return next(iter(corpus.cells.values()))
    year, sep, cat = spec.partition(":")
    if not sep:
        raise UsageError(f"--cell must look like YEAR:CATEGORY, got {spec!r}")
    try:
        key = (int(year), cat)
    except ValueError:
        raise UsageError(f"bad year in --cell {spec!r}") from None
    if key not in corpus.cells:
        raise UsageError(f"no cell {spec!r} in the corpus")
    return corpus.cells[key]


def cmd_ingest(args):
    corpus = _load(args)
    store = compute_all(corpus, min_cell_size=args.min_cell_size, workers=args.workers)
    manifest = save_store(store, args.out)
    log.info("%d records, %d cells -> %s", manifest["records"], manifest["cells"], args.out)
    _emit(json.dumps(manifest, indent=2, sort_keys=True), None)


def cmd_table(args):
    dist = _pick_cell(_load(args), args.cell)
    table = indicator_table(dist)
    text = table.to_json() if args.format == "json" else table.to_csv(places=args.places)
    _emit(text, args.out)


def cmd_estimate(args):
    dist = _pick_cell(_load(args), args.cell)
    variant = args.variant
    if args.method == "barrett":
        if args.pr is not None:
            value = cc_for_pr(dist, args.pr / 100.0, variant, args.width)
        else:
            value = pr_for_cc(dist, args.cc, variant, args.width)
    else:
        anchors = anchors_from_distribution(dist, variant)
        value = interpolate_cc(anchors, args.pr) if args.pr is not None else interpolate_pr(anchors, args.cc)
    _emit(_number(value, args.full), args.out)


def cmd_aggregate(args):
    corpus = _load(args)
    store = compute_all(corpus)
    units = args.unit or store.units()
    config = parse_i3_notation(args.i3) if args.i3 else None
    rows = []
    for u in units:
        rep = unit_report(store, u, args.indicator)
        row = {"unit": u, "papers": rep.papers, "fr_sum": rep.fr_sum, "mwpr": rep.mwpr, "mwpr_f": rep.mwpr_f}
        if config is not None:
            prs = [w for pid, _ in store.papers_of(u) if (w := store.paper_wpr(pid, args.indicator)) is not None]
            row["i3"] = i3(prs, config)
        rows.append(row)
    if args.format == "json":
        doc = {"indicator": args.indicator, "i3": args.i3, "units": rows}
        _emit(json.dumps(doc, indent=2), args.out)
        return
    buf = io.StringIO()
    fields = list(rows[0]) if rows else ["unit", "papers", "fr_sum", "mwpr", "mwpr_f"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (display(v) if isinstance(v, float) and args.places else v) for k, v in row.items()})
    _emit(buf.getvalue(), args.out)


def cmd_beamplot(args):
    store = compute_all(_load(args))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        svg, data = emit_beamplot(store, args.unit, args.variant, args.limit)
    for w in caught:
        sys.stderr.write(f"citepr beamplot: warning: {w.message}\n")
    if args.json:
        Path(args.json).write_text(data + "\n", encoding="utf-8")
    _emit(svg, args.out)


def cmd_bargraph(args):
    store = compute_all(_load(args))
    svg, data = emit_bargraph(store, args.unit, fractional=not args.no_fractional)
    if args.json:
        Path(args.json).write_text(data + "\n", encoding="utf-8")
    _emit(svg, args.out)


def cmd_qq(args):
    store = compute_all(_load(args))
    pairs = emit_qq_data(store, args.min_categories, args.a, args.b)
    doc = {"kind": "qq", "unit": None, "variant": "hazen", "series": [{"x": x, "y": y} for x, y in pairs]}
    _emit(json.dumps(doc, indent=2), args.out)


def cmd_summary(args):
    store = compute_all(_load(args))
    _emit(json.dumps(summary_data(store, bins=args.bins), indent=2), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="citepr", description="Percentile-based citation impact indicators.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("--input", "-i", required=True, help="record file (paper_id,year,citations,categories,units)")
        sp.add_argument("--input-format", choices=("csv", "jsonl"), default="csv")
        sp.set_defaults(func=func, subparser=sp)
        return sp

    sp = add("ingest", cmd_ingest, "validate records, score every cell and write the store")
    sp.add_argument("--out", "-o", required=True, help="output directory")
    sp.add_argument("--min-cell-size", type=int, default=1, help="flag cells with fewer papers (default 1)")
    sp.add_argument("--workers", type=int, default=None, help="threads for cell tables")

    sp = add("table", cmd_table, "indicator table of one (year, category) cell")
    sp.add_argument("--cell", help="YEAR:CATEGORY (optional if the corpus has one cell)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--places", type=int, default=None, help="round CSV values for display")
    sp.add_argument("--out", "-o")

    sp = add("estimate", cmd_estimate, "citation count for a percentile rank or the reverse")
    sp.add_argument("--cell", help="YEAR:CATEGORY (optional if the corpus has one cell)")
    sp.add_argument("--variant", choices=("cp-in", "cp-ex"), default="cp-in")
    sp.add_argument("--method", choices=("barrett", "interp"), default="barrett")
    target = sp.add_mutually_exclusive_group(required=True)
    target.add_argument("--pr", type=float, help="percentile rank in percent")
    target.add_argument("--cc", type=float, help="citation value")
    sp.add_argument("--width", type=float, default=1.0, help="interval width (barrett only)")
    sp.add_argument("--full", action="store_true", help="print full float precision")
    sp.add_argument("--out", "-o")

    sp = add("aggregate", cmd_aggregate, "mwPR and mwPR(F) per unit, optionally I3")
    sp.add_argument("--unit", action="append", help="unit id (repeatable; default all)")
    sp.add_argument("--indicator", choices=INDICATORS, default="cp_ex")
    sp.add_argument("--i3", help="I3 notation, e.g. 'I3(99-100, 90-10)'")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--places", action="store_true", help="round CSV values to 2 decimals")
    sp.add_argument("--out", "-o")

    sp = add("beamplot", cmd_beamplot, "SVG beamplot of one unit's PRs")
    sp.add_argument("--unit", required=True)
    sp.add_argument("--variant", choices=("cp-in", "cp-ex", "hazen"), default="cp-ex")
    sp.add_argument("--limit", type=int, default=READABILITY_LIMIT, help="warn above this many papers")
    sp.add_argument("--json", help="write plot data JSON here")
    sp.add_argument("--out", "-o", help="SVG file (default stdout)")

    sp = add("bargraph", cmd_bargraph, "SVG bar graph of mwPR(F) under CP-IN and CP-EX")
    sp.add_argument("--unit", action="append", required=True, help="unit id (repeatable)")
    sp.add_argument("--no-fractional", action="store_true", help="plain mwPR instead of mwPR(F)")
    sp.add_argument("--json", help="write plot data JSON here")
    sp.add_argument("--out", "-o", help="SVG file (default stdout)")

    sp = add("qq", cmd_qq, "Q-Q data of Hazen quantiles in two category positions")
    sp.add_argument("--min-categories", "-k", type=int, required=True)
    sp.add_argument("--a", type=int, default=1, help="first category position (1-based)")
    sp.add_argument("--b", type=int, default=None, help="second category position (default k)")
    sp.add_argument("--out", "-o")

    sp = add("summary", cmd_summary, "boxplot and histogram data of CCs, CP-IN and CP-EX per year")
    sp.add_argument("--bins", type=int, default=10)
    sp.add_argument("--out", "-o")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        args.func(args)
    except UsageError as exc:
        args.subparser.print_help(sys.stderr)
        sys.stderr.write(f"citepr {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except IngestError as exc:
        for err in exc.errors:
            sys.stderr.write(f"citepr: {err}\n")
        return EXIT_DATA
    except (CitePRError, OSError, ValueError) as exc:
        sys.stderr.write(f"citepr {args.command}: {exc}\n")
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
