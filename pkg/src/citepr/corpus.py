"""Publication corpora: ingestion, cell index, scoring and persistence.

Input CSV (header required)::

    paper_id,year,citations,categories,units
    p1,2000,13,PHYS;CHEM,DE:0.5;US:0.5

``categories`` is a ``;``-separated list; ``units`` is a ``;``-separated
list of ``unit`` or ``unit:fraction`` tokens and may be blank.  A unit
without a fraction gets ``1 / (number of units on the paper)``.

A paper with k categories is counted once in each of its k cells.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import math
import os
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .aggregation import (
    CategoryPR,
    PaperScore,
    UnitScore,
    mean_weighted_pr,
    mean_weighted_pr_fractional,
)
from .distributions import CellKey, CitationDistribution, PublicationRecord
from .errors import (
    DuplicateId,
    EmptyCategories,
    IngestError,
    InvalidCitationCount,
    NoPapers,
    ParseError,
    RecordError,
    UnknownUnit,
)
from .indicators import INDICATORS, IndicatorRow, IndicatorTable, indicator_table

__all__ = [
    "HEADER",
    "Corpus",
    "ScoreStore",
    "build_corpus",
    "ingest",
    "parse_units",
    "default_fractions",
    "compute_all",
    "unit_report",
    "save_store",
    "write_records_csv",
]

log = logging.getLogger(__name__)

HEADER = ("paper_id", "year", "citations", "categories", "units")


def default_fractions(units: Sequence[str]) -> tuple[tuple[str, float], ...]:
    """Equal fractional counting: each of k units gets 1/k."""
    if not units:
        return ()
    share = 1.0 / len(units)
    return tuple((u, share) for u in units)


def parse_units(text: str) -> tuple[tuple[str, float], ...]:
    tokens = [t.strip() for t in text.split(";") if t.strip()]
    if not tokens:
        return ()
    share = 1.0 / len(tokens)
    if ":" not in text and len(set(tokens)) == len(tokens):
        return tuple((t, share) for t in tokens)
    out = []
    seen = set()
    for tok in tokens:
        name, sep, frac = tok.partition(":")
        name = name.strip()
        if not name:
            raise ValueError(f"empty unit name in {text!r}")
        if name in seen:
            raise ValueError(f"unit {name!r} listed twice")
        seen.add(name)
        if sep:
            try:
                fr = float(frac)
            except ValueError:
                raise ValueError(f"bad fraction {frac!r} for unit {name!r}") from None
        else:
            fr = share
        if not 0.0 < fr <= 1.0:
            raise ValueError(f"fraction for unit {name!r} must be in (0, 1], got {frac}")
        out.append((name, fr))
    return tuple(out)


def format_units(units: Iterable[tuple[str, float]]) -> str:
    return ";".join(f"{u}:{fr!r}" for u, fr in units)


@dataclass
class Corpus:
    """Validated records and the (year, category) cell index."""

    records: dict[str, PublicationRecord]
    cells: dict[CellKey, CitationDistribution]

    def __len__(self):
        return len(self.records)

    def cell_occurrences(self) -> int:
        return sum(d.n for d in self.cells.values())

    def units(self) -> list[str]:
        return sorted({u for r in self.records.values() for u, _ in r.units})

    def canonical_fields(self, paper_ids: Sequence[str] | None = None) -> list[tuple[str, str, str, str, str]]:
        """Records as text fields, in ``paper_ids`` order (default: sorted ids)."""
        recs = self.records
        ids = sorted(recs) if paper_ids is None else paper_ids
        return [
            (pid, str(r.year), str(r.citations), ";".join(r.categories), format_units(r.units))
            for pid in ids
            for r in (recs[pid],)
        ]

    def sha256(self, fields: list[tuple[str, ...]] | None = None) -> str:
        """Digest of the canonical record listing, independent of input order."""
        fields = self.canonical_fields() if fields is None else fields
        h = hashlib.sha256()
        chunk = 50_000
        for start in range(0, len(fields), chunk):
            h.update("".join("\t".join(f) + "\n" for f in fields[start : start + chunk]).encode())
        return h.hexdigest()


def build_corpus(records: Iterable[PublicationRecord]) -> Corpus:
    by_id: dict[str, PublicationRecord] = {}
    counts: dict[CellKey, Counter] = defaultdict(Counter)
    for rec in records:
        if rec.paper_id in by_id:
            raise DuplicateId(f"duplicate paper_id {rec.paper_id!r}")
        by_id[rec.paper_id] = rec
        for cat in rec.categories:
            counts[(rec.year, cat)][rec.citations] += 1
    if not by_id:
        raise NoPapers("corpus is empty")
    cells = {key: CitationDistribution.from_counts(counts[key], key) for key in sorted(counts)}
    return Corpus(by_id, cells)


def _parse_row(fields: Sequence[str], line: int) -> PublicationRecord:
    raw_id, raw_year, raw_cc, raw_cats, raw_units = fields
    pid = raw_id.strip()
    if not pid:
        raise ParseError("missing paper_id", line)
    try:
        year = int(raw_year)
    except ValueError:
        raise ParseError(f"bad year {raw_year!r}", line) from None
    try:
        cc = int(raw_cc)
    except ValueError:
        raise InvalidCitationCount(f"citations must be a non-negative integer, got {raw_cc!r}", line) from None
    if cc < 0:
        raise InvalidCitationCount(f"citations must be a non-negative integer, got {raw_cc!r}", line)
    cats = tuple(c.strip() for c in raw_cats.split(";") if c.strip())
    if not cats:
        raise EmptyCategories("no subject categories", line)
    if len(set(cats)) != len(cats):
        raise ParseError("category listed twice", line)
    try:
        units = parse_units(raw_units)
    except ValueError as exc:
        raise ParseError(str(exc), line) from None
    return PublicationRecord._trusted(pid, year, cc, cats, units)


def _iter_csv(fh):
    reader = csv.reader(fh)
    header = [h.strip() for h in next(reader, [])]
    missing = [c for c in HEADER if c not in header]
    if missing:
        raise IngestError([ParseError(f"header lacks column(s) {', '.join(missing)}", 1)])
    cols = [header.index(c) for c in HEADER]
    width = len(header)
    for row in reader:
        if not row:
            continue
        if len(row) != width:
            yield reader.line_num, ParseError(f"expected {width} fields, got {len(row)}", reader.line_num)
            continue
        yield reader.line_num, [row[i] for i in cols]


def _iter_jsonl(fh):
    for line, text in enumerate(fh, start=1):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            yield line, ParseError(f"invalid JSON: {exc}", line)
            continue
        if not isinstance(obj, dict):
            yield line, ParseError("expected a JSON object", line)
            continue
        if isinstance(obj.get("categories"), list):
            obj["categories"] = ";".join(obj["categories"])
        if isinstance(obj.get("units"), list):
            obj["units"] = ";".join(u if isinstance(u, str) else f"{u[0]}:{u[1]}" for u in obj["units"])
        yield line, ["" if obj.get(k) is None else str(obj[k]) for k in HEADER]


def ingest(path: str | os.PathLike, format: str = "csv") -> Corpus:
    """Read and validate a record file.

    Every bad record is collected (with its line number) and reported at
    the end in a single :class:`IngestError`.
    """
    fmt = format.lower()
    if fmt not in ("csv", "jsonl"):
        raise ValueError(f"unsupported format {format!r}")
    records = []
    errors: list[RecordError] = []
    seen: dict[str, int] = {}
    with open(path, encoding="utf-8-sig", newline="") as fh:
        rows = _iter_csv(fh) if fmt == "csv" else _iter_jsonl(fh)
        for line, row in rows:
            if isinstance(row, RecordError):
                errors.append(row)
                continue
            try:
                rec = _parse_row(row, line)
            except RecordError as exc:
                errors.append(exc)
                continue
            if rec.paper_id in seen:
                errors.append(DuplicateId(f"paper_id {rec.paper_id!r} already on line {seen[rec.paper_id]}", line))
                continue
            seen[rec.paper_id] = line
            records.append(rec)
    if errors:
        raise IngestError(errors)
    if not records:
        raise IngestError([ParseError("no records", None)])
    corpus = build_corpus(records)
    log.info("ingested %d records into %d cells", len(corpus), len(corpus.cells))
    return corpus


def write_records_csv(records: Iterable[PublicationRecord], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(HEADER)
        for r in records:
            w.writerow([r.paper_id, r.year, r.citations, ";".join(r.categories), format_units(r.units)])


# -- scoring -----------------------------------------------------------------


@dataclass
class ScoreStore:
    """Indicator tables for every cell and per-paper / per-unit scores.

    Per-paper data is columnar.  Papers are indexed in ``paper_ids`` order
    (sorted); occurrence ``k`` (one per paper and category) belongs to paper
    ``occ_paper[k]`` and cell ``cells[occ_cell[k]]`` and reads its indicator
    values from ``values[occ_row[k]]``.  ``wpr`` has one column per entry
    of ``indicators``; NaN marks an undefined value.
    """

    corpus: Corpus
    indicators: tuple[str, ...]
    tables: dict[CellKey, IndicatorTable]
    flagged: frozenset[CellKey]
    cells: list[CellKey]
    values: np.ndarray
    paper_ids: list[str]
    occ_start: np.ndarray
    occ_cell: np.ndarray
    occ_row: np.ndarray
    wpr: np.ndarray
    unit_papers: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    _pindex: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._pindex:
            self._pindex = {pid: i for i, pid in enumerate(self.paper_ids)}

    def _col(self, indicator: str) -> int:
        try:
            return self.indicators.index(indicator)
        except ValueError:
            raise ValueError(f"indicator {indicator!r} was not computed; have {self.indicators}") from None

    def _paper(self, paper_id: str) -> int:
        try:
            return self._pindex[paper_id]
        except KeyError:
            raise KeyError(f"unknown paper {paper_id!r}") from None

    def paper_wpr(self, paper_id: str, indicator: str = "cp_ex") -> float | None:
        v = float(self.wpr[self._paper(paper_id), self._col(indicator)])
        return None if math.isnan(v) else v

    def paper_cells(self, paper_id: str) -> list[tuple[CellKey, int, IndicatorRow]]:
        """``(cell, n_SC, indicator row)`` for each of the paper's cells."""
        p = self._paper(paper_id)
        rec = self.corpus.records[paper_id]
        out = []
        for k in range(self.occ_start[p], self.occ_start[p + 1]):
            key = self.cells[self.occ_cell[k]]
            table = self.tables[key]
            out.append((key, table.n, table.row(rec.citations)))
        return out

    def paper_score(self, paper_id: str, indicator: str = "cp_ex") -> PaperScore:
        self._col(indicator)
        per = tuple(CategoryPR(key[1], key[0], row.get(indicator), n) for key, n, row in self.paper_cells(paper_id))
        return PaperScore(paper_id, per, self.paper_wpr(paper_id, indicator))

    @property
    def degenerate(self) -> frozenset[CellKey]:
        """Cells with one distinct citation count, where P100 and P100' are undefined."""
        return frozenset(k for k, t in self.tables.items() if t.degenerate)

    def units(self) -> list[str]:
        return sorted(self.unit_papers)

    def papers_of(self, unit: str) -> list[tuple[str, float]]:
        try:
            idx, fr = self.unit_papers[unit]
        except KeyError:
            raise UnknownUnit(f"unknown unit {unit!r}") from None
        return [(self.paper_ids[i], f) for i, f in zip(idx.tolist(), fr.tolist())]


def compute_all(
    corpus: Corpus,
    indicators: Sequence[str] = INDICATORS,
    *,
    min_cell_size: int = 1,
    workers: int | None = None,
) -> ScoreStore:
    """Score every cell, paper and unit of ``corpus``.

    Cells smaller than ``min_cell_size`` are still scored but flagged.
    With ``workers > 1`` cell tables are built in a thread pool; output
    does not depend on scheduling.
    """
    indicators = tuple(indicators)
    for name in indicators:
        if name not in INDICATORS:
            raise ValueError(f"unknown indicator {name!r}")
    if not indicators:
        raise ValueError("select at least one indicator")
    keys = sorted(corpus.cells)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = list(pool.map(lambda k: indicator_table(corpus.cells[k]), keys))
    else:
        built = [indicator_table(corpus.cells[k]) for k in keys]
    tables = dict(zip(keys, built))
    flagged = frozenset(k for k, t in tables.items() if t.n < min_cell_size)
    for k in sorted(flagged):
        log.warning("cell %s has %d paper(s), below the threshold of %d", k, tables[k].n, min_cell_size)

    # table rows of all cells stacked in (cell, cc) order
    values = np.array(
        [[math.nan if v is None else v for v in (r.get(i) for i in indicators)] for t in built for r in t.rows],
        dtype=np.float64,
    ).reshape(-1, len(indicators))
    cell_n = np.array([t.n for t in built], dtype=np.float64)

    cell_of = {k: i for i, k in enumerate(keys)}
    paper_ids = sorted(corpus.records)
    occ_cell: list[int] = []
    occ_cc: list[int] = []
    ncat = np.empty(len(paper_ids), dtype=np.int64)
    unit_idx: dict[str, list[int]] = defaultdict(list)
    unit_fr: dict[str, list[float]] = defaultdict(list)
    for p, pid in enumerate(paper_ids):
        rec = corpus.records[pid]
        ncat[p] = len(rec.categories)
        for c in rec.categories:
            occ_cell.append(cell_of[(rec.year, c)])
            occ_cc.append(rec.citations)
        for u, fr in rec.units:
            unit_idx[u].append(p)
            unit_fr[u].append(fr)
    occ_start = np.concatenate(([0], np.cumsum(ncat)))
    occ_paper = np.repeat(np.arange(len(paper_ids)), ncat)
    cell_arr = np.asarray(occ_cell, dtype=np.int64)
    # unique (cell, cc) pairs sort exactly like the stacked table rows
    _, occ_row = np.unique((cell_arr << 32) | np.asarray(occ_cc, dtype=np.int64), return_inverse=True)
    occ_row = occ_row.reshape(-1)

    wpr = _weighted_prs(values[occ_row], cell_n[cell_arr], occ_paper, len(paper_ids))
    unit_papers = {
        u: (np.asarray(unit_idx[u], dtype=np.int64), np.asarray(unit_fr[u], dtype=np.float64)) for u in sorted(unit_idx)
    }
    return ScoreStore(
        corpus=corpus,
        indicators=indicators,
        tables=tables,
        flagged=flagged,
        cells=keys,
        values=values,
        paper_ids=paper_ids,
        occ_start=occ_start,
        occ_cell=cell_arr,
        occ_row=occ_row,
        wpr=wpr,
        unit_papers=unit_papers,
    )


def _weighted_prs(occ_values: np.ndarray, occ_n: np.ndarray, occ_paper: np.ndarray, n_papers: int) -> np.ndarray:
    """Size-weighted PR per paper for every indicator column.

    Accumulates in occurrence order, i.e. the same arithmetic as
    :func:`citepr.aggregation.weighted_pr`.  Undefined values are skipped.
    """
    out = np.full((n_papers, occ_values.shape[1]), np.nan)
    for col in range(occ_values.shape[1]):
        v = occ_values[:, col]
        ok = ~np.isnan(v)
        num = np.bincount(occ_paper, weights=np.where(ok, v * occ_n, 0.0), minlength=n_papers)
        den = np.bincount(occ_paper, weights=np.where(ok, occ_n, 0.0), minlength=n_papers)
        seen = np.bincount(occ_paper, weights=ok.astype(np.float64), minlength=n_papers)
        plain = np.bincount(occ_paper, weights=np.where(ok, v, 0.0), minlength=n_papers)
        with np.errstate(invalid="ignore", divide="ignore"):
            w = num / den
        lo = np.full(n_papers, np.inf)
        hi = np.full(n_papers, -np.inf)
        np.minimum.at(lo, occ_paper[ok], v[ok])
        np.maximum.at(hi, occ_paper[ok], v[ok])
        w = np.clip(w, lo, hi)
        w = np.where(seen == 1, plain, w)
        w[seen == 0] = np.nan
        out[:, col] = w
    return out


def unit_report(store: ScoreStore, unit: str, indicator: str = "cp_ex") -> UnitScore:
    """mwPR and fractional mwPR(F) of a unit's papers."""
    col = store._col(indicator)
    try:
        idx, fr = store.unit_papers[unit]
    except KeyError:
        raise UnknownUnit(f"unknown unit {unit!r}") from None
    w = store.wpr[idx, col]
    ok = ~np.isnan(w)
    ws = w[ok].tolist()
    frs = fr[ok].tolist()
    if not ws:
        raise NoPapers(f"unit {unit!r} has no scored papers for {indicator}")
    return UnitScore(
        unit=unit,
        papers=len(ws),
        mwpr=mean_weighted_pr(ws),
        mwpr_f=mean_weighted_pr_fractional(list(zip(ws, frs))),
        fr_sum=math.fsum(frs),
    )


# -- persistence -------------------------------------------------------------


def _num(v) -> str:
    return "" if v is None or v != v else repr(v)


def _write(path: Path, header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    data = buf.getvalue().encode("utf-8")
    path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def save_store(store: ScoreStore, directory: str | os.PathLike) -> dict:
    """Write the store as CSV files plus ``manifest.json``; returns the manifest.

    Files: ``cells.csv``, ``indicator_tables.csv``, ``paper_scores.csv``,
    ``unit_scores.csv``.  Floats are written with their shortest
    round-trip representation; an absent value is an empty field.
    """
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    ind = store.indicators
    hashes = {}

    hashes["cells.csv"] = _write(
        out / "cells.csv",
        ("year", "category", "n", "unique_ccs", "flagged", "degenerate"),
        ((y, c, t.n, len(t.rows), int((y, c) in store.flagged), int(t.degenerate)) for (y, c), t in store.tables.items()),
    )
    hashes["indicator_tables.csv"] = _write(
        out / "indicator_tables.csv",
        ("year", "category", "cc", "count", *ind),
        ((y, c, r.cc, r.count, *(_num(r.get(i)) for i in ind)) for (y, c), t in store.tables.items() for r in t.rows),
    )
    recs = store.corpus.records
    fields = store.corpus.canonical_fields(store.paper_ids)
    k = len(ind)
    flat = ["" if t == "nan" else t for t in map(repr, store.wpr.ravel().tolist())]
    order = sorted(range(len(fields)), key=lambda p: (recs[fields[p][0]].year, fields[p][0]))
    hashes["paper_scores.csv"] = _write(
        out / "paper_scores.csv",
        ("paper_id", "year", "citations", "categories", "units", *(f"wpr_{i}" for i in ind)),
        (fields[p] + tuple(flat[p * k : p * k + k]) for p in order),
    )
    unit_rows = []
    for u in store.units():
        idx, fr = store.unit_papers[u]
        row = [u, len(idx), repr(math.fsum(fr.tolist()))]
        for i in ind:
            try:
                s = unit_report(store, u, i)
                row += [repr(s.mwpr), repr(s.mwpr_f)]
            except NoPapers:
                row += ["", ""]
        unit_rows.append(row)
    unit_header = ["unit", "papers", "fr_sum"]
    for i in ind:
        unit_header += [f"mwpr_{i}", f"mwpr_f_{i}"]
    hashes["unit_scores.csv"] = _write(out / "unit_scores.csv", unit_header, unit_rows)

    manifest = {
        "corpus_sha256": store.corpus.sha256(fields),
        "records": len(store.corpus),
        "cells": len(store.tables),
        "cell_occurrences": store.corpus.cell_occurrences(),
        "indicators": list(ind),
        "flagged_cells": len(store.flagged),
        "files": hashes,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest
