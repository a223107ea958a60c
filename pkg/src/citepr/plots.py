"""Plot data and SVG renderings.

The plot-data dictionaries are the contract: they carry the exact library
values.  SVG output is a rendering of that data, and every number it shows
is the two-decimal display form of a value in the data.
"""

from __future__ import annotations

import json
import math
import warnings
import xml.etree.ElementTree as ET
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .aggregation import mean_weighted_pr_fractional
from .corpus import ScoreStore, unit_report
from .errors import NoMatchingPapers, UnknownUnit
from .indicators import display

__all__ = [
    "READABILITY_LIMIT",
    "REFERENCE_PR",
    "STYLE",
    "BeamYear",
    "BeamplotSpec",
    "BarGraphSpec",
    "beamplot_data",
    "emit_beamplot",
    "bargraph_data",
    "emit_bargraph",
    "emit_qq_data",
    "summary_data",
    "boxplot_stats",
]

READABILITY_LIMIT = 500
REFERENCE_PR = 50.0
AXIS_TICKS = (0, 25, 50, 75, 100)

STYLE = {
    "width": 720,
    "margin_left": 70,
    "margin_right": 30,
    "margin_top": 40,
    "beam_gap": 44,
    "beam_height": 14,
    "point_radius": 3.5,
    "marker_radius": 8,
    "bar_width": 28,
    "bar_area_height": 260,
    "font_size": 11,
    "font_family": "Helvetica, Arial, sans-serif",
}


def _indicator(variant: str) -> str:
    return variant.lower().replace("-", "_")


def _variant(indicator: str) -> str:
    return indicator.replace("_", "-")


# -- beamplot ----------------------------------------------------------------


@dataclass(frozen=True)
class BeamYear:
    year: int
    points: tuple[tuple[str, float, float], ...]  # (paper_id, pr, fraction)
    mwpr: float


@dataclass(frozen=True)
class BeamplotSpec:
    unit: str
    variant: str
    years: tuple[BeamYear, ...]
    overall: float
    reference: float = REFERENCE_PR
    warning: str | None = None

    @property
    def papers(self) -> int:
        return sum(len(y.points) for y in self.years)

    def to_dict(self) -> dict:
        return {
            "kind": "beamplot",
            "unit": self.unit,
            "variant": self.variant,
            "series": [
                {
                    "year": y.year,
                    "mwpr": y.mwpr,
                    "papers": [{"paper_id": pid, "pr": pr, "fraction": fr} for pid, pr, fr in y.points],
                }
                for y in self.years
            ],
            "overall": self.overall,
            "reference": self.reference,
            "axis": {"min": 0, "max": 100, "ticks": list(AXIS_TICKS)},
            "warning": self.warning,
        }


def beamplot_data(store: ScoreStore, unit: str, variant: str = "cp-ex", limit: int = READABILITY_LIMIT) -> BeamplotSpec:
    """Per-year PRs of a unit's papers with annual and overall mwPR(F).

    Annual and overall markers weight papers by the unit's fraction, on
    top of the category weighting already in each paper's wPR.
    """
    ind = _indicator(variant)
    col = store._col(ind)
    papers = store.papers_of(unit)
    by_year: dict[int, list[tuple[str, float, float]]] = defaultdict(list)
    for pid, fr in papers:
        w = float(store.wpr[store._pindex[pid], col])
        if math.isnan(w):
            continue
        by_year[store.corpus.records[pid].year].append((pid, w, fr))
    years = tuple(
        BeamYear(y, tuple(pts), mean_weighted_pr_fractional([(w, fr) for _, w, fr in pts])) for y, pts in sorted(by_year.items())
    )
    overall = unit_report(store, unit, ind).mwpr_f
    count = sum(len(y.points) for y in years)
    warning = None
    if count > limit:
        warning = f"{count} papers exceed the readability limit of {limit} for beamplots"
        warnings.warn(warning, stacklevel=2)
    return BeamplotSpec(unit, _variant(ind), years, overall, REFERENCE_PR, warning)


def _x(pr: float) -> float:
    s = STYLE
    span = s["width"] - s["margin_left"] - s["margin_right"]
    return round(s["margin_left"] + span * pr / 100.0, 3)


def _svg_root(width: float, height: float, title: str) -> ET.Element:
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(width),
            "height": str(height),
            "viewBox": f"0 0 {width} {height}",
            "font-family": STYLE["font_family"],
            "font-size": str(STYLE["font_size"]),
        },
    )
    ET.SubElement(root, "title").text = title
    return root


def _text(parent, x, y, content, **attrs):
    el = ET.SubElement(parent, "text", {"x": str(x), "y": str(y), **{k.replace("_", "-"): str(v) for k, v in attrs.items()}})
    el.text = content
    return el


def _diamond(parent, cx, cy, r, **attrs):
    pts = f"{cx},{cy - r} {cx + r},{cy} {cx},{cy + r} {cx - r},{cy}"
    return ET.SubElement(parent, "polygon", {"points": pts, **{k.replace("_", "-"): str(v) for k, v in attrs.items()}})


def _to_text(root: ET.Element) -> str:
    ET.indent(root)
    return ET.tostring(root, encoding="unicode", xml_declaration=False) + "\n"


def render_beamplot(spec: BeamplotSpec) -> str:
    s = STYLE
    rows = max(len(spec.years), 1)
    top = s["margin_top"]
    height = top + rows * s["beam_gap"] + 50
    root = _svg_root(s["width"], height, f"Percentile ranks ({spec.variant}) for {spec.unit}")
    _text(root, s["margin_left"], 20, f"{spec.unit} ({spec.variant.upper()})", **{"class": "title"})

    beams = ET.SubElement(root, "g", {"class": "beams"})
    for row, y in enumerate(spec.years):
        cy = top + row * s["beam_gap"] + s["beam_gap"] / 2
        g = ET.SubElement(beams, "g", {"class": "beam", "data-year": str(y.year)})
        ET.SubElement(
            g,
            "rect",
            {
                "x": str(_x(0)),
                "y": str(cy - s["beam_height"] / 2),
                "width": str(_x(100) - _x(0)),
                "height": str(s["beam_height"]),
                "fill": "#eeeeee",
            },
        )
        _text(g, 10, cy + 4, str(y.year), **{"class": "year-label"})
        for pid, pr, _ in y.points:
            _diamond(g, _x(pr), cy, s["point_radius"], fill="#999999", **{"class": "paper", "data-paper": pid})
        _diamond(g, _x(y.mwpr), cy, s["marker_radius"], fill="#000000", **{"class": "annual-mwpr"})
        _text(g, _x(y.mwpr) + 10, cy - 8, display(y.mwpr), **{"class": "annual-label"})

    bottom = top + rows * s["beam_gap"]
    axis = ET.SubElement(root, "g", {"class": "axis"})
    ET.SubElement(axis, "line", {"x1": str(_x(0)), "y1": str(bottom), "x2": str(_x(100)), "y2": str(bottom), "stroke": "#000000"})
    for t in AXIS_TICKS:
        ET.SubElement(axis, "line", {"x1": str(_x(t)), "y1": str(bottom), "x2": str(_x(t)), "y2": str(bottom + 5), "stroke": "#000000"})
        _text(axis, _x(t), bottom + 18, str(t), text_anchor="middle", **{"class": "tick"})

    ET.SubElement(
        root,
        "line",
        {
            "class": "reference",
            "x1": str(_x(spec.reference)),
            "y1": str(top - 10),
            "x2": str(_x(spec.reference)),
            "y2": str(bottom),
            "stroke": "#888888",
            "stroke-dasharray": "6,4",
        },
    )
    ET.SubElement(
        root,
        "line",
        {
            "class": "overall",
            "x1": str(_x(spec.overall)),
            "y1": str(top - 10),
            "x2": str(_x(spec.overall)),
            "y2": str(bottom),
            "stroke": "#000000",
            "stroke-width": "2",
        },
    )
    _text(root, _x(spec.overall) + 4, top - 14, display(spec.overall), **{"class": "overall-label"})
    return _to_text(root)


def emit_beamplot(store: ScoreStore, unit: str, variant: str = "cp-ex", limit: int = READABILITY_LIMIT) -> tuple[str, str]:
    """Return ``(svg_text, plot_data_json)`` for one unit."""
    spec = beamplot_data(store, unit, variant, limit)
    return render_beamplot(spec), json.dumps(spec.to_dict(), indent=2)


# -- bar graph ---------------------------------------------------------------


@dataclass(frozen=True)
class BarGraphSpec:
    fractional: bool
    bars: tuple[tuple[str, float, float], ...]  # (unit, cp_in value, cp_ex value)

    def to_dict(self) -> dict:
        return {
            "kind": "bargraph",
            "unit": [u for u, _, _ in self.bars],
            "variant": ["cp-in", "cp-ex"],
            "fractional": self.fractional,
            "series": [{"unit": u, "cp_in": a, "cp_ex": b} for u, a, b in self.bars],
            "axis": {"min": 0, "max": 100, "ticks": list(AXIS_TICKS)},
        }


def bargraph_data(store: ScoreStore, units: Sequence[str], fractional: bool = True) -> BarGraphSpec:
    if not units:
        raise ValueError("bar graph needs at least one unit")
    bars = []
    for u in units:
        if u not in store.unit_papers:
            raise UnknownUnit(f"unknown unit {u!r}")
        a = unit_report(store, u, "cp_in")
        b = unit_report(store, u, "cp_ex")
        bars.append((u, a.mwpr_f, b.mwpr_f) if fractional else (u, a.mwpr, b.mwpr))
    return BarGraphSpec(fractional, tuple(bars))


def render_bargraph(spec: BarGraphSpec) -> str:
    s = STYLE
    bw = s["bar_width"]
    group = 2 * bw + 24
    width = s["margin_left"] + len(spec.bars) * group + s["margin_right"]
    area = s["bar_area_height"]
    top = s["margin_top"]
    base = top + area
    root = _svg_root(width, base + 50, "Mean weighted percentile ranks")

    def y(v):
        return round(base - area * v / 100.0, 3)

    axis = ET.SubElement(root, "g", {"class": "axis"})
    ET.SubElement(axis, "line", {"x1": str(s["margin_left"] - 6), "y1": str(base), "x2": str(width - s["margin_right"]), "y2": str(base), "stroke": "#000000"})
    for t in AXIS_TICKS:
        ET.SubElement(axis, "line", {"x1": str(s["margin_left"] - 6), "y1": str(y(t)), "x2": str(s["margin_left"] - 2), "y2": str(y(t)), "stroke": "#000000"})
        _text(axis, s["margin_left"] - 10, y(t) + 4, str(t), text_anchor="end", **{"class": "tick"})

    colours = {"cp-in": "#4d4d4d", "cp-ex": "#b3b3b3"}
    for k, (unit, a, b) in enumerate(spec.bars):
        x0 = s["margin_left"] + k * group + 12
        g = ET.SubElement(root, "g", {"class": "unit", "data-unit": unit})
        for j, (variant, v) in enumerate((("cp-in", a), ("cp-ex", b))):
            x = x0 + j * bw
            ET.SubElement(
                g,
                "rect",
                {"class": f"bar {variant}", "x": str(x), "y": str(y(v)), "width": str(bw - 2), "height": str(round(base - y(v), 3)), "fill": colours[variant]},
            )
            _text(g, x + bw / 2 - 1, y(v) - 4, display(v), text_anchor="middle", **{"class": "value"})
        lab = _text(g, x0 + bw, base + 16, "", text_anchor="middle", **{"class": "unit-label"})
        lab.text = unit
    return _to_text(root)


def emit_bargraph(store: ScoreStore, units: Sequence[str], fractional: bool = True) -> tuple[str, str]:
    spec = bargraph_data(store, units, fractional)
    return render_bargraph(spec), json.dumps(spec.to_dict(), indent=2)


# -- Q-Q data ----------------------------------------------------------------


def emit_qq_data(store: ScoreStore, min_categories: int, a: int = 1, b: int | None = None) -> list[tuple[float, float]]:
    """Hazen quantiles of papers in their ``a``-th and ``b``-th category.

    Only papers with at least ``min_categories`` categories take part;
    positions are 1-based in the order the categories were listed.  Both
    coordinate lists are sorted ascending before pairing.
    """
    b = min_categories if b is None else b
    if min_categories < 1 or not (1 <= a <= min_categories and 1 <= b <= min_categories):
        raise ValueError("category positions must lie in 1..min_categories")
    qa, qb = [], []
    for pid in store.paper_ids:
        rec = store.corpus.records[pid]
        if len(rec.categories) < min_categories:
            continue
        ta = store.tables[(rec.year, rec.categories[a - 1])]
        tb = store.tables[(rec.year, rec.categories[b - 1])]
        qa.append(ta.row(rec.citations).hazen)
        qb.append(tb.row(rec.citations).hazen)
    if not qa:
        raise NoMatchingPapers(f"no paper has {min_categories} or more categories")
    return list(zip(sorted(qa), sorted(qb)))


# -- distribution summaries --------------------------------------------------


def boxplot_stats(values: Sequence[float]) -> dict:
    """Quartiles (linear interpolation), extremes and 1.5 IQR fences."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("no values")
    q1, med, q3 = np.percentile(arr, [25, 50, 75])
    iqr = q3 - q1
    lo, hi = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    return {
        "n": int(arr.size),
        "min": float(arr.min()),
        "q1": float(q1),
        "median": float(med),
        "q3": float(q3),
        "max": float(arr.max()),
        "iqr": float(iqr),
        "lower_fence": float(lo),
        "upper_fence": float(hi),
        "outliers": int(np.count_nonzero((arr < lo) | (arr > hi))),
    }


def summary_data(store: ScoreStore, bins: int = 10) -> dict:
    """Boxplot and histogram data per publication year.

    Values are taken per (paper, cell) occurrence, so a paper in k
    categories contributes k values.  Histograms cover [0, 100] in equal
    bins, the last one closed.
    """
    cols = {name: store._col(name) for name in ("cp_in", "cp_ex")}
    cell_year = np.array([key[0] for key in store.cells], dtype=np.int64)
    occ_year = cell_year[store.occ_cell]
    cits = np.repeat(
        np.array([store.corpus.records[pid].citations for pid in store.paper_ids], dtype=np.float64),
        np.diff(store.occ_start),
    )
    edges = np.linspace(0.0, 100.0, bins + 1)
    out = {"kind": "summary", "unit": None, "variant": ["cp-in", "cp-ex"], "series": []}
    for year in sorted(set(occ_year.tolist())):
        mask = occ_year == year
        entry = {"year": year, "citations": boxplot_stats(cits[mask])}
        for name, col in cols.items():
            vals = store.values[store.occ_row[mask], col]
            counts, _ = np.histogram(vals, bins=edges)
            entry[name] = boxplot_stats(vals)
            entry[name]["histogram"] = {"edges": edges.tolist(), "counts": counts.tolist()}
        out["series"].append(entry)
    return out
