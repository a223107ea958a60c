"""Per-paper percentile indicators on a citation distribution.

All functions return percentages in [0, 100] at full floating point
precision; rounding to two decimals is left to presentation code
(:func:`display`).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from decimal import ROUND_HALF_UP, Decimal

from .distributions import CellKey, CitationDistribution
from .errors import DegenerateScale, UnknownCitationCount

__all__ = [
    "INDICATORS",
    "RANKS",
    "COLUMNS",
    "IndicatorRow",
    "IndicatorTable",
    "hazen_pp",
    "incites_percentile",
    "p100",
    "p100_prime",
    "cp_in",
    "cp_ex",
    "indicator_table",
    "indicator_function",
    "display",
]

INDICATORS = ("hazen", "incites", "p100", "p100_prime", "cp_in", "cp_ex")
RANKS = ("mean_rank", "rank_k", "rank_i", "rank_j")
COLUMNS = ("cc", "count") + RANKS + INDICATORS


def display(value: float | None, places: int = 2) -> str:
    """Round half away from zero for printing.

    Rounding is applied to the exact binary value, so ``84.655`` (stored
    as 84.65499...) prints as ``84.65``.
    """
    if value is None:
        return ""
    q = Decimal(1).scaleb(-places)
    return str(Decimal(value).quantize(q, rounding=ROUND_HALF_UP))


def hazen_pp(dist: CitationDistribution, cc: int) -> float:
    """Hazen plotting position ``(r - 0.5) / n`` in percent, ``r`` the mean rank."""
    k = dist.count(cc)
    return 100.0 * (dist.below(cc) + k / 2) / dist.n


def incites_percentile(dist: CitationDistribution, cc: int) -> float:
    """Share of papers with at least ``cc`` citations."""
    return 100.0 * dist.at_or_above(cc) / dist.n


def p100(dist: CitationDistribution, cc: int) -> float:
    i = dist.position(cc)
    i_max = len(dist) - 1
    if i_max == 0:
        raise DegenerateScale("P100 needs at least two distinct citation counts")
    return 100.0 * i / i_max


def p100_prime(dist: CitationDistribution, cc: int) -> float:
    j = dist.below(cc)
    j_max = dist.below(dist.max_cc)
    if j_max == 0:
        raise DegenerateScale("P100' needs at least two distinct citation counts")
    return 100.0 * j / j_max


def cp_in(dist: CitationDistribution, cc: int) -> float:
    """Cumulative percentage of papers at or below ``cc``."""
    return 100.0 * dist.at_or_below(cc) / dist.n


def cp_ex(dist: CitationDistribution, cc: int) -> float:
    """Cumulative percentage of papers strictly below ``cc``."""
    return 100.0 * dist.below(cc) / dist.n


_FUNCS = {
    "hazen": hazen_pp,
    "incites": incites_percentile,
    "p100": p100,
    "p100_prime": p100_prime,
    "cp_in": cp_in,
    "cp_ex": cp_ex,
}


def indicator_function(name: str):
    try:
        return _FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown indicator {name!r}; choose from {', '.join(INDICATORS)}") from None


@dataclass(frozen=True)
class IndicatorRow:
    """Indicators of one citation count plus the ranks behind them.

    ``mean_rank`` is the ascending mean rank of the tied papers, ``rank_k``
    the papers at or above ``cc``, ``rank_i`` the position among unique
    counts and ``rank_j`` the papers strictly below.
    """

    cc: int
    count: int
    mean_rank: float
    rank_k: int
    rank_i: int
    rank_j: int
    hazen: float
    incites: float
    p100: float | None
    p100_prime: float | None
    cp_in: float
    cp_ex: float

    def get(self, name: str) -> float | None:
        if name not in INDICATORS:
            raise ValueError(f"unknown indicator {name!r}")
        return getattr(self, name)


@dataclass(frozen=True)
class IndicatorTable:
    """All six indicators for every unique citation count of one cell.

    ``p100`` and ``p100_prime`` are ``None`` throughout when the cell has a
    single distinct citation count.
    """

    key: CellKey | None
    n: int
    rows: tuple[IndicatorRow, ...]

    @property
    def degenerate(self) -> bool:
        return len(self.rows) < 2

    def row(self, cc: int) -> IndicatorRow:
        for r in self.rows:
            if r.cc == cc:
                return r
        raise UnknownCitationCount(f"citation count {cc!r} does not occur in the table")

    def lookup(self) -> dict[int, IndicatorRow]:
        return {r.cc: r for r in self.rows}

    def column(self, name: str) -> list:
        return [getattr(r, name) for r in self.rows]

    def to_records(self) -> list[dict]:
        return [asdict(r) for r in self.rows]

    def to_csv(self, places: int | None = None) -> str:
        """CSV text; full precision unless ``places`` asks for display rounding."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.rows:
            vals = [r.get(name) for name in INDICATORS]
            if places is None:
                cells = ["" if v is None else repr(v) for v in vals]
            else:
                cells = [display(v, places) for v in vals]
            w.writerow([r.cc, r.count, repr(r.mean_rank), r.rank_k, r.rank_i, r.rank_j, *cells])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "key": None if self.key is None else {"year": self.key[0], "category": self.key[1]},
            "n": self.n,
            "columns": list(COLUMNS),
            "rows": self.to_records(),
        }
        return json.dumps(doc, indent=2)


def indicator_table(dist: CitationDistribution) -> IndicatorTable:
    """Compute every indicator for every unique citation count in one pass."""
    n = dist.n
    i_max = len(dist) - 1
    j_max = n - dist.entries[-1][1]
    rows = []
    below = 0
    for i, (cc, k) in enumerate(dist.entries):
        upto = below + k
        rows.append(
            IndicatorRow(
                cc=cc,
                count=k,
                mean_rank=below + (k + 1) / 2,
                rank_k=n - below,
                rank_i=i,
                rank_j=below,
                hazen=100.0 * (below + k / 2) / n,
                incites=100.0 * (n - below) / n,
                p100=100.0 * i / i_max if i_max else None,
                p100_prime=100.0 * below / j_max if j_max else None,
                cp_in=100.0 * upto / n,
                cp_ex=100.0 * below / n,
            )
        )
        below = upto
    return IndicatorTable(dist.key, n, tuple(rows))

