"""Citation distributions for (publication year, subject category) cells.

A :class:`CitationDistribution` is the size-frequency distribution of one
cell: the unique citation counts in ascending order and the number of
papers holding each.  Two rank systems are derived from it:

* mean ranks over papers (ascending, ties share the mean position), used
  by the Hazen plotting position;
* ranks over unique values, ``i`` (index among distinct counts) and ``j``
  (papers strictly below), used by P100 and P100'.
"""

from __future__ import annotations

import numbers
from bisect import bisect_left
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import EmptyDistribution, UnknownCitationCount

__all__ = [
    "CellKey",
    "PublicationRecord",
    "CitationDistribution",
    "build_distribution",
    "mean_ranks",
    "unique_value_ranks",
]

CellKey = tuple[int, str]


def _check_citations(value) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise ValueError(f"citation count must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"citation count must be >= 0, got {value}")
    return int(value)


@dataclass(frozen=True, slots=True)
class PublicationRecord:
    """One paper.

    ``units`` holds ``(unit_id, fraction)`` pairs; each fraction is in
    (0, 1].  Use :func:`citepr.corpus.default_fractions` to fill in
    equal fractional counting when a source lists units only.
    """

    paper_id: str
    year: int
    citations: int
    categories: tuple[str, ...]
    units: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        _check_citations(self.citations)
        cats = tuple(self.categories)
        if not cats:
            raise ValueError(f"paper {self.paper_id!r} has no subject categories")
        if len(set(cats)) != len(cats):
            raise ValueError(f"paper {self.paper_id!r} lists a category twice")
        units = tuple((str(u), float(fr)) for u, fr in self.units)
        for u, fr in units:
            if not 0.0 < fr <= 1.0:
                raise ValueError(f"paper {self.paper_id!r}: fraction for unit {u!r} must be in (0, 1], got {fr}")
        object.__setattr__(self, "categories", cats)
        object.__setattr__(self, "units", units)

    @classmethod
    def _trusted(cls, paper_id, year, citations, categories, units):
        # caller has already validated every field
        rec = object.__new__(cls)
        for name, value in zip(("paper_id", "year", "citations", "categories", "units"), (paper_id, year, citations, categories, units)):
            object.__setattr__(rec, name, value)
        return rec

    def cells(self) -> list[CellKey]:
        return [(self.year, c) for c in self.categories]


@dataclass(frozen=True)
class CitationDistribution:
    """Size-frequency distribution of a single cell.

    Parameters
    ----------
    entries : sequence of (cc, count)
        Strictly increasing citation counts with positive paper counts.
    key : (year, category), optional
        The cell this distribution describes.
    """

    entries: tuple[tuple[int, int], ...]
    key: CellKey | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        entries = tuple((_check_citations(cc), int(k)) for cc, k in self.entries)
        if not entries:
            raise EmptyDistribution("a citation distribution needs at least one paper")
        prev = -1
        for cc, k in entries:
            if cc <= prev:
                raise ValueError("citation counts must be strictly increasing")
            if k < 1:
                raise ValueError(f"paper count for cc={cc} must be >= 1, got {k}")
            prev = cc
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_index", {cc: pos for pos, (cc, _) in enumerate(entries)})

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], key: CellKey | None = None) -> CitationDistribution:
        return cls(tuple(sorted(counts.items())), key)

    @classmethod
    def from_citations(cls, citations: Iterable[int], key: CellKey | None = None) -> CitationDistribution:
        counts = Counter(_check_citations(c) for c in citations)
        if not counts:
            raise EmptyDistribution("a citation distribution needs at least one paper")
        return cls.from_counts(counts, key)

    # -- views ---------------------------------------------------------

    @property
    def ccs(self) -> tuple[int, ...]:
        return tuple(cc for cc, _ in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.entries)

    @cached_property
    def cumulative(self) -> tuple[int, ...]:
        """Papers at or below each citation count."""
        out, total = [], 0
        for _, k in self.entries:
            total += k
            out.append(total)
        return tuple(out)

    @property
    def n(self) -> int:
        return self.cumulative[-1]

    @property
    def min_cc(self) -> int:
        return self.entries[0][0]

    @property
    def max_cc(self) -> int:
        return self.entries[-1][0]

    def __len__(self):
        return len(self.entries)

    def __contains__(self, cc):
        return cc in self._index

    def position(self, cc: int) -> int:
        """0-based index of ``cc`` among the unique citation counts."""
        try:
            return self._index[cc]
        except (KeyError, TypeError):
            raise UnknownCitationCount(f"citation count {cc!r} does not occur in the distribution") from None

    def count(self, cc: int) -> int:
        return self.entries[self.position(cc)][1]

    def below(self, cc: int) -> int:
        """Number of papers with strictly fewer citations than ``cc``."""
        pos = self.position(cc)
        return self.cumulative[pos - 1] if pos else 0

    def at_or_below(self, cc: int) -> int:
        return self.cumulative[self.position(cc)]

    def at_or_above(self, cc: int) -> int:
        return self.n - self.below(cc)

    def count_below_value(self, x: float) -> int:
        """Papers with citation count strictly below an arbitrary value ``x``."""
        pos = bisect_left(self.ccs, x)
        return self.cumulative[pos - 1] if pos else 0

    def expand(self) -> list[int]:
        """One citation count per paper, ascending."""
        return [cc for cc, k in self.entries for _ in range(k)]


def build_distribution(records: Sequence[PublicationRecord], key: CellKey) -> CitationDistribution:
    """Aggregate the records of one (year, category) cell by citation count."""
    year, category = key
    counts: Counter[int] = Counter()
    for rec in records:
        if rec.year != year or category not in rec.categories:
            raise ValueError(f"record {rec.paper_id!r} does not belong to cell {key!r}")
        counts[rec.citations] += 1
    if not counts:
        raise EmptyDistribution(f"cell {key!r} has no papers")
    return CitationDistribution.from_counts(counts, key)


def mean_ranks(dist: CitationDistribution) -> dict[int, float]:
    """Ascending ranks 1..n; tied papers get the mean of their positions."""
    out = {}
    below = 0
    for cc, k in dist.entries:
        out[cc] = below + (k + 1) / 2
        below += k
    return out


def unique_value_ranks(dist: CitationDistribution) -> dict[int, tuple[int, int]]:
    """Map each cc to ``(i, j)``.

    ``i`` is the 0-based position among unique counts and ``j`` the number
    of papers with strictly fewer citations.
    """
    out = {}
    below = 0
    for i, (cc, k) in enumerate(dist.entries):
        out[cc] = (i, below)
        below += k
    return out
