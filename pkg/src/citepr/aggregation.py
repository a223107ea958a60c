"""Combine percentile ranks across categories, papers and units.

* :func:`weighted_pr` - one value per paper from its per-category PRs,
  weighted by the size of each (year, category) cell.
* :func:`mean_weighted_pr` / :func:`mean_weighted_pr_fractional` - one
  value per unit from its papers' weighted PRs, optionally with
  fractional unit assignment.
* :func:`top_x_fractional` - P(top x%) credits with ties at the threshold
  shared fractionally.
* :func:`i3` and the ``I3(PC-W, ...)`` notation.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .distributions import CellKey, CitationDistribution
from .errors import (
    I3SyntaxError,
    InvalidConfig,
    InvalidFraction,
    NoCategories,
    NonDecreasingThresholds,
    NoPapers,
)

__all__ = [
    "CategoryPR",
    "PaperScore",
    "UnitScore",
    "I3Config",
    "weighted_pr",
    "incites_min_rule",
    "mean_weighted_pr",
    "mean_weighted_pr_fractional",
    "TopXCredits",
    "top_x_fractional",
    "i3",
    "parse_i3_notation",
    "print_i3_notation",
]


@dataclass(frozen=True)
class CategoryPR:
    category: str
    year: int
    pr: float | None
    n: int


@dataclass(frozen=True)
class PaperScore:
    """A paper's PRs in each of its cells plus the size-weighted PR."""

    paper_id: str
    per_category: tuple[CategoryPR, ...]
    wpr: float | None

    @property
    def cells(self) -> list[CellKey]:
        return [(c.year, c.category) for c in self.per_category]


@dataclass(frozen=True)
class UnitScore:
    unit: str
    papers: int
    mwpr: float
    mwpr_f: float
    fr_sum: float


def weighted_pr(per_category: Iterable[tuple[float, int]]) -> float:
    """Mean of per-category PRs weighted by cell size ``n_SC``.

    >>> round(weighted_pr([(82.35, 68), (76.64, 411)]), 2)
    77.45
    """
    pairs = list(per_category)
    if not pairs:
        raise NoCategories("a paper needs at least one category PR")
    num = 0.0
    den = 0
    for pr, n in pairs:
        if n < 1:
            raise ValueError(f"cell size must be >= 1, got {n}")
        num += pr * n
        den += n
    if len(pairs) == 1:
        return float(pairs[0][0])
    return num / den


def incites_min_rule(values: Sequence[float]) -> float:
    """Best-performing category under InCites' convention (closest to zero).

    Kept for comparison with :func:`weighted_pr`; it overstates
    performance when a paper's categories disagree.
    """
    if not values:
        raise NoCategories("a paper needs at least one category value")
    return min(values)


def mean_weighted_pr(wprs: Sequence[float]) -> float:
    if len(wprs) == 0:
        raise NoPapers("a unit needs at least one paper")
    return math.fsum(wprs) / len(wprs)


def mean_weighted_pr_fractional(pairs: Sequence[tuple[float, float]]) -> float:
    """Mean of weighted PRs, each paper weighted by the unit's fraction of it."""
    if not pairs:
        raise NoPapers("a unit needs at least one paper")
    frs = [fr for _, fr in pairs]
    if not (min(frs) > 0.0 and max(frs) <= 1.0):
        bad = next(fr for fr in frs if not 0.0 < fr <= 1.0)
        raise InvalidFraction(f"fraction must be in (0, 1], got {bad}")
    if min(frs) == max(frs):
        # equal weights cancel; keeps the result identical to the plain mean
        return mean_weighted_pr([w for w, _ in pairs])
    return math.fsum([w * fr for w, fr in pairs]) / math.fsum(frs)


# -- P(top x%) ---------------------------------------------------------------


@dataclass(frozen=True)
class TopXCredits:
    """Per-paper credit for belonging to the top ``x`` percent.

    ``credits`` maps each citation count to the credit every paper with that
    count receives; ``threshold`` is the citation count whose papers are
    split, if any.
    """

    x_percent: float
    credits: dict[int, float]
    total: float
    threshold: int | None


def top_x_fractional(dist: CitationDistribution, x_percent: float) -> TopXCredits:
    """Credits summing to ``x_percent * n / 100``.

    Papers above the threshold count fully, tied papers at the threshold
    share what is left of the quota equally, papers below get nothing.
    """
    if not 0.0 < x_percent < 100.0:
        raise ValueError(f"x_percent must be in (0, 100), got {x_percent}")
    quota = x_percent * dist.n / 100.0
    credits: dict[int, float] = {}
    taken = 0
    threshold = None
    for cc, k in reversed(dist.entries):
        if threshold is not None:
            credits[cc] = 0.0
        elif taken + k <= quota:
            credits[cc] = 1.0
            taken += k
            if taken == quota:
                threshold = cc
        else:
            credits[cc] = (quota - taken) / k
            threshold = cc
    total = math.fsum(credits[cc] * k for cc, k in dist.entries)
    return TopXCredits(x_percent, dict(sorted(credits.items())), total, threshold)


# -- I3 ----------------------------------------------------------------------


@dataclass(frozen=True)
class I3Config:
    """Percentile classes ``(lower threshold, weight)``, highest class first."""

    classes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        classes = tuple((float(t), float(w)) for t, w in self.classes)
        if not classes:
            raise InvalidConfig("I3 needs at least one class")
        for t, w in classes:
            if not 0.0 <= t < 100.0:
                raise InvalidConfig(f"class threshold must be in [0, 100), got {t:g}")
            if not w >= 0.0 or math.isinf(w):
                raise InvalidConfig(f"class weight must be finite and >= 0, got {w:g}")
        for (a, _), (b, _) in zip(classes, classes[1:]):
            if not b < a:
                raise NonDecreasingThresholds(f"thresholds must strictly decrease: {a:g} then {b:g}")
        object.__setattr__(self, "classes", classes)

    def class_of(self, pr: float) -> int | None:
        """Index of the class holding ``pr``; ``None`` below the lowest threshold.

        Classes are half-open ``[PC_i, PC_{i-1})``; the top one includes 100.
        """
        for idx, (t, _) in enumerate(self.classes):
            if pr >= t:
                return idx
        return None

    def __str__(self):
        return print_i3_notation(self)


def i3(paper_prs: Iterable[float], config: I3Config) -> float:
    """Weighted count of papers per percentile class."""
    if not isinstance(config, I3Config):
        raise InvalidConfig("config must be an I3Config")
    counts = [0] * len(config.classes)
    for pr in paper_prs:
        if not 0.0 <= pr <= 100.0:
            raise ValueError(f"percentile rank must be in [0, 100], got {pr}")
        idx = config.class_of(pr)
        if idx is not None:
            counts[idx] += 1
    return math.fsum(x * w for x, (_, w) in zip(counts, config.classes))


_NUMBER = re.compile(r"\d+(?:\.\d+)?|\.\d+")
_DASHES = "-–−"


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, chars, what):
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] in chars:
            self.pos += 1
            return
        raise I3SyntaxError(f"expected {what}", self.text, self.pos)

    def number(self, what):
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise I3SyntaxError(f"expected {what}", self.text, self.pos)
        self.pos = m.end()
        return float(m.group())

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""


def parse_i3_notation(text: str) -> I3Config:
    """Parse ``I3(99-100, 90-10)`` style notation.

    En dash and minus sign are accepted as separators too.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    if not text.startswith("I3", sc.pos):
        raise I3SyntaxError("expected 'I3'", text, sc.pos)
    sc.pos += 2
    sc.expect("(", "'('")
    classes = []
    while True:
        threshold = sc.number("class threshold")
        sc.expect(_DASHES, "'-'")
        weight = sc.number("class weight")
        classes.append((threshold, weight))
        if sc.peek() == ",":
            sc.pos += 1
            continue
        sc.expect(")", "',' or ')'")
        break
    sc.skip_ws()
    if sc.pos != len(text):
        raise I3SyntaxError("unexpected trailing text", text, sc.pos)
    return I3Config(tuple(classes))


def _fmt(x: float) -> str:
    return str(int(x)) if x.is_integer() else repr(x)


def print_i3_notation(config: I3Config) -> str:
    return "I3(" + ", ".join(f"{_fmt(t)}-{_fmt(w)}" for t, w in config.classes) + ")"
