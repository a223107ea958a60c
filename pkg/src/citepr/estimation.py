"""Citation counts for given percentile ranks, and the reverse.

Two estimators are provided.

Interval point-estimates treat each integer citation count as the middle
of an interval of width ``w`` (default 1, i.e. +/- 0.5) and fill the gaps
between observed counts with empty intervals.  Within the selected
interval papers are assumed spread evenly, which gives a piecewise
linear, real valued mapping between citation counts and percentile ranks.

Linear interpolation works on any ascending set of ``(cc, pr)`` anchor
points, by default the attained (cc, CP) pairs of a distribution.

Interval selection is fixed so results are deterministic: for a target
``n * p`` the interval is the observed one with
``cf_below <= n * p < cf_below + f``.  When ``n * p`` equals a
cumulative frequency exactly the higher interval wins, which makes the
estimate right-continuous in ``p``.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from .distributions import CitationDistribution
from .errors import OutOfEstimableRange, OutOfRange

__all__ = [
    "Variant",
    "IntervalRow",
    "ExpandedIntervalTable",
    "expand_intervals",
    "cc_for_pr",
    "pr_for_cc",
    "anchors_from_distribution",
    "interpolate_cc",
    "interpolate_pr",
]

Variant = Literal["cp-in", "cp-ex"]
_VARIANTS = ("cp-in", "cp-ex")

# slack when matching n*p against integer cumulative frequencies
_TIE_TOL = 1e-9


def _check_variant(variant: str) -> str:
    v = variant.lower().replace("_", "-")
    if v not in _VARIANTS:
        raise ValueError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    return v


def _check_width(width: float) -> float:
    width = float(width)
    if not width > 0 or math.isinf(width):
        raise ValueError(f"interval width must be positive and finite, got {width}")
    return width


@dataclass(frozen=True)
class _Bins:
    """Non-empty intervals of a distribution, ascending."""

    origin: float
    width: float
    index: tuple[int, ...]  # interval number counted from the minimum cc
    freq: tuple[int, ...]
    cum: tuple[int, ...]  # papers in this interval and all below
    n: int

    def lb(self, pos: int) -> float:
        return self.origin + self.index[pos] * self.width - self.width / 2

    def cum_below(self, pos: int) -> int:
        return self.cum[pos - 1] if pos else 0


def _bins(dist: CitationDistribution, width: float) -> _Bins:
    origin = dist.min_cc
    index: list[int] = []
    freq: list[int] = []
    for cc, k in dist.entries:
        b = math.floor((cc - origin) / width + 0.5)
        if index and index[-1] == b:
            freq[-1] += k
        else:
            index.append(b)
            freq.append(k)
    cum, total = [], 0
    for k in freq:
        total += k
        cum.append(total)
    return _Bins(origin, width, tuple(index), tuple(freq), tuple(cum), total)


@dataclass(frozen=True)
class IntervalRow:
    cc: float
    lb: float
    ub: float
    f: int
    cf: int
    percent: float
    cp: float


@dataclass(frozen=True)
class ExpandedIntervalTable:
    """Gap-free interval table of a distribution.

    For ``cp-in`` the cumulative frequency ``cf`` includes the row's own
    papers; for ``cp-ex`` it counts only the papers in lower rows.
    """

    variant: str
    width: float
    n: int
    rows: tuple[IntervalRow, ...]


def expand_intervals(dist: CitationDistribution, variant: Variant = "cp-in", width: float = 1.0) -> ExpandedIntervalTable:
    variant = _check_variant(variant)
    width = _check_width(width)
    bins = _bins(dist, width)
    n = bins.n
    freq_at = dict(zip(bins.index, bins.freq))
    rows = []
    cf = 0
    for b in range(bins.index[-1] + 1):
        f = freq_at.get(b, 0)
        centre = bins.origin + b * width
        shown = cf + f if variant == "cp-in" else cf
        rows.append(
            IntervalRow(
                cc=centre,
                lb=centre - width / 2,
                ub=centre + width / 2,
                f=f,
                cf=shown,
                percent=100.0 * f / n,
                cp=100.0 * shown / n,
            )
        )
        cf += f
    return ExpandedIntervalTable(variant, width, n, tuple(rows))


def cc_for_pr(dist: CitationDistribution, p: float, variant: Variant = "cp-in", width: float = 1.0) -> float:
    """Estimate the (real valued) citation count at percentile rank ``100 * p``.

    Parameters
    ----------
    dist : CitationDistribution
    p : float
        Proportion in (0, 1].
    variant : {"cp-in", "cp-ex"}
        ``cp-ex`` shifts the estimate up by one interval width, since a
        paper's CP-EX counts only papers below it.
    width : float
        Interval width around each citation count.

    Raises
    ------
    OutOfEstimableRange
        If ``100 * p`` is not above the lowest attained CP value of the
        variant (the CP-IN share of the least cited papers, or 0 for
        CP-EX) or exceeds 100.
    """
    variant = _check_variant(variant)
    width = _check_width(width)
    bins = _bins(dist, width)
    n = bins.n
    target = n * p
    nearest = round(target)
    snapped = nearest if abs(target - nearest) <= _TIE_TOL else target

    floor = bins.cum[0] if variant == "cp-in" else 0
    if not (floor < snapped <= n):
        lo = 100.0 * floor / n
        raise OutOfEstimableRange(f"percentile rank {100 * p:g} is outside the estimable range ({lo:g}, 100] for {variant}")

    pos = min(bisect_right(bins.cum, snapped), len(bins.cum) - 1)
    lb = bins.lb(pos)
    cf = bins.cum_below(pos)
    f = bins.freq[pos]
    shift = width if variant == "cp-ex" else 0.0
    return lb + shift + (target - cf) / f * width


def pr_for_cc(dist: CitationDistribution, x: float, variant: Variant = "cp-in", width: float = 1.0) -> float:
    """Estimate the percentile rank of a (real valued) citation count ``x``.

    The exact inverse of :func:`cc_for_pr` on its range.  ``x`` may lie
    anywhere in ``[min_cc - w/2, max_cc + w/2]`` for CP-IN; for CP-EX the
    upper end moves up by one width.  Values in empty gap intervals map to
    the cumulative share below the gap.
    """
    variant = _check_variant(variant)
    width = _check_width(width)
    bins = _bins(dist, width)
    shift = width if variant == "cp-ex" else 0.0
    lo = bins.lb(0)
    hi = bins.lb(len(bins.index) - 1) + width + shift
    if not (lo <= x <= hi) or math.isnan(x):
        raise OutOfEstimableRange(f"citation value {x:g} is outside [{lo:g}, {hi:g}] for {variant}")

    y = x - shift
    lbs = [bins.lb(i) for i in range(len(bins.index))]
    pos = bisect_right(lbs, y) - 1
    if pos < 0:
        return 0.0
    lb = lbs[pos]
    if y < lb + width:
        cf = bins.cum_below(pos) + (y - lb) / width * bins.freq[pos]
    else:
        cf = bins.cum[pos]
    return 100.0 * cf / bins.n


# -- linear interpolation ----------------------------------------------------


def anchors_from_distribution(dist: CitationDistribution, variant: Variant = "cp-ex") -> list[tuple[float, float]]:
    """Attained ``(cc, cp)`` pairs of the chosen CP variant."""
    variant = _check_variant(variant)
    out = []
    below = 0
    n = dist.n
    for cc, k in dist.entries:
        cum = below + k if variant == "cp-in" else below
        out.append((float(cc), 100.0 * cum / n))
        below += k
    return out


def _prepare(anchors: Sequence[tuple[float, float]]) -> tuple[list[float], list[float]]:
    pts = sorted(set((float(c), float(r)) for c, r in anchors))
    if len(pts) < 1:
        raise ValueError("at least one anchor is required")
    ccs = [c for c, _ in pts]
    prs = [r for _, r in pts]
    for a, b in zip(pts, pts[1:]):
        if not (b[0] > a[0] and b[1] > a[1]):
            raise ValueError(f"anchors must increase strictly in both coordinates: {a} -> {b}")
    return ccs, prs


def _interp(xs: list[float], ys: list[float], t: float, what: str) -> float:
    if math.isnan(t) or t < xs[0] or t > xs[-1]:
        raise OutOfRange(f"{what} {t:g} outside anchor span [{xs[0]:g}, {xs[-1]:g}]")
    hi = bisect_left(xs, t)
    if xs[hi] == t:
        return ys[hi]
    lo = hi - 1
    return ys[lo] + (t - xs[lo]) * (ys[hi] - ys[lo]) / (xs[hi] - xs[lo])


def interpolate_cc(anchors: Sequence[tuple[float, float]], pr_target: float) -> float:
    """Citation count at ``pr_target`` by linear interpolation between the
    neighbouring anchors.  No extrapolation."""
    ccs, prs = _prepare(anchors)
    return _interp(prs, ccs, pr_target, "percentile rank")


def interpolate_pr(anchors: Sequence[tuple[float, float]], cc_target: float) -> float:
    ccs, prs = _prepare(anchors)
    return _interp(ccs, prs, cc_target, "citation count")
