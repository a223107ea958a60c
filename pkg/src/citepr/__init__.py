"""Percentile-based citation impact indicators.

Percentile ranks are computed per (publication year, subject category)
cell, aggregated across a paper's categories and across the papers of a
unit, and presented as tables, bar graphs and beamplots.
"""

__version__ = "0.1.0"

from .aggregation import (
    I3Config,
    PaperScore,
    TopXCredits,
    UnitScore,
    i3,
    incites_min_rule,
    mean_weighted_pr,
    mean_weighted_pr_fractional,
    parse_i3_notation,
    print_i3_notation,
    top_x_fractional,
    weighted_pr,
)
from .corpus import Corpus, ScoreStore, build_corpus, compute_all, ingest, save_store, unit_report
from .distributions import CitationDistribution, PublicationRecord, build_distribution, mean_ranks, unique_value_ranks
from .errors import *  # noqa: F401,F403
from .estimation import (
    anchors_from_distribution,
    cc_for_pr,
    expand_intervals,
    interpolate_cc,
    interpolate_pr,
    pr_for_cc,
)
from .indicators import INDICATORS, IndicatorTable, display, indicator_table

__all__ = [
    "CitationDistribution",
    "PublicationRecord",
    "build_distribution",
    "mean_ranks",
    "unique_value_ranks",
    "INDICATORS",
    "IndicatorTable",
    "indicator_table",
    "display",
    "expand_intervals",
    "cc_for_pr",
    "pr_for_cc",
    "anchors_from_distribution",
    "interpolate_cc",
    "interpolate_pr",
    "weighted_pr",
    "incites_min_rule",
    "mean_weighted_pr",
    "mean_weighted_pr_fractional",
    "top_x_fractional",
    "TopXCredits",
    "I3Config",
    "i3",
    "parse_i3_notation",
    "print_i3_notation",
    "PaperScore",
    "UnitScore",
    "Corpus",
    "ScoreStore",
    "build_corpus",
    "ingest",
    "compute_all",
    "unit_report",
    "save_store",
]
