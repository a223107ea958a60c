"""Synthetic corpora with skewed citation counts, for tests and demos."""

from __future__ import annotations

import numpy as np

from .distributions import PublicationRecord

__all__ = ["power_law_citations", "synthetic_records"]

# share of papers with 1..6 categories; most papers sit in a single one
CATEGORY_MIX = (0.585, 0.285, 0.103, 0.021, 0.004, 0.002)


def power_law_citations(rng: np.random.Generator, size: int, alpha: float = 1.6, scale: float = 6.0) -> np.ndarray:
    """Discrete Lomax (Pareto II) draws: many low counts, a long tail."""
    u = rng.random(size)
    return np.floor(scale * ((1.0 - u) ** (-1.0 / alpha) - 1.0)).astype(np.int64)


def synthetic_records(
    n_records: int,
    n_cells: int = 60,
    *,
    years: int = 6,
    n_units: int = 50,
    seed: int = 0,
    alpha: float = 1.6,
) -> list[PublicationRecord]:
    """Records spread over ``n_cells`` (year, category) combinations.

    Categories are split evenly across ``years`` publication years.
    Multi-category papers draw their extra categories from the same year.
    Each paper gets 1 to 3 units with equal fractions.
    """
    if n_cells < years:
        raise ValueError("need at least one category per year")
    rng = np.random.default_rng(seed)
    per_year = n_cells // years
    extra = n_cells - per_year * years
    cats_in_year = [per_year + (1 if y < extra else 0) for y in range(years)]
    year_idx = rng.integers(0, years, n_records)
    cc = power_law_citations(rng, n_records, alpha=alpha)
    k_cats = rng.choice(np.arange(1, 7), size=n_records, p=np.array(CATEGORY_MIX) / sum(CATEGORY_MIX))
    k_units = rng.integers(1, 4, n_records)
    unit_draw = rng.integers(0, n_units, (n_records, 3))
    cat_draw = rng.random((n_records, 6))

    out = []
    for i in range(n_records):
        y = int(year_idx[i])
        pool = cats_in_year[y]
        k = min(int(k_cats[i]), pool)
        # distinct categories: take the k smallest random keys of the pool
        picks = np.argsort(rng.random(pool))[:k] if k > 1 else [int(cat_draw[i, 0] * pool)]
        cats = tuple(f"SC{y:02d}-{int(c):03d}" for c in sorted(picks))
        us = sorted({f"U{int(u):03d}" for u in unit_draw[i, : int(k_units[i])]})
        units = tuple((u, 1.0 / len(us)) for u in us)
        out.append(PublicationRecord(f"P{i:07d}", 2000 + y, int(cc[i]), cats, units))
    return out
