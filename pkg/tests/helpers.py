from pathlib import Path

import numpy as np
from hypothesis import strategies as st

from citepr import CitationDistribution

DATA = Path(__file__).parent / "data"


def skewed_distribution(rng: np.random.Generator, max_n: int = 5000) -> CitationDistribution:
    """Random heavy-tailed distribution with many ties near zero.

    Sizes are log-uniform on [1, max_n] so tiny cells are well represented.
    """
    n = min(max_n, int(np.exp(rng.uniform(0.0, np.log(max_n + 1)))))
    alpha = rng.uniform(0.8, 3.0)
    scale = rng.uniform(0.5, 20.0)
    ccs = np.floor(scale * (rng.pareto(alpha, n))).astype(np.int64)
    return CitationDistribution.from_citations(ccs.tolist())


@st.composite
def distributions(draw, max_unique=25, max_count=40):
    ccs = draw(st.lists(st.integers(0, 500), min_size=1, max_size=max_unique, unique=True))
    counts = draw(st.lists(st.integers(1, max_count), min_size=len(ccs), max_size=len(ccs)))
    return CitationDistribution.from_counts(dict(zip(ccs, counts)))


# (criterion, title, passed, detail) in the order the acceptance tests ran
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def record(criterion: int, title: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.append((criterion, title, passed, detail))
