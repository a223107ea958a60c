"""Papers in several categories, units sharing papers.

Two cells of 68 and 411 papers share papers A (100 citations) and B
(20 citations); both belong to one unit.

Run: python demos/03_aggregate_units.py
"""
from pathlib import Path

from citepr import compute_all, display, incites_min_rule, ingest, mean_weighted_pr_fractional, parse_i3_notation, i3, unit_report

store = compute_all(ingest(Path(__file__).parent.parent / "tests" / "data" / "two_cells.csv"))

for pid in ("A", "B"):
    score = store.paper_score(pid, "cp_ex")
    parts = ", ".join(f"{c.category} (n={c.n}): {display(c.pr)}" for c in score.per_category)
    plain = sum(c.pr for c in score.per_category) / len(score.per_category)
    best = incites_min_rule([100 - c.pr for c in score.per_category])
    print(f"paper {pid}: {parts}")
    print(f"  size-weighted {display(score.wpr)}, unweighted {display(plain)}, best-category rule {display(100 - best)}")

rep = unit_report(store, "UNIT", "cp_ex")
print(f"unit mean of weighted PRs: {display(rep.mwpr)} over {rep.papers} papers")

# Fractional counting: had the unit owned only half of paper A, A would
# count half as much.
half = mean_weighted_pr_fractional([(store.paper_wpr("A"), 0.5), (store.paper_wpr("B"), 1.0)])
print(f"with A at fraction 0.5: {display(half)}")

# I3 scores papers by percentile class.
cfg = parse_i3_notation("I3(99-100, 90-10)")
prs = [store.paper_wpr(p) for p, _ in store.papers_of("UNIT")]
print(f"{cfg} = {i3(prs, cfg)}")
