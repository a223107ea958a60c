"""From a percentile rank to a citation count, and back.

Run: python demos/02_estimate_citations.py
"""
from citepr import CitationDistribution, anchors_from_distribution, cc_for_pr, expand_intervals, interpolate_cc, interpolate_pr, pr_for_cc
from citepr.errors import OutOfEstimableRange

cell = CitationDistribution.from_citations([20, 20, 13, 13, 10, 9, 8, 8, 7, 7, 7, 7, 3, 2, 1, 1, 1, 0, 0, 0, 0])

# Interval point-estimates: each count is the centre of a unit-width
# interval, empty counts are filled in, and papers are spread evenly
# inside an interval.
expanded = expand_intervals(cell, "cp-in")
print("intervals 6..9:")
for row in expanded.rows[6:10]:
    print(f"  [{row.lb:5.1f}, {row.ub:5.1f})  f={row.f}  cf={row.cf:2d}  CP-IN={row.cp:6.2f}")

for p in (0.50, 0.75, 0.90):
    print(f"CP-IN {int(p * 100)}th percentile -> {cc_for_pr(cell, p, 'cp-in'):.4g} citations")
print(f"CP-EX 90th percentile -> {cc_for_pr(cell, 0.90, 'cp-ex'):.4g} citations")

# The mapping is invertible on its range.
x = cc_for_pr(cell, 0.5)
print(f"back again: {x} citations -> PR {pr_for_cc(cell, x):.10g}")

# Below the share of zero-cited papers nothing can be estimated.
try:
    cc_for_pr(cell, 0.04)
except OutOfEstimableRange as exc:
    print("refused:", exc)

# Linear interpolation between the attained (cc, CP-EX) points.
anchors = anchors_from_distribution(cell, "cp-ex")
print("interpolated cc at PR 80:", round(interpolate_cc(anchors, 80), 10))
print("interpolated PR at 5 citations:", round(interpolate_pr(anchors, 5), 4))
