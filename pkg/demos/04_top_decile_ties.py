"""Top 10% membership when the threshold falls inside a tie.

Run: python demos/04_top_decile_ties.py
"""
from citepr import CitationDistribution, top_x_fractional

# 100 papers: 5 with 20 citations, 20 with 10, 75 with 1.  Ten papers
# belong in the top 10%, but the 20 papers at 10 citations are
# indistinguishable, so they share the five remaining places.
cell = CitationDistribution.from_counts({20: 5, 10: 20, 1: 75})
res = top_x_fractional(cell, 10)
for cc, credit in sorted(res.credits.items(), reverse=True):
    print(f"{cc:>3} citations: {cell.count(cc):>2} papers x {credit:.2f}")
print("total credit:", res.total)
