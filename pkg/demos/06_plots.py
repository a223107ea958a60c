"""Beamplot and bar graph of unit results, written as SVG plus JSON.

Run: python demos/06_plots.py [out_dir]
"""
import sys
import tempfile
from pathlib import Path

from citepr import build_corpus, compute_all
from citepr.plots import emit_bargraph, emit_beamplot, summary_data
from citepr.synthetic import synthetic_records

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
out.mkdir(parents=True, exist_ok=True)

store = compute_all(build_corpus(synthetic_records(20_000, n_cells=60, years=6, n_units=120, seed=11)))
units = store.units()

# One beam per publication year; small diamonds are papers, big ones the
# yearly means, the solid line the overall mean and the dashed line 50.
svg, data = emit_beamplot(store, units[0], "cp-ex")
(out / "beamplot.svg").write_text(svg)
(out / "beamplot.json").write_text(data)

# Paired bars per unit: CP-IN and CP-EX means with fractional counting.
svg, data = emit_bargraph(store, units[:6])
(out / "bargraph.svg").write_text(svg)
(out / "bargraph.json").write_text(data)

for year in summary_data(store)["series"]:
    print(year["year"], "median CP-IN", round(year["cp_in"]["median"], 2), "median CP-EX", round(year["cp_ex"]["median"], 2))
print("wrote", sorted(p.name for p in out.iterdir()), "to", out)
