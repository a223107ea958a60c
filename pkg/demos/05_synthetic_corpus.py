"""Scoring a synthetic corpus end to end and writing the store.

Run: python demos/05_synthetic_corpus.py [n_records] [out_dir]
"""
import sys
import tempfile
import time
from pathlib import Path

from citepr import compute_all, ingest, save_store
from citepr.corpus import write_records_csv
from citepr.synthetic import synthetic_records

n = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
out = Path(sys.argv[2]) if len(sys.argv) > 2 else Path(tempfile.mkdtemp()) / "store"

records = synthetic_records(n, n_cells=max(6, n // 700), seed=1)
src = out.parent / "records.csv"
src.parent.mkdir(parents=True, exist_ok=True)
write_records_csv(records, src)
del records

t0 = time.perf_counter()
corpus = ingest(src)
store = compute_all(corpus)
manifest = save_store(store, out)
print(f"{manifest['records']} records, {manifest['cells']} cells, {manifest['cell_occurrences']} cell occurrences")
print(f"ingest + score + save: {time.perf_counter() - t0:.1f}s -> {out}")
print("corpus sha256:", manifest["corpus_sha256"][:16], "...")
