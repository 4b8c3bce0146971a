"""Score a labeled dataset and emit the per-sentence distribution CSV.

Runs the embedded 22-sentence reference set against the toy graph.  The
reference run for this set reported 16/22 against a full knowledge-base
snapshot; on the toy graph most terms are out of vocabulary, which is
exactly the kind of honest degradation the report surfaces.

Run from the repository root:  python3 demos/04_evaluate_and_distributions.py
"""

from pathlib import Path

from macskit import (
    AlgoChoice,
    distributions_csv,
    emit_distributions,
    erp_records,
    evaluate,
    load_graph_tsv,
)

DATA = Path(__file__).parent / "data"

graph, _ = load_graph_tsv(DATA / "toy_kb.tsv")
records = erp_records()

# ---- accuracy report -----------------------------------------------------
report = evaluate(records, graph)
print(f"total {report.total} = correct {report.correct} "
      f"+ incorrect {report.incorrect} + na {report.na}")
print(f"computed accuracy: {report.accuracy:.4f} "
      "(NA sentences stay in the denominator)")

print("\nfirst six verdicts:")
for verdict in report.per_sentence[:6]:
    print(f"  [{verdict.verdict:>9}] flagged={verdict.flagged!r} "
          f"truth={verdict.truth!r}  {verdict.sentence[:50]}")

# ---- distribution CSV ------------------------------------------------------
# One row per (sentence, algorithm): the minimum MACS score and the plain
# average path length over all bag pairs. NA marks bags too small to score.
rows = emit_distributions(records[:6], graph, list(AlgoChoice))
print("\n" + distributions_csv(rows))
