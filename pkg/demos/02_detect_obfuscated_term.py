"""Flag the substituted term in a sentence, end to end.

Shows every stage: tokenizing, tagging, bag-of-terms reduction, the
leave-one-out MACS scores, and the final JSON-serializable result.

Run from the repository root:  python3 demos/02_detect_obfuscated_term.py
"""

from pathlib import Path

from macskit import TextPipeline, detect, load_graph_tsv, pair_comparison_count

DATA = Path(__file__).parent / "data"

graph, _ = load_graph_tsv(DATA / "toy_kb.tsv")
pipeline = TextPipeline()

# "We will attack the airport with bomb" had its red-flag term swapped for
# an innocuous one; the detector should point straight at it.
sentence = "We will attack the airport with flower"

# ---- the pipeline, stage by stage ------------------------------------------
tagged = pipeline.tagged(sentence)
print("tagged: ", " ".join(f"{t.surface}/{t.tag}" for t in tagged))

bag = pipeline.bag(sentence)
print("bag:    ", bag.lemmas())
print(f"cost:    one score over this bag = "
      f"{pair_comparison_count(len(bag))} directed queries (before memoization)")

# ---- detection --------------------------------------------------------------
result = detect(sentence, graph)
print("\nper-term scores (lower = removing the rest leaves it out of context):")
for breakdown in result.ranking:
    pairs = ", ".join(f"{i}~{j}={v}" for i, j, v in breakdown.pair_scores)
    print(f"  {breakdown.term:>8}: {breakdown.score:.2f}   [{pairs}]")
print(f"\nflagged: {result.flagged!r}   aggregate mean {result.aggregate_mean:.2f}")
print("json:   ", result.to_json())

# ---- a second sentence -------------------------------------------------------
second = "Pen will be delivered to you to shoot the president"
result = detect(second, graph)
print(f"\n{second!r}\n  -> flagged {result.flagged!r}, scores {result.scores()}")

# ---- sentences that cannot be scored ----------------------------------------
for too_small in ("That was before I studied both", "The jews had been expected"):
    result = detect(too_small, graph)
    print(f"\n{too_small!r}\n  -> NA ({result.na_reason}, bag size {result.bag_size})")
