"""Build a concept graph from an assertion TSV and query path distances.

Walks through the storage layer: loading assertions, the binary cache
round-trip, and the three interchangeable shortest-path algorithms with the
no-path default.

Run from the repository root:  python3 demos/01_build_and_query_graph.py
"""

from pathlib import Path
from tempfile import TemporaryDirectory

from macskit import AlgoChoice, PathEngine, load_cache, load_graph_tsv, save_cache

DATA = Path(__file__).parent / "data"

# ---- 1. load the assertion TSV --------------------------------------------
graph, stats = load_graph_tsv(DATA / "toy_kb.tsv")
print(f"loaded {graph.node_count} concepts, {graph.edge_count} directed edges")
print(f"  ({stats.lines} lines: {stats.comments} comments, "
      f"{stats.malformed} malformed, {stats.duplicates} duplicates)")

# ---- 2. cache round-trip ---------------------------------------------------
# Real knowledge bases have millions of assertions; parse once, then reload
# the compact binary cache on every run.
with TemporaryDirectory() as tmp:
    cache = Path(tmp) / "toy_kb.bin"
    save_cache(graph, cache)
    reloaded = load_cache(cache)
    print(f"cache round-trip: {cache.stat().st_size} bytes, "
          f"{reloaded.node_count} concepts back")

# ---- 3. directed shortest paths -------------------------------------------
engine = PathEngine(graph)  # memoizes per-source distance maps

a, b = graph.id_of("attack"), graph.id_of("airport")
forward = engine.shortest_path(a, b, want_nodes=True)
backward = engine.shortest_path(b, a, want_nodes=True)
print(f"\nattack -> airport: {forward.hops} hops via {' -> '.join(forward.nodes)}")
print(f"airport -> attack: {backward.hops} hops via {' -> '.join(backward.nodes)}")

# Direction matters: a directed graph can have a path one way only.
print("\nbomb -> blast:", engine.directed_distance("bomb", "blast"))
print("blast -> bomb:", engine.directed_distance("blast", "bomb"),
      "(no directed path, default applies)")

# ---- 4. conceptual similarity ----------------------------------------------
# The similarity of two concepts is the mean of the two directed distances.
print("\npair similarities (mean of both directions):")
for pair in [("tree", "branch"), ("pen", "blood"), ("paper", "tree"),
             ("airline", "pen"), ("bomb", "blast")]:
    score = engine.conceptual_similarity(*pair)
    print(f"  {pair[0]:>8} / {pair[1]:<8} "
          f"{score.a_to_b:>4} {score.b_to_a:>4}  mean {score.value}")

# All three algorithms are exact on unit weights, so lengths always agree.
print("\nsame query under each algorithm:")
for algo in AlgoChoice:
    value = engine.conceptual_similarity("pen", "blood", algo).value
    print(f"  {algo.value:>8}: {value}")
