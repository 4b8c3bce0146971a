"""Shared fixtures: the three hand-built knowledge-graph fixtures.

The two worked-example graphs contain exactly the directed paths quoted for
those sentences (nothing else), so every shortest-path length below is
forced by construction and was verified by hand before the tests froze it.
"""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from macskit import Assertion, ConceptGraph, build_graph

# Worked example 1: "We will attack the airport with flower".
# Six quoted directed paths; 12 distinct concepts, 15 distinct edges
# (flower->be and human->attack each appear twice).
EX1_PATHS = (
    ("airport", "city", "person", "flower"),
    ("flower", "be", "time", "airport"),
    ("attack", "punch", "hand", "flower"),
    ("flower", "be", "human", "attack"),
    ("attack", "terrorist", "airport"),
    ("airport", "airplane", "human", "attack"),
)

# Worked example 2: "Pen will be delivered to you to shoot the president".
EX2_PATHS = (
    ("president", "person", "shoot"),
    ("shoot", "fire", "orange", "president"),
    ("president", "ruler", "line", "pen"),
    ("pen", "dog", "person", "president"),
    ("shoot", "bar", "chair", "pen"),
    ("pen", "dog", "person", "shoot"),
)

# Five reference pairs: (term1, term2, t1->t2, t2->t1, mean); hop counts of
# 4.0 marked here as None are no-path directions that fall to the default.
TABLE3_EDGES = (
    ("tree", "branch"), ("branch", "tree"),
    ("paper", "tree"), ("tree", "paper"),
    ("pen", "apartment"), ("apartment", "red"), ("red", "blood"),
    ("blood", "body"), ("body", "everyone"), ("everyone", "pen"),
    ("pen", "write"), ("write", "letter"), ("letter", "mail"), ("mail", "airline"),
    ("bomb", "explosion"), ("explosion", "blast"),
)

TABLE3_EXPECTED = (
    ("tree", "branch", 1.0, 1.0, 1.0),
    ("pen", "blood", 3.0, 3.0, 3.0),
    ("paper", "tree", 1.0, 1.0, 1.0),
    ("airline", "pen", 4.0, 4.0, 4.0),  # airline->pen is no-path
    ("bomb", "blast", 2.0, 4.0, 3.0),   # blast->bomb is no-path
)


def paths_to_assertions(paths, relation: str = "RelatedTo") -> list[Assertion]:
    assertions = []
    for path in paths:
        for a, b in zip(path, path[1:]):
            assertions.append(Assertion(a, relation, b))
    return assertions


def edges_to_assertions(edges, relation: str = "RelatedTo") -> list[Assertion]:
    return [Assertion(a, relation, b) for a, b in edges]


@pytest.fixture(scope="session")
def ex1_graph() -> ConceptGraph:
    return build_graph(paths_to_assertions(EX1_PATHS))


@pytest.fixture(scope="session")
def ex2_graph() -> ConceptGraph:
    return build_graph(paths_to_assertions(EX2_PATHS))


@pytest.fixture(scope="session")
def table3_graph() -> ConceptGraph:
    return build_graph(edges_to_assertions(TABLE3_EDGES))


@pytest.fixture(scope="session")
def union_graph() -> ConceptGraph:
    """Both worked-example fixtures in one graph.

    The only shared concept is "person"; the union adds no shortcut to any
    quoted path, so both sentences keep their standalone scores.
    """
    return build_graph(
        paths_to_assertions(EX1_PATHS) + paths_to_assertions(EX2_PATHS)
    )
