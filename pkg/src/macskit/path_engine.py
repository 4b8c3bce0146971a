"""Directed shortest-path queries and the pairwise conceptual similarity score.

Three interchangeable algorithms (Dijkstra, A* with a zero heuristic, BFS)
compute hop counts on the unit-weight directed graph.  All three are exact,
so they always agree on path length; node sequences may differ between
algorithms but are deterministic within one (neighbors expand in ascending
id order).

The similarity between two concepts is the mean of the two directed hop
counts, with a configurable default substituted whenever there is no
directed path or a term is not in the graph at all.

PathEngine adds a per-(source, algo) memo of full distance maps; the
detector loop re-queries the same sources many times, and the graph never
changes, so entries are never invalidated.  Queries are read-only with
respect to the graph and may run in parallel; give each worker its own
engine if the memo itself must not be shared.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .kb_graph import ConceptGraph, NormalizationError, normalize_concept

DEFAULT_NOPATH_DISTANCE = 4.0


class AlgoChoice(Enum):
    DIJKSTRA = "dijkstra"
    ASTAR = "astar"
    BFS = "bfs"

    @classmethod
    def parse(cls, name: str) -> "AlgoChoice":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown algorithm {name!r}; expected one of "
                f"{', '.join(a.value for a in cls)}"
            ) from None


class InvalidConceptError(KeyError):
    """A node id outside the graph was passed to a path query."""


class DegeneratePairError(ValueError):
    """Similarity of a concept with itself was requested.

    Callers operate on de-duplicated term sets, so this signals a pipeline
    bug rather than a data condition.
    """


@dataclass(frozen=True)
class PathResult:
    """Directed distance between two nodes: a hop count or no path.

    ``nodes`` is the witness path (hops + 1 surfaces) and is only populated
    when the query asked for an explanation.
    """

    hops: int | None
    nodes: tuple[str, ...] | None = None

    @property
    def is_finite(self) -> bool:
        return self.hops is not None

    @classmethod
    def no_path(cls) -> "PathResult":
        return cls(hops=None)


@dataclass(frozen=True)
class SimilarityScore:
    """Bidirectional conceptual similarity between two concepts.

    ``value`` is the mean of the two effective directed distances, each of
    which is either a finite hop count or the no-path default.  ``oov``
    lists any input term that was not in the graph.
    """

    value: float
    a_to_b: float
    b_to_a: float
    oov: tuple[str, ...] = ()


def _check_node(graph: ConceptGraph, node: int) -> None:
    if not 0 <= node < graph.node_count:
        raise InvalidConceptError(node)


def _bfs(
    graph: ConceptGraph, source: int, target: int | None
) -> tuple[dict[int, int], dict[int, int]]:
    """Breadth-first distances from source; stops early at target if given."""
    dist = {source: 0}
    parent: dict[int, int] = {}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if node == target:
            break
        next_dist = dist[node] + 1
        for neighbor in graph.out_neighbors(node):
            if neighbor not in dist:
                dist[neighbor] = next_dist
                parent[neighbor] = node
                queue.append(neighbor)
    return dist, parent


def _dijkstra(
    graph: ConceptGraph,
    source: int,
    target: int | None,
    heuristic: Callable[[int], int] | None = None,
) -> tuple[dict[int, int], dict[int, int]]:
    """Dijkstra on unit weights; with a heuristic it becomes A*.

    The default heuristic is zero, which is admissible and therefore keeps
    A* exact (it degenerates to uniform-cost search).  Heap ties break on
    node id, making the expansion order deterministic.
    """
    h = heuristic if heuristic is not None else (lambda _node: 0)
    dist = {source: 0}
    parent: dict[int, int] = {}
    done: set[int] = set()
    heap: list[tuple[int, int]] = [(h(source), source)]
    while heap:
        _, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == target:
            break
        next_dist = dist[node] + 1
        for neighbor in graph.out_neighbors(node):
            if neighbor in done:
                continue
            if next_dist < dist.get(neighbor, float("inf")):
                dist[neighbor] = next_dist
                parent[neighbor] = node
                heapq.heappush(heap, (next_dist + h(neighbor), neighbor))
    return dist, parent


def _search(
    graph: ConceptGraph, source: int, target: int | None, algo: AlgoChoice
) -> tuple[dict[int, int], dict[int, int]]:
    if algo is AlgoChoice.BFS:
        return _bfs(graph, source, target)
    if algo is AlgoChoice.DIJKSTRA:
        return _dijkstra(graph, source, target)
    return _dijkstra(graph, source, target, heuristic=lambda _node: 0)


def _witness(
    graph: ConceptGraph, parent: dict[int, int], source: int, target: int
) -> tuple[str, ...]:
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return tuple(graph.surface_of(n) for n in path)


def shortest_path(
    graph: ConceptGraph,
    source: int,
    target: int,
    algo: AlgoChoice = AlgoChoice.DIJKSTRA,
    want_nodes: bool = False,
) -> PathResult:
    """Minimal directed hop count from source to target, or NoPath.

    Raises InvalidConceptError for ids outside the graph.  A node reaches
    itself in zero hops.
    """
    _check_node(graph, source)
    _check_node(graph, target)
    dist, parent = _search(graph, source, target, algo)
    if target not in dist:
        return PathResult.no_path()
    nodes = _witness(graph, parent, source, target) if want_nodes else None
    return PathResult(hops=dist[target], nodes=nodes)


class PathEngine:
    """Distance queries over one immutable graph, with per-source memoization.

    The memo maps (source id, algo) to the full distance map of that
    source's reachable set.  CPython dict operations keep concurrent reads
    safe; when strict isolation is wanted, give each worker its own engine
    (the underlying graph can be shared freely).
    """

    def __init__(
        self,
        graph: ConceptGraph,
        nopath_default: float = DEFAULT_NOPATH_DISTANCE,
    ):
        if nopath_default <= 0:
            raise ValueError("nopath_default must be positive")
        self.graph = graph
        self.nopath_default = float(nopath_default)
        self._memo: dict[tuple[int, AlgoChoice], dict[int, int]] = {}
        self.oov_terms: set[str] = set()

    def distances_from(self, source: int, algo: AlgoChoice) -> dict[int, int]:
        _check_node(self.graph, source)
        key = (source, algo)
        cached = self._memo.get(key)
        if cached is None:
            cached, _ = _search(self.graph, source, None, algo)
            self._memo[key] = cached
        return cached

    def shortest_path(
        self,
        source: int,
        target: int,
        algo: AlgoChoice = AlgoChoice.DIJKSTRA,
        want_nodes: bool = False,
    ) -> PathResult:
        if want_nodes:
            return shortest_path(self.graph, source, target, algo, want_nodes=True)
        _check_node(self.graph, target)
        hops = self.distances_from(source, algo).get(target)
        return PathResult(hops=hops) if hops is not None else PathResult.no_path()

    def directed_distance(
        self, source: str, target: str, algo: AlgoChoice = AlgoChoice.DIJKSTRA
    ) -> float:
        """Effective directed distance between two terms, always defined.

        Finite hop count when a path exists; the no-path default otherwise,
        including when either term is out of vocabulary (recorded in
        ``oov_terms``).
        """
        source_id = self.graph.id_of(source)
        target_id = self.graph.id_of(target)
        oov = [t for t, i in ((source, source_id), (target, target_id)) if i is None]
        if oov:
            self.oov_terms.update(oov)
            return self.nopath_default
        hops = self.distances_from(source_id, algo).get(target_id)
        return float(hops) if hops is not None else self.nopath_default

    def conceptual_similarity(
        self, a: str, b: str, algo: AlgoChoice = AlgoChoice.DIJKSTRA
    ) -> SimilarityScore:
        """Mean of the two directed distances between a and b.

        Symmetric in its arguments.  Raises DegeneratePairError when both
        terms normalize to the same concept.
        """
        graph = self.graph
        a_id, b_id = graph.id_of(a), graph.id_of(b)
        try:
            same = normalize_concept(a) == normalize_concept(b)
        except NormalizationError:
            same = False
        if same:
            raise DegeneratePairError(f"similarity of {a!r} with itself")
        a_to_b = self.directed_distance(a, b, algo)
        b_to_a = self.directed_distance(b, a, algo)
        oov = tuple(t for t, i in ((a, a_id), (b, b_id)) if i is None)
        return SimilarityScore(
            value=(a_to_b + b_to_a) / 2.0, a_to_b=a_to_b, b_to_a=b_to_a, oov=oov
        )


def directed_distance(
    graph: ConceptGraph,
    source: str,
    target: str,
    algo: AlgoChoice = AlgoChoice.DIJKSTRA,
    nopath_default: float = DEFAULT_NOPATH_DISTANCE,
) -> float:
    """One-shot, unmemoized form of PathEngine.directed_distance."""
    return PathEngine(graph, nopath_default).directed_distance(source, target, algo)


def conceptual_similarity(
    graph: ConceptGraph,
    a: str,
    b: str,
    algo: AlgoChoice = AlgoChoice.DIJKSTRA,
    nopath_default: float = DEFAULT_NOPATH_DISTANCE,
) -> SimilarityScore:
    """One-shot, unmemoized form of PathEngine.conceptual_similarity."""
    return PathEngine(graph, nopath_default).conceptual_similarity(a, b, algo)
