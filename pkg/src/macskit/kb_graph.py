"""Concept graph construction and binary caching.

The knowledge base is a directed multigraph of normalized concepts.  It is
loaded once from a 3-column assertion TSV and is immutable afterwards, so
any number of readers may query it concurrently.

Assertion TSV format:
    start<TAB>relation<TAB>end[<TAB>confidence]
    - UTF-8, one record per line
    - lines starting with '#' are ignored
    - a 4th numeric column (assertion confidence) is parsed and discarded;
      distances count edges only
    - malformed lines are skipped and counted, never fatal

Binary cache format:
    magic bytes b"MACSKB1\\n" (the trailing digit is the format version),
    followed by a little-endian dump of the surface table, the relation
    label table and the out-adjacency lists.  In-edges are rebuilt on load.
    The only stable contract is that load(save(g)) reproduces g exactly,
    ids included.
"""

from __future__ import annotations

import logging
import re
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"MACSKB1\n"

_WS_RUN = re.compile(r"\s+")


class NormalizationError(ValueError):
    """Concept surface is empty after normalization."""


class LoadError(OSError):
    """I/O failure while reading an assertion stream.

    Carries the byte offset of the failure in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CacheFormatError(ValueError):
    """Cache file is corrupt, truncated, or not a cache file at all."""


class CacheVersionError(ValueError):
    """Cache file was written by a different format version."""


def normalize_concept(surface: str) -> str:
    """Normalize a concept surface: lowercase, trim, collapse whitespace.

    Normalization is idempotent; two surfaces that normalize equally are
    the same concept.  Raises NormalizationError if nothing remains.
    """
    normalized = _WS_RUN.sub(" ", surface.strip()).lower()
    if not normalized:
        raise NormalizationError(f"empty concept surface: {surface!r}")
    return normalized


@dataclass(frozen=True)
class Assertion:
    """One directed, labeled edge between two normalized concepts."""

    start: str
    relation: str
    end: str


def parse_assertion_line(line: str) -> Assertion | None:
    """Parse one TSV record into an Assertion, or None for a skip.

    Skips (with a debug-level diagnostic) rather than raising, so a single
    bad record never aborts a bulk load.  Comment and blank lines return
    None silently.
    """
    stripped = line.rstrip("\n\r")
    if not stripped.strip() or stripped.lstrip().startswith("#"):
        return None
    fields = stripped.split("\t")
    if len(fields) < 3:
        logger.debug("skipping malformed assertion line (need 3 fields): %r", stripped)
        return None
    start_raw, relation, end_raw = fields[0], fields[1].strip(), fields[2]
    if not relation:
        logger.debug("skipping assertion with empty relation: %r", stripped)
        return None
    try:
        start = normalize_concept(start_raw)
        end = normalize_concept(end_raw)
    except NormalizationError:
        logger.debug("skipping assertion with empty concept: %r", stripped)
        return None
    return Assertion(start, relation, end)


@dataclass
class LoadStats:
    """Counters accumulated while ingesting an assertion stream."""

    lines: int = 0
    comments: int = 0
    malformed: int = 0
    self_loops: int = 0
    duplicates: int = 0
    assertions: int = 0


class ConceptGraph:
    """Immutable directed concept graph.

    Nodes are dense integer ids assigned in first-seen order; ``surface_of``
    and ``id_of`` convert between ids and normalized surfaces.  Parallel
    edges with different relations collapse to a single adjacency entry;
    the relation labels are all retained and available via ``relations``.
    Instances are built through :func:`build_graph` and never mutated, so
    concurrent reads need no locking.
    """

    def __init__(
        self,
        surfaces: tuple[str, ...],
        out_edges: tuple[tuple[int, ...], ...],
        in_edges: tuple[tuple[int, ...], ...],
        relation_labels: dict[tuple[int, int], tuple[str, ...]],
    ):
        self._surfaces = surfaces
        self._index = {s: i for i, s in enumerate(surfaces)}
        self._out = out_edges
        self._in = in_edges
        self._relations = relation_labels

    @property
    def node_count(self) -> int:
        return len(self._surfaces)

    @property
    def edge_count(self) -> int:
        """Number of distinct directed (start, end) pairs."""
        return len(self._relations)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return self._surfaces

    def id_of(self, surface: str) -> int | None:
        """Resolve a surface to its id, or None if absent.

        The lookup normalizes its argument, so callers may pass raw text.
        """
        try:
            return self._index.get(normalize_concept(surface))
        except NormalizationError:
            return None

    def surface_of(self, node: int) -> str:
        return self._surfaces[node]

    def __contains__(self, surface: str) -> bool:
        return self.id_of(surface) is not None

    def out_neighbors(self, node: int) -> tuple[int, ...]:
        return self._out[node]

    def in_neighbors(self, node: int) -> tuple[int, ...]:
        return self._in[node]

    def relations(self, start: int, end: int) -> tuple[str, ...]:
        """All relation labels asserted on the (start, end) edge."""
        return self._relations.get((start, end), ())

    def edge_pairs(self) -> Iterator[tuple[int, int]]:
        for node, neighbors in enumerate(self._out):
            for neighbor in neighbors:
                yield node, neighbor


def build_graph(
    assertions: Iterable[Assertion], stats: LoadStats | None = None
) -> ConceptGraph:
    """Build an immutable ConceptGraph from an assertion stream.

    Single pass; ids are assigned in first-seen order so the same stream
    always yields an identical graph.  Self-loops are dropped and duplicate
    (start, relation, end) triples are stored once.
    """
    stats = stats if stats is not None else LoadStats()
    surfaces: list[str] = []
    index: dict[str, int] = {}
    relation_labels: dict[tuple[int, int], list[str]] = {}

    def intern(surface: str) -> int:
        node = index.get(surface)
        if node is None:
            node = len(surfaces)
            index[surface] = node
            surfaces.append(surface)
        return node

    for assertion in assertions:
        if assertion.start == assertion.end:
            stats.self_loops += 1
            continue
        start = intern(assertion.start)
        end = intern(assertion.end)
        labels = relation_labels.setdefault((start, end), [])
        if assertion.relation in labels:
            stats.duplicates += 1
            continue
        labels.append(assertion.relation)
        stats.assertions += 1

    out_sets: list[set[int]] = [set() for _ in surfaces]
    in_sets: list[set[int]] = [set() for _ in surfaces]
    for start, end in relation_labels:
        out_sets[start].add(end)
        in_sets[end].add(start)

    return ConceptGraph(
        surfaces=tuple(surfaces),
        out_edges=tuple(tuple(sorted(s)) for s in out_sets),
        in_edges=tuple(tuple(sorted(s)) for s in in_sets),
        relation_labels={k: tuple(v) for k, v in relation_labels.items()},
    )


def iter_assertion_file(path: str | Path, stats: LoadStats) -> Iterator[Assertion]:
    """Stream assertions out of a TSV file, updating stats as it goes.

    Raises LoadError with the current byte offset if the underlying read
    fails mid-stream.
    """
    offset = 0
    try:
        handle = open(path, "rb")
    except OSError as exc:
        raise LoadError(f"cannot open {path}: {exc}", 0) from exc
    with handle:
        while True:
            try:
                raw = handle.readline()
            except OSError as exc:
                raise LoadError(f"read failure in {path}: {exc}", offset) from exc
            if not raw:
                break
            offset += len(raw)
            stats.lines += 1
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                stats.malformed += 1
                logger.debug("skipping non-UTF-8 line at byte %d", offset - len(raw))
                continue
            if line.lstrip().startswith("#"):
                stats.comments += 1
                continue
            assertion = parse_assertion_line(line)
            if assertion is None:
                if line.strip():
                    stats.malformed += 1
                continue
            yield assertion


def load_graph_tsv(path: str | Path) -> tuple[ConceptGraph, LoadStats]:
    """Load an assertion TSV into a graph, returning the graph and counters."""
    stats = LoadStats()
    graph = build_graph(iter_assertion_file(path, stats), stats)
    return graph, stats


# --- binary cache ---------------------------------------------------------

def _write_str(out: BinaryIO, text: str) -> None:
    data = text.encode("utf-8")
    out.write(struct.pack("<I", len(data)))
    out.write(data)


def _read_exact(handle: BinaryIO, size: int) -> bytes:
    data = handle.read(size)
    if len(data) != size:
        raise CacheFormatError("truncated cache file")
    return data


def _read_str(handle: BinaryIO) -> str:
    (length,) = struct.unpack("<I", _read_exact(handle, 4))
    try:
        return _read_exact(handle, length).decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CacheFormatError("corrupt string in cache file") from exc


def save_cache(graph: ConceptGraph, path: str | Path) -> None:
    """Serialize a graph to the versioned binary cache format."""
    labels_in_use = sorted({label for rels in graph._relations.values() for label in rels})
    label_index = {label: i for i, label in enumerate(labels_in_use)}
    with open(path, "wb") as out:
        out.write(CACHE_MAGIC)
        out.write(struct.pack("<III", graph.node_count, graph.edge_count, len(labels_in_use)))
        for surface in graph.surfaces:
            _write_str(out, surface)
        for label in labels_in_use:
            _write_str(out, label)
        for node in range(graph.node_count):
            neighbors = graph.out_neighbors(node)
            out.write(struct.pack("<I", len(neighbors)))
            for neighbor in neighbors:
                rels = graph.relations(node, neighbor)
                out.write(struct.pack("<II", neighbor, len(rels)))
                out.write(struct.pack(f"<{len(rels)}I", *(label_index[r] for r in rels)))


def load_cache(path: str | Path) -> ConceptGraph:
    """Load a graph from a binary cache written by :func:`save_cache`.

    Raises CacheVersionError when the file is a cache of another format
    version, CacheFormatError for anything else that is not a valid cache.
    """
    with open(path, "rb") as handle:
        header = handle.read(len(CACHE_MAGIC))
        if header != CACHE_MAGIC:
            if (
                len(header) == len(CACHE_MAGIC)
                and header.startswith(b"MACSKB")
                and header.endswith(b"\n")
            ):
                raise CacheVersionError(
                    f"cache version {header[6:7].decode('ascii', 'replace')} "
                    f"is not supported (expected {CACHE_MAGIC[6:7].decode('ascii')})"
                )
            raise CacheFormatError("not a concept-graph cache file")
        try:
            node_count, edge_count, label_count = struct.unpack(
                "<III", _read_exact(handle, 12)
            )
            surfaces = tuple(_read_str(handle) for _ in range(node_count))
            labels = [_read_str(handle) for _ in range(label_count)]
            relation_labels: dict[tuple[int, int], tuple[str, ...]] = {}
            out_edges: list[tuple[int, ...]] = []
            in_sets: list[set[int]] = [set() for _ in range(node_count)]
            for node in range(node_count):
                (degree,) = struct.unpack("<I", _read_exact(handle, 4))
                neighbors = []
                for _ in range(degree):
                    neighbor, n_rels = struct.unpack("<II", _read_exact(handle, 8))
                    if neighbor >= node_count:
                        raise CacheFormatError("neighbor id out of range")
                    rel_ids = struct.unpack(f"<{n_rels}I", _read_exact(handle, 4 * n_rels))
                    try:
                        relation_labels[(node, neighbor)] = tuple(labels[r] for r in rel_ids)
                    except IndexError as exc:
                        raise CacheFormatError("relation label id out of range") from exc
                    neighbors.append(neighbor)
                    in_sets[neighbor].add(node)
                out_edges.append(tuple(neighbors))
        except struct.error as exc:
            raise CacheFormatError("truncated cache file") from exc
        if handle.read(1):
            raise CacheFormatError("trailing bytes after cache payload")
    if len(relation_labels) != edge_count:
        raise CacheFormatError("edge count mismatch in cache header")
    return ConceptGraph(
        surfaces=surfaces,
        out_edges=tuple(out_edges),
        in_edges=tuple(tuple(sorted(s)) for s in in_sets),
        relation_labels=relation_labels,
    )
