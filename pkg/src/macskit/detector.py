"""Leave-one-out MACS scoring and obfuscated-term detection.

For a bag of N terms, each term gets the mean pairwise conceptual
similarity of the other N-1 terms (its MACS score).  A substituted term is
out of context, so removing it leaves a tighter remainder: the flagged term
is the one with the minimum score.

Pair similarities are memoized across the N leave-one-out iterations (each
unordered pair recurs in N-2 of them), and pairs are always reduced in a
fixed order, so results are deterministic however the work is scheduled.
Sentences are independent and may be processed in parallel.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from statistics import fmean

from .kb_graph import ConceptGraph
from .path_engine import AlgoChoice, DEFAULT_NOPATH_DISTANCE, PathEngine
from .text_pipeline import BagOfTerms, TextPipeline

MIN_BAG_SIZE = 3

NA_EMPTY_BAG = "empty bag"
NA_BAG_TOO_SMALL = "bag too small"


@dataclass(frozen=True)
class MacsBreakdown:
    """MACS score of one term with its supporting pair similarities.

    ``pair_scores`` holds (term_i, term_j, similarity) for every unordered
    pair of the bag with ``term`` removed; ``score`` is their mean.
    """

    term: str
    score: float
    pair_scores: tuple[tuple[str, str, float], ...]


@dataclass(frozen=True)
class DetectionResult:
    """Outcome of scoring one sentence.

    Either a detection (``flagged`` set, ``ranking`` ascending by score) or
    not-applicable (``na_reason`` set) when the bag is too small to score.
    """

    sentence: str
    bag: tuple[str, ...]
    ranking: tuple[MacsBreakdown, ...]
    flagged: str | None
    aggregate_mean: float | None
    na_reason: str | None = None
    bag_size: int = 0

    @property
    def is_detection(self) -> bool:
        return self.flagged is not None

    def scores(self) -> dict[str, float]:
        return {b.term: b.score for b in self.ranking}

    def to_json_dict(self) -> dict:
        """Serializable form with fixed field names."""
        payload = {
            "sentence": self.sentence,
            "bag": list(self.bag),
            "scores": {b.term: _num(b.score) for b in self.ranking},
            "flagged": self.flagged,
            "aggregate_mean": _num(self.aggregate_mean),
        }
        if self.na_reason is not None:
            payload["na_reason"] = self.na_reason
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)


def _num(value: float | None) -> float | int | None:
    """Round for serialization; integral values emit as ints."""
    if value is None:
        return None
    rounded = round(value, 4)
    return int(rounded) if rounded == int(rounded) else rounded


@dataclass
class DetectorConfig:
    """Knobs for :func:`detect`; defaults match the standard setup."""

    algo: AlgoChoice = AlgoChoice.DIJKSTRA
    nopath_default: float = DEFAULT_NOPATH_DISTANCE
    pipeline: TextPipeline = field(default_factory=TextPipeline)


def pair_comparison_count(n: int) -> int:
    """Directed-query cost model for one MACS score on a bag of size n.

    Two directed queries per ordered pair of the n-1 remaining terms:
    2(n-1)(n-2) for n >= 2, zero below.  In practice memoization brings the
    distinct directed computations per sentence down to (n)(n-1) in total.
    """
    if n < 2:
        return 0
    return 2 * (n - 1) * (n - 2)


def _pair_table(
    lemmas: list[str], engine: PathEngine, algo: AlgoChoice
) -> dict[tuple[int, int], float]:
    """Similarity of every unordered pair, computed once per pair."""
    table: dict[tuple[int, int], float] = {}
    for i in range(len(lemmas)):
        for j in range(i + 1, len(lemmas)):
            table[(i, j)] = engine.conceptual_similarity(
                lemmas[i], lemmas[j], algo
            ).value
    return table


def leave_one_out_macs(
    bag: BagOfTerms,
    graph: ConceptGraph | None = None,
    algo: AlgoChoice = AlgoChoice.DIJKSTRA,
    nopath_default: float = DEFAULT_NOPATH_DISTANCE,
    engine: PathEngine | None = None,
) -> list[MacsBreakdown]:
    """MACS breakdown for every term of the bag (requires >= 3 terms).

    Pass an existing PathEngine to share its distance memo across calls;
    otherwise one is built from ``graph``.
    """
    if len(bag) < MIN_BAG_SIZE:
        raise ValueError(f"bag of {len(bag)} terms cannot be scored leave-one-out")
    if engine is None:
        if graph is None:
            raise ValueError("either graph or engine must be provided")
        engine = PathEngine(graph, nopath_default)
    lemmas = bag.lemmas()
    table = _pair_table(lemmas, engine, algo)
    breakdowns = []
    for k, term in enumerate(lemmas):
        pairs = tuple(
            (lemmas[i], lemmas[j], table[(i, j)])
            for (i, j) in sorted(table)
            if i != k and j != k
        )
        score = fmean(value for _, _, value in pairs)
        breakdowns.append(MacsBreakdown(term=term, score=score, pair_scores=pairs))
    return breakdowns


def detect(
    sentence: str,
    graph: ConceptGraph | None = None,
    config: DetectorConfig | None = None,
    engine: PathEngine | None = None,
) -> DetectionResult:
    """Score a sentence and flag its most out-of-context term.

    Ties on the minimum score break toward the term appearing earliest in
    the sentence.  Bags smaller than three terms yield a NotApplicable
    result carrying the reason and the bag size.
    """
    cfg = config if config is not None else DetectorConfig()
    if engine is None:
        if graph is None:
            raise ValueError("either graph or engine must be provided")
        engine = PathEngine(graph, cfg.nopath_default)
    bag = cfg.pipeline.bag(sentence)
    lemmas = tuple(bag.lemmas())
    if len(bag) < MIN_BAG_SIZE:
        reason = NA_EMPTY_BAG if len(bag) == 0 else NA_BAG_TOO_SMALL
        return DetectionResult(
            sentence=sentence,
            bag=lemmas,
            ranking=(),
            flagged=None,
            aggregate_mean=None,
            na_reason=reason,
            bag_size=len(bag),
        )
    breakdowns = leave_one_out_macs(bag, algo=cfg.algo, engine=engine)
    ranking = tuple(
        sorted(breakdowns, key=lambda b: (b.score, bag.position_of(b.term)))
    )
    return DetectionResult(
        sentence=sentence,
        bag=lemmas,
        ranking=ranking,
        flagged=ranking[0].term,
        aggregate_mean=fmean(b.score for b in breakdowns),
        bag_size=len(bag),
    )
