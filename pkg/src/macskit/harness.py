"""Dataset evaluation and per-sentence score distributions.

``evaluate`` runs the detector over a labeled dataset and reports accuracy
with NA sentences counted separately but kept in the denominator, so
total = correct + incorrect + na always holds and accuracy is computed,
never asserted.  ``emit_distributions`` produces the per-sentence CSV of
minimum MACS score and plain average path length used for distribution
plots downstream.

A 22-sentence reference dataset collected from earlier obfuscation studies
ships with the package (see ``erp_records``); its published flaggings were
produced against one specific knowledge-base snapshot, so results on other
graphs will differ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .detector import (
    MIN_BAG_SIZE,
    DetectorConfig,
    detect,
    leave_one_out_macs,
    _num,
)
from .kb_graph import ConceptGraph
from .path_engine import AlgoChoice, PathEngine
from .text_pipeline import lemmatize_noun


class EmptyDatasetError(ValueError):
    """Evaluation dataset contains no records."""


@dataclass(frozen=True)
class EvalRecord:
    """One labeled evaluation sentence."""

    substituted_sentence: str
    ground_truth_term: str

    def __post_init__(self):
        if not self.ground_truth_term.strip():
            raise ValueError("ground_truth_term must be non-empty")


@dataclass(frozen=True)
class SentenceVerdict:
    sentence: str
    flagged: str | None
    truth: str
    verdict: str  # "correct" | "incorrect" | "na"


@dataclass(frozen=True)
class AccuracyReport:
    total: int
    correct: int
    incorrect: int
    na: int
    accuracy: float
    per_sentence: tuple[SentenceVerdict, ...]

    def to_json_dict(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "incorrect": self.incorrect,
            "na": self.na,
            "accuracy": _num(self.accuracy),
            "per_sentence": [
                {
                    "sentence": v.sentence,
                    "flagged": v.flagged,
                    "truth": v.truth,
                    "verdict": v.verdict,
                }
                for v in self.per_sentence
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), ensure_ascii=False)


def load_eval_tsv(path: str | Path) -> list[EvalRecord]:
    """Load ``substituted_sentence<TAB>ground_truth_term`` records."""
    records = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        sentence, _, truth = raw.partition("\t")
        records.append(
            EvalRecord(substituted_sentence=sentence, ground_truth_term=truth.strip())
        )
    return records


def _erp_rows() -> list[tuple[str, str, str, str]]:
    source = resources.files("macskit.data").joinpath("erp_dataset.tsv")
    rows = []
    for raw in source.read_text(encoding="utf-8").splitlines():
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        original, substituted, truth, reference = raw.split("\t")
        rows.append((original, substituted, truth, reference))
    return rows


def erp_table() -> list[tuple[str, str, str, str]]:
    """The embedded reference set as (original, substituted, truth, reference)."""
    return _erp_rows()


def erp_records() -> list[EvalRecord]:
    """The embedded reference set as evaluation records."""
    return [
        EvalRecord(substituted_sentence=substituted, ground_truth_term=truth)
        for _, substituted, truth, _ in _erp_rows()
    ]


def _lemmatized_truth(truth: str) -> str:
    return " ".join(lemmatize_noun(w) for w in truth.lower().split())


def evaluate(
    records: Sequence[EvalRecord],
    graph: ConceptGraph,
    config: DetectorConfig | None = None,
) -> AccuracyReport:
    """Detect over every record and tally verdicts.

    A record is correct iff the flagged lemma equals the lemmatized ground
    truth, case-insensitively.  NA detections count toward the total.
    """
    if not records:
        raise EmptyDatasetError("no evaluation records")
    cfg = config if config is not None else DetectorConfig()
    engine = PathEngine(graph, cfg.nopath_default)
    verdicts = []
    correct = incorrect = na = 0
    for record in records:
        result = detect(record.substituted_sentence, config=cfg, engine=engine)
        if not result.is_detection:
            verdict = "na"
            na += 1
        elif result.flagged == _lemmatized_truth(record.ground_truth_term):
            verdict = "correct"
            correct += 1
        else:
            verdict = "incorrect"
            incorrect += 1
        verdicts.append(
            SentenceVerdict(
                sentence=record.substituted_sentence,
                flagged=result.flagged,
                truth=record.ground_truth_term,
                verdict=verdict,
            )
        )
    total = len(records)
    return AccuracyReport(
        total=total,
        correct=correct,
        incorrect=incorrect,
        na=na,
        accuracy=correct / total,
        per_sentence=tuple(verdicts),
    )


@dataclass(frozen=True)
class DistributionRow:
    """Per-(sentence, algorithm) score summary.

    ``macs_min`` is the minimum leave-one-out MACS score (defined for bags
    of three or more); ``avg_path_length`` is the plain mean similarity
    over all unordered bag pairs (defined for bags of two or more).  None
    marks an undefined value and serializes as the literal NA.
    """

    index: int
    algo: AlgoChoice
    macs_min: float | None
    avg_path_length: float | None


DISTRIBUTION_CSV_HEADER = "index,algo,macs_min,avg_path_length"


def emit_distributions(
    records: Sequence[EvalRecord],
    graph: ConceptGraph,
    algos: Iterable[AlgoChoice] = (AlgoChoice.DIJKSTRA,),
    config: DetectorConfig | None = None,
) -> list[DistributionRow]:
    """Distribution rows for every (sentence, algorithm) combination."""
    cfg = config if config is not None else DetectorConfig()
    engine = PathEngine(graph, cfg.nopath_default)
    algo_list = list(algos)
    rows = []
    for index, record in enumerate(records):
        bag = cfg.pipeline.bag(record.substituted_sentence)
        lemmas = bag.lemmas()
        for algo in algo_list:
            macs_min = None
            avg_path = None
            if len(lemmas) >= 2:
                pair_values = [
                    engine.conceptual_similarity(lemmas[i], lemmas[j], algo).value
                    for i in range(len(lemmas))
                    for j in range(i + 1, len(lemmas))
                ]
                avg_path = fmean(pair_values)
            if len(lemmas) >= MIN_BAG_SIZE:
                breakdowns = leave_one_out_macs(bag, algo=algo, engine=engine)
                macs_min = min(b.score for b in breakdowns)
            rows.append(
                DistributionRow(
                    index=index, algo=algo, macs_min=macs_min, avg_path_length=avg_path
                )
            )
    return rows


def _csv_cell(value: float | None) -> str:
    return "NA" if value is None else str(_num(value))


def distributions_csv(rows: Iterable[DistributionRow]) -> str:
    """Render distribution rows as CSV with a fixed header."""
    lines = [DISTRIBUTION_CSV_HEADER]
    lines.extend(
        f"{r.index},{r.algo.value},{_csv_cell(r.macs_min)},{_csv_cell(r.avg_path_length)}"
        for r in rows
    )
    return "\n".join(lines) + "\n"
