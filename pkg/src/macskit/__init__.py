"""macskit: detect substituted terms by concept-graph path scoring.

A sentence's content terms are scored against a directed common-sense
concept graph; the term whose removal leaves the most coherent remainder
(lowest mean pairwise path length) is flagged as the substitution.  The
package also generates labeled substituted corpora for evaluation.
"""

__version__ = "0.1.0"

from .detector import (
    DetectionResult,
    DetectorConfig,
    MacsBreakdown,
    detect,
    leave_one_out_macs,
    pair_comparison_count,
)
from .harness import (
    AccuracyReport,
    DistributionRow,
    EmptyDatasetError,
    EvalRecord,
    distributions_csv,
    emit_distributions,
    erp_records,
    erp_table,
    evaluate,
    load_eval_tsv,
)
from .kb_graph import (
    Assertion,
    CacheFormatError,
    CacheVersionError,
    ConceptGraph,
    LoadError,
    LoadStats,
    NormalizationError,
    build_graph,
    load_cache,
    load_graph_tsv,
    normalize_concept,
    parse_assertion_line,
    save_cache,
)
from .path_engine import (
    AlgoChoice,
    DegeneratePairError,
    InvalidConceptError,
    PathEngine,
    PathResult,
    SimilarityScore,
    conceptual_similarity,
    directed_distance,
    shortest_path,
)
from .substitutor import (
    FrequencyList,
    HypernymOracle,
    NoCandidateError,
    NotInListError,
    SubstitutionRecord,
    detect_language,
    first_noun,
    replace_first,
    substitute_corpus,
    substitute_sentence,
)
from .text_pipeline import (
    BagOfTerms,
    BagTerm,
    ExclusionConfig,
    RuleTagger,
    TextPipeline,
    Token,
    build_bag_of_terms,
    lemmatize,
    parse_pretagged,
    pos_tag,
    tokenize,
)

__all__ = [
    "AccuracyReport",
    "AlgoChoice",
    "Assertion",
    "BagOfTerms",
    "BagTerm",
    "CacheFormatError",
    "CacheVersionError",
    "ConceptGraph",
    "DegeneratePairError",
    "DetectionResult",
    "DetectorConfig",
    "DistributionRow",
    "EmptyDatasetError",
    "EvalRecord",
    "ExclusionConfig",
    "FrequencyList",
    "HypernymOracle",
    "InvalidConceptError",
    "LoadError",
    "LoadStats",
    "MacsBreakdown",
    "NoCandidateError",
    "NormalizationError",
    "NotInListError",
    "PathEngine",
    "PathResult",
    "RuleTagger",
    "SimilarityScore",
    "SubstitutionRecord",
    "TextPipeline",
    "Token",
    "build_bag_of_terms",
    "build_graph",
    "conceptual_similarity",
    "detect",
    "detect_language",
    "directed_distance",
    "distributions_csv",
    "emit_distributions",
    "erp_records",
    "erp_table",
    "evaluate",
    "first_noun",
    "leave_one_out_macs",
    "lemmatize",
    "load_cache",
    "load_eval_tsv",
    "load_graph_tsv",
    "normalize_concept",
    "pair_comparison_count",
    "parse_assertion_line",
    "parse_pretagged",
    "pos_tag",
    "replace_first",
    "save_cache",
    "shortest_path",
    "substitute_corpus",
    "substitute_sentence",
    "tokenize",
]
