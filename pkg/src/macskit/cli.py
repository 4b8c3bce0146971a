"""Command-line interface.

Subcommands: build-graph, detect, sim, substitute, evaluate, distributions.
Exit codes: 0 success, 1 usage error, 2 data error (unreadable/invalid
input files, empty datasets, out-of-contract queries).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .detector import DetectorConfig, detect, _num
from .harness import (
    EmptyDatasetError,
    distributions_csv,
    emit_distributions,
    erp_records,
    evaluate,
    load_eval_tsv,
)
from .kb_graph import (
    CACHE_MAGIC,
    CacheFormatError,
    CacheVersionError,
    ConceptGraph,
    LoadError,
    load_cache,
    load_graph_tsv,
    save_cache,
)
from .path_engine import AlgoChoice, DegeneratePairError, PathEngine
from .substitutor import (
    FrequencyList,
    HypernymOracle,
    substitute_corpus,
    substitute_sentence,
)
from .text_pipeline import ExclusionConfig, TextPipeline, parse_pretagged

USAGE_ERROR = 1
DATA_ERROR = 2


class CliDataError(Exception):
    """Raised for problems with user-supplied data; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser, graph: bool = True) -> None:
    if graph:
        parser.add_argument(
            "--graph",
            required=True,
            help="concept graph: a binary cache (see build-graph) or an assertion TSV",
        )
    parser.add_argument(
        "--algo",
        default="dijkstra",
        choices=[a.value for a in AlgoChoice],
        help="shortest-path algorithm (default: dijkstra)",
    )
    parser.add_argument(
        "--nopath-default",
        type=float,
        default=4.0,
        help="distance substituted for no-path and out-of-vocabulary terms (default: 4)",
    )
    parser.add_argument(
        "--exclusion-list",
        default=None,
        help="replacement exclusion word-list file (default: bundled list)",
    )
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--tsv", action="store_true", help="TSV output where supported")


def _load_graph(path: str) -> ConceptGraph:
    p = Path(path)
    if not p.exists():
        raise CliDataError(f"graph file not found: {path}")
    with open(p, "rb") as handle:
        head = handle.read(len(CACHE_MAGIC))
    if head.startswith(b"MACSKB"):
        return load_cache(p)
    graph, stats = load_graph_tsv(p)
    if graph.node_count == 0 and stats.malformed:
        raise CliDataError(f"no usable assertions in {path}")
    return graph


def _detector_config(args) -> DetectorConfig:
    exclusions = (
        ExclusionConfig.from_file(args.exclusion_list) if args.exclusion_list else None
    )
    return DetectorConfig(
        algo=AlgoChoice.parse(args.algo),
        nopath_default=args.nopath_default,
        pipeline=TextPipeline(exclusions=exclusions),
    )


def _cmd_build_graph(args) -> int:
    try:
        graph, stats = load_graph_tsv(args.input)
        save_cache(graph, args.out)
    except (OSError, LoadError) as exc:
        raise CliDataError(str(exc)) from exc
    print(
        json.dumps(
            {
                "nodes": graph.node_count,
                "edges": graph.edge_count,
                "lines": stats.lines,
                "assertions": stats.assertions,
                "malformed": stats.malformed,
                "self_loops": stats.self_loops,
                "duplicates": stats.duplicates,
                "cache": args.out,
            }
        )
    )
    return 0


def _cmd_detect(args) -> int:
    graph = _load_graph(args.graph)
    cfg = _detector_config(args)
    engine = PathEngine(graph, cfg.nopath_default)
    if args.sentence is not None:
        sentences = [args.sentence]
    elif args.input is None:
        raise CliDataError("no sentence given: pass a sentence or --input FILE")
    else:
        try:
            sentences = Path(args.input).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise CliDataError(str(exc)) from exc
    for sentence in sentences:
        if not sentence.strip():
            continue
        result = detect(sentence, config=cfg, engine=engine)
        if args.tsv:
            flagged = result.flagged if result.is_detection else "NA"
            print(f"{sentence}\t{flagged}")
        else:
            print(result.to_json())
    return 0


def _cmd_sim(args) -> int:
    graph = _load_graph(args.graph)
    engine = PathEngine(graph, args.nopath_default)
    algo = AlgoChoice.parse(args.algo)
    try:
        score = engine.conceptual_similarity(args.term_a, args.term_b, algo)
    except DegeneratePairError as exc:
        raise CliDataError(str(exc)) from exc
    payload = {
        "a_to_b": _num(score.a_to_b),
        "b_to_a": _num(score.b_to_a),
        "mean": _num(score.value),
    }
    if args.explain:
        payload["oov"] = list(score.oov)
        for key, (source, target) in (
            ("a_to_b_nodes", (args.term_a, args.term_b)),
            ("b_to_a_nodes", (args.term_b, args.term_a)),
        ):
            source_id, target_id = graph.id_of(source), graph.id_of(target)
            nodes = None
            if source_id is not None and target_id is not None:
                result = engine.shortest_path(source_id, target_id, algo, want_nodes=True)
                nodes = list(result.nodes) if result.is_finite else None
            payload[key] = nodes
    print(json.dumps(payload, ensure_ascii=False))
    return 0


def _cmd_substitute(args) -> int:
    try:
        frequency_list = FrequencyList.from_tsv(args.freq_list)
        hypernyms = HypernymOracle.from_file(args.hypernyms)
        lines = Path(args.input).read_text(encoding="utf-8").splitlines()
    except (OSError, ValueError) as exc:
        raise CliDataError(str(exc)) from exc
    bounds = None if args.no_length_gate else (args.min_len, args.max_len)
    lang = (lambda _s: "en") if args.assume_english else None
    if args.pretagged:
        records = []
        for line in lines:
            if not line.strip():
                continue
            try:
                tokens = parse_pretagged(line)
            except ValueError as exc:
                raise CliDataError(str(exc)) from exc
            sentence = " ".join(t.surface for t in tokens)
            records.append(
                substitute_sentence(
                    sentence,
                    frequency_list,
                    hypernyms,
                    lang_detector=lang,
                    length_bounds=bounds,
                    pretagged=tokens,
                )
            )
    else:
        records = list(
            substitute_corpus(
                (l for l in lines if l.strip()),
                frequency_list,
                hypernyms,
                lang_detector=lang,
                length_bounds=bounds,
            )
        )
    for record in records:
        if args.tsv:
            if record.is_substituted:
                print(f"{record.substituted}\t{record.nf_prime}")
        else:
            print(record.to_json())
    return 0


def _load_dataset(args):
    if args.erp:
        return erp_records()
    if not args.dataset:
        raise CliDataError("no dataset given: pass --dataset FILE or --erp")
    try:
        return load_eval_tsv(args.dataset)
    except (OSError, ValueError) as exc:
        raise CliDataError(str(exc)) from exc


def _cmd_evaluate(args) -> int:
    graph = _load_graph(args.graph)
    records = _load_dataset(args)
    try:
        report = evaluate(records, graph, _detector_config(args))
    except EmptyDatasetError as exc:
        raise CliDataError(str(exc)) from exc
    if args.tsv:
        print(f"total\t{report.total}")
        print(f"correct\t{report.correct}")
        print(f"incorrect\t{report.incorrect}")
        print(f"na\t{report.na}")
        print(f"accuracy\t{_num(report.accuracy)}")
    else:
        print(report.to_json())
    return 0


def _cmd_distributions(args) -> int:
    graph = _load_graph(args.graph)
    records = _load_dataset(args)
    if not records:
        raise CliDataError("no evaluation records")
    algos = [AlgoChoice.parse(name) for name in args.algos.split(",") if name.strip()]
    if not algos:
        raise CliDataError("no algorithms selected")
    rows = emit_distributions(records, graph, algos, _detector_config(args))
    sys.stdout.write(distributions_csv(rows))
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="macskit",
        description="Detect substituted terms via concept-graph path scoring.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-graph", help="compile an assertion TSV into a binary cache")
    p.add_argument("input", help="assertion TSV (start<TAB>relation<TAB>end)")
    p.add_argument("--out", required=True, help="cache file to write")
    p.set_defaults(func=_cmd_build_graph)

    p = sub.add_parser("detect", help="flag the most out-of-context term of a sentence")
    p.add_argument("sentence", nargs="?", default=None, help="sentence to score")
    p.add_argument("--input", default=None, help="file of sentences, one per line")
    _add_common(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("sim", help="conceptual similarity between two terms")
    p.add_argument("term_a")
    p.add_argument("term_b")
    p.add_argument("--explain", action="store_true", help="include witness paths")
    _add_common(p)
    p.set_defaults(func=_cmd_sim)

    p = sub.add_parser("substitute", help="generate labeled substituted sentences")
    p.add_argument("input", help="corpus file, one sentence per line")
    p.add_argument("--freq-list", required=True, help="word<TAB>frequency TSV")
    p.add_argument("--hypernyms", required=True, help="file of words that have a noun hypernym")
    p.add_argument("--min-len", type=int, default=5, help="length gate lower bound (tokens)")
    p.add_argument("--max-len", type=int, default=15, help="length gate upper bound (tokens)")
    p.add_argument("--no-length-gate", action="store_true", help="disable the length gate")
    p.add_argument(
        "--assume-english",
        action="store_true",
        help="skip language detection (treat every sentence as English)",
    )
    p.add_argument(
        "--pretagged",
        action="store_true",
        help="input lines are token/TAG pre-tagged sentences",
    )
    _add_common(p, graph=False)
    p.set_defaults(func=_cmd_substitute)

    p = sub.add_parser("evaluate", help="accuracy report over a labeled dataset")
    p.add_argument("--dataset", default=None, help="substituted_sentence<TAB>truth TSV")
    p.add_argument("--erp", action="store_true", help="use the embedded 22-sentence set")
    _add_common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("distributions", help="per-sentence MACS/path-length CSV")
    p.add_argument("--dataset", default=None, help="substituted_sentence<TAB>truth TSV")
    p.add_argument("--erp", action="store_true", help="use the embedded 22-sentence set")
    p.add_argument(
        "--algos",
        default="dijkstra,astar,bfs",
        help="comma-separated algorithms (default: all three)",
    )
    _add_common(p)
    p.set_defaults(func=_cmd_distributions)

    return parser


def cli_main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return args.func(args)
    except CliDataError as exc:
        print(f"macskit: {exc}", file=sys.stderr)
        return DATA_ERROR
    except (CacheFormatError, CacheVersionError, LoadError) as exc:
        print(f"macskit: {exc}", file=sys.stderr)
        return DATA_ERROR


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
