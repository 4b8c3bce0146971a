"""End-to-end command-line checks: subcommands, formats, exit codes."""

import json

import pytest

from macskit.cli import cli_main

from conftest import (
    EX1_PATHS,
    EX2_PATHS,
    TABLE3_EDGES,
    edges_to_assertions,
    paths_to_assertions,
)


def write_tsv(path, assertions):
    lines = [f"{a.start}\t{a.relation}\t{a.end}" for a in assertions]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture()
def ex1_cache(tmp_path):
    tsv = tmp_path / "ex1.tsv"
    write_tsv(tsv, paths_to_assertions(EX1_PATHS))
    cache = tmp_path / "ex1.bin"
    assert cli_main(["build-graph", str(tsv), "--out", str(cache)]) == 0
    return cache


@pytest.fixture()
def table3_cache(tmp_path):
    tsv = tmp_path / "t3.tsv"
    write_tsv(tsv, edges_to_assertions(TABLE3_EDGES))
    cache = tmp_path / "t3.bin"
    assert cli_main(["build-graph", str(tsv), "--out", str(cache)]) == 0
    return cache


class TestBuildGraph:
    def test_reports_counts(self, tmp_path, capsys):
        tsv = tmp_path / "kb.tsv"
        write_tsv(tsv, paths_to_assertions(EX1_PATHS))
        cache = tmp_path / "kb.bin"
        assert cli_main(["build-graph", str(tsv), "--out", str(cache)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["nodes"] == 12
        assert payload["edges"] == 15
        assert cache.exists()

    def test_missing_input(self, tmp_path):
        code = cli_main(
            ["build-graph", str(tmp_path / "nope.tsv"), "--out", str(tmp_path / "o.bin")]
        )
        assert code == 2


class TestDetect:
    def test_flags_flower(self, ex1_cache, capsys):
        code = cli_main(
            ["detect", "--graph", str(ex1_cache), "we will attack the airport with flower"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["flagged"] == "flower"
        assert payload["scores"] == {"attack": 3, "airport": 3, "flower": 2.5}

    def test_accepts_raw_tsv_graph(self, tmp_path, capsys):
        tsv = tmp_path / "ex1.tsv"
        write_tsv(tsv, paths_to_assertions(EX1_PATHS))
        code = cli_main(
            ["detect", "--graph", str(tsv), "we will attack the airport with flower"]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out)["flagged"] == "flower"

    def test_input_file_jsonl(self, ex1_cache, tmp_path, capsys):
        src = tmp_path / "sentences.txt"
        src.write_text(
            "we will attack the airport with flower\nThe jews had been expected\n",
            encoding="utf-8",
        )
        assert cli_main(["detect", "--graph", str(ex1_cache), "--input", str(src)]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2
        assert json.loads(lines[0])["flagged"] == "flower"
        assert json.loads(lines[1])["na_reason"] == "bag too small"

    def test_tsv_mode(self, ex1_cache, capsys):
        code = cli_main(
            [
                "detect", "--graph", str(ex1_cache), "--tsv",
                "we will attack the airport with flower",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out.strip()
        assert out == "we will attack the airport with flower\tflower"

    def test_no_sentence_is_data_error(self, ex1_cache):
        assert cli_main(["detect", "--graph", str(ex1_cache)]) == 2


class TestSim:
    def test_exact_payload(self, table3_cache, capsys):
        assert cli_main(["sim", "bomb", "blast", "--graph", str(table3_cache)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"a_to_b": 2, "b_to_a": 4, "mean": 3}

    def test_fractional_mean(self, ex1_cache, capsys):
        assert cli_main(
            ["sim", "attack", "airport", "--graph", str(ex1_cache)]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload == {"a_to_b": 2, "b_to_a": 3, "mean": 2.5}

    def test_explain_includes_witness(self, ex1_cache, capsys):
        assert cli_main(
            ["sim", "attack", "airport", "--graph", str(ex1_cache), "--explain"]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["a_to_b_nodes"] == ["attack", "terrorist", "airport"]

    def test_degenerate_pair_is_data_error(self, ex1_cache):
        assert cli_main(["sim", "bomb", "Bomb", "--graph", str(ex1_cache)]) == 2

    def test_algo_flag(self, table3_cache, capsys):
        for algo in ("dijkstra", "astar", "bfs"):
            assert cli_main(
                ["sim", "bomb", "blast", "--graph", str(table3_cache), "--algo", algo]
            ) == 0
            assert json.loads(capsys.readouterr().out)["mean"] == 3


class TestSubstitute:
    @pytest.fixture()
    def data_files(self, tmp_path):
        freq = tmp_path / "freq.tsv"
        freq.write_text(
            "author\t53195\ntelevision\t53263\nscore\t17415\nstruggle\t17429\n",
            encoding="utf-8",
        )
        hyp = tmp_path / "hyp.txt"
        hyp.write_text("author\nscore\n", encoding="utf-8")
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(
            "the author is in position here now\nshort\n", encoding="utf-8"
        )
        return freq, hyp, corpus

    def test_jsonl_output(self, data_files, capsys):
        freq, hyp, corpus = data_files
        code = cli_main(
            [
                "substitute", str(corpus),
                "--freq-list", str(freq), "--hypernyms", str(hyp),
                "--assume-english",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2
        first = json.loads(lines[0])
        assert first["nf"] == "author" and first["nf_prime"] == "television"
        assert json.loads(lines[1])["skip_reason"] == "length"

    def test_tsv_pairs_only_successes(self, data_files, capsys):
        freq, hyp, corpus = data_files
        code = cli_main(
            [
                "substitute", str(corpus),
                "--freq-list", str(freq), "--hypernyms", str(hyp),
                "--assume-english", "--tsv",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines == ["the television is in position here now\ttelevision"]

    def test_missing_freq_list(self, data_files, tmp_path):
        _, hyp, corpus = data_files
        code = cli_main(
            [
                "substitute", str(corpus),
                "--freq-list", str(tmp_path / "none.tsv"), "--hypernyms", str(hyp),
            ]
        )
        assert code == 2

    def test_pretagged_input(self, data_files, tmp_path, capsys):
        freq, hyp, _ = data_files
        src = tmp_path / "tagged.txt"
        src.write_text(
            "the/DT author/NN is/VBZ in/IN position/NN here/RB now/RB\n",
            encoding="utf-8",
        )
        code = cli_main(
            [
                "substitute", str(src), "--pretagged",
                "--freq-list", str(freq), "--hypernyms", str(hyp),
                "--assume-english", "--tsv",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out.strip()
        assert out == "the television is in position here now\ttelevision"

    def test_malformed_pretagged_is_data_error(self, data_files, tmp_path):
        freq, hyp, _ = data_files
        src = tmp_path / "tagged.txt"
        src.write_text("oops no tags at all\n", encoding="utf-8")
        code = cli_main(
            [
                "substitute", str(src), "--pretagged",
                "--freq-list", str(freq), "--hypernyms", str(hyp),
            ]
        )
        assert code == 2


class TestEvaluate:
    def test_dataset_run(self, ex1_cache, tmp_path, capsys):
        ds = tmp_path / "ds.tsv"
        ds.write_text(
            "we will attack the airport with flower\tflower\n"
            "The jews had been expected\tjews\n",
            encoding="utf-8",
        )
        code = cli_main(
            ["evaluate", "--graph", str(ex1_cache), "--dataset", str(ds)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["total"] == 2
        assert report["correct"] == 1
        assert report["na"] == 1
        assert report["total"] == report["correct"] + report["incorrect"] + report["na"]

    def test_missing_dataset_path(self, ex1_cache):
        assert cli_main(["evaluate", "--graph", str(ex1_cache)]) == 2

    def test_nonexistent_dataset_file(self, ex1_cache, tmp_path):
        code = cli_main(
            ["evaluate", "--graph", str(ex1_cache), "--dataset", str(tmp_path / "x.tsv")]
        )
        assert code == 2

    def test_erp_runs(self, ex1_cache, capsys):
        assert cli_main(["evaluate", "--graph", str(ex1_cache), "--erp"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["total"] == 22

    def test_empty_dataset_file(self, ex1_cache, tmp_path):
        ds = tmp_path / "empty.tsv"
        ds.write_text("# nothing\n", encoding="utf-8")
        assert cli_main(["evaluate", "--graph", str(ex1_cache), "--dataset", str(ds)]) == 2


class TestDistributions:
    def test_csv_output(self, ex1_cache, tmp_path, capsys):
        ds = tmp_path / "ds.tsv"
        ds.write_text("we will attack the airport with flower\tflower\n", encoding="utf-8")
        code = cli_main(
            ["distributions", "--graph", str(ex1_cache), "--dataset", str(ds)]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "index,algo,macs_min,avg_path_length"
        assert lines[1:] == [
            "0,dijkstra,2.5,2.8333",
            "0,astar,2.5,2.8333",
            "0,bfs,2.5,2.8333",
        ]

    def test_algo_subset(self, ex1_cache, tmp_path, capsys):
        ds = tmp_path / "ds.tsv"
        ds.write_text("we will attack the airport with flower\tflower\n", encoding="utf-8")
        code = cli_main(
            [
                "distributions", "--graph", str(ex1_cache),
                "--dataset", str(ds), "--algos", "bfs",
            ]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[1] == "0,bfs,2.5,2.8333"


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self, ex1_cache):
        assert cli_main(["detect", "--graph", str(ex1_cache), "--bogus", "x"]) == 1

    def test_no_subcommand_is_usage_error(self):
        assert cli_main([]) == 1

    def test_unknown_subcommand_is_usage_error(self):
        assert cli_main(["frobnicate"]) == 1

    def test_version_clean_exit(self):
        assert cli_main(["--version"]) == 0

    def test_cache_version_mismatch_is_data_error(self, tmp_path):
        stale = tmp_path / "old.bin"
        stale.write_bytes(b"MACSKB0\n" + b"\x00" * 16)
        assert cli_main(["sim", "a", "b", "--graph", str(stale)]) == 2

    def test_missing_graph_file_is_data_error(self, tmp_path):
        assert cli_main(["sim", "a", "b", "--graph", str(tmp_path / "no.bin")]) == 2
