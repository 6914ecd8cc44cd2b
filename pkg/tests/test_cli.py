from __future__ import annotations

import json
from pathlib import Path

import pytest

from mistforge.cli import build_parser, run
from mistforge.code_model import Language
from mistforge.corpus import save_corpus
from mistforge.fixtures import generate_corpus


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    ws = tmp_path_factory.mktemp("cli")
    train = (generate_corpus(Language.PYTHON, 60, seed=31, id_prefix="ct")
             + generate_corpus(Language.JAVA, 60, seed=32, id_prefix="ct"))
    test = (generate_corpus(Language.PYTHON, 6, seed=33, id_prefix="cx")
            + generate_corpus(Language.JAVA, 6, seed=34, id_prefix="cx"))
    save_corpus(train, ws / "train.jsonl")
    save_corpus(test, ws / "test.jsonl")
    assert run(["model", "train-ref", "--corpus", str(ws / "train.jsonl"),
                "--out", str(ws / "ref.json")]) == 0
    assert run(["style", "build", "--corpus", str(ws / "train.jsonl"),
                "--out", str(ws / "style.json")]) == 0
    return ws


def attack_args(ws: Path, out: str, seed: str = "7") -> list[str]:
    return ["attack", "--input", str(ws / "test.jsonl"),
            "--model", f"builtin:{ws / 'ref.json'}",
            "--style", str(ws / "style.json"),
            "--style-corpus", str(ws / "train.jsonl"),
            "--seed", seed, "--out", out, "--jobs", "2"]


class TestExitCodes:
    def test_missing_required_flag_is_usage_error(self, workspace):
        with pytest.raises(SystemExit) as err:
            build_parser().parse_args(["attack", "--input", "x", "--out", "y"])
        assert err.value.code == 2

    def test_unknown_flag_is_usage_error(self, workspace):
        with pytest.raises(SystemExit) as err:
            build_parser().parse_args(["eval", "metrics", "--bogus", "1"])
        assert err.value.code == 2

    def test_unreachable_model_endpoint_is_exit_3(self, workspace, tmp_path):
        code = run(["model", "serve-check", "--endpoint", "http://127.0.0.1:9"])
        assert code == 3

    def test_missing_model_file_is_general_error(self, workspace, tmp_path):
        code = run(["attack", "--input", str(workspace / "test.jsonl"),
                    "--model", "builtin:/nonexistent/ref.json",
                    "--out", str(tmp_path / "o.jsonl")])
        assert code == 1


class TestArtifacts:
    def test_attack_writes_outcomes_and_manifest(self, workspace, tmp_path):
        out = tmp_path / "outcomes.jsonl"
        assert run(attack_args(workspace, str(out))) == 0
        records = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(records) == 12
        manifest = json.loads((tmp_path / "run-manifest.json").read_text())
        assert manifest["subcommand"] == "attack"
        assert manifest["seed"] == 7
        assert manifest["config"]["model"].startswith("builtin:")

    def test_metrics_json(self, workspace, tmp_path):
        out = tmp_path / "outcomes.jsonl"
        assert run(attack_args(workspace, str(out))) == 0
        assert run(["eval", "metrics", "--outcomes", str(out),
                    "--out", str(tmp_path / "metrics.json")]) == 0
        report = json.loads((tmp_path / "metrics.json").read_text())
        assert set(report) >= {"asr", "amq", "icr", "sd_mean", "ed_mean"}
        assert 0.0 <= report["asr"] <= 1.0

    def test_topsis_weight_configurations(self, workspace, tmp_path):
        alts = tmp_path / "alts.csv"
        alts.write_text("name,asr,icr,sd,ed,amq\n"
                        "a,0.6,0.2,0.5,100,60\n"
                        "b,0.4,0.1,0.3,80,40\n")
        for weights in ("0.2,0.2,0.2,0.2,0.2", "0.6,0.1,0.1,0.1,0.1"):
            out = tmp_path / f"topsis-{weights[:3]}.csv"
            assert run(["eval", "topsis", "--input", str(alts),
                        "--weights", weights, "--out", str(out)]) == 0
            lines = out.read_text().splitlines()
            assert lines[0] == "name,score,rank"
            assert len(lines) == 3


class TestReproducibility:
    def test_same_seed_byte_identical_outcomes(self, workspace, tmp_path):
        out_a = tmp_path / "a.jsonl"
        out_b = tmp_path / "b.jsonl"
        assert run(attack_args(workspace, str(out_a))) == 0
        assert run(attack_args(workspace, str(out_b))) == 0
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_different_seed_differs(self, workspace, tmp_path):
        out_a = tmp_path / "a.jsonl"
        out_b = tmp_path / "b.jsonl"
        assert run(attack_args(workspace, str(out_a), seed="7")) == 0
        assert run(attack_args(workspace, str(out_b), seed="8")) == 0
        assert out_a.read_bytes() != out_b.read_bytes()

    def test_env_seed_override(self, workspace, tmp_path, monkeypatch):
        out_env = tmp_path / "env.jsonl"
        out_flag = tmp_path / "flag.jsonl"
        monkeypatch.setenv("MISTFORGE_SEED", "8")
        args = attack_args(workspace, str(out_env))
        seed_at = args.index("--seed")
        del args[seed_at:seed_at + 2]
        assert run(args) == 0
        monkeypatch.delenv("MISTFORGE_SEED")
        assert run(attack_args(workspace, str(out_flag), seed="8")) == 0
        assert out_env.read_bytes() == out_flag.read_bytes()
        manifest = json.loads((tmp_path / "run-manifest.json").read_text())
        assert manifest["seed"] == 8
