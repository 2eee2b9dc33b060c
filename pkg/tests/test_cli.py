"""End-to-end tests of the connecte command line on a small generated dataset"""

import csv
import json
import logging
import os

import pytest

from connecte.cli import build_parser, main
from connecte.const import EXIT_CONFIG, EXIT_DATA, EXIT_NUMERIC, EXIT_OK
from connecte.model import checkpoint_digest
from connecte.training import J1

log = logging.getLogger("connecte.tests.test_cli")

N_ENTITIES = 24
VALID = range(16, 20)
TEST = range(20, 24)
TRAIN_FLAGS = ["--kappa", "8", "--ell", "4", "--epochs", "4", "--batch", "16", "--seed", "5"]


def _entity(i):
    return f"/m/{i:03d}"


def _type(i):
    return f"/type/{i % 4}"


def _write(path, rows):
    with open(path, "w", encoding="utf-8") as handle:
        handle.writelines("\t".join(row) + "\n" for row in rows)
    return str(path)


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Raw files, a prepared data directory and one trained checkpoint"""
    root = tmp_path_factory.mktemp("cli")
    triples = []
    for i in range(N_ENTITIES):
        if i % 4 < 3:
            rel = f"/rel/{i % 4}"
            triples.append((_entity(i), rel, _entity((i + 1) % N_ENTITIES)))
            triples.append((_entity(i), rel, _entity((i + 5) % N_ENTITIES)))
    held_out = set(VALID) | set(TEST)
    raw = {
        "triples": _write(root / "train.tsv", triples),
        "types": _write(
            root / "types.tsv",
            [(_entity(i), _type(i)) for i in range(N_ENTITIES) if i not in held_out],
        ),
        "valid": _write(root / "valid.tsv", [(_entity(i), _type(i)) for i in VALID]),
        "test": _write(root / "test.tsv", [(_entity(i), _type(i)) for i in TEST]),
    }
    data_dir = str(root / "prepared")
    argv = ["prepare", "--triples", raw["triples"], "--types", raw["types"], "--out-dir", data_dir]
    argv += ["--valid-types", raw["valid"], "--test-types", raw["test"]]
    assert main(argv) == EXIT_OK
    checkpoint = str(root / "ckpt")
    assert main(["train", "--data-dir", data_dir, "--out", checkpoint, *TRAIN_FLAGS]) == EXIT_OK
    return {"root": root, "raw": raw, "data_dir": data_dir, "checkpoint": checkpoint}


def _read_json(path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def test_prepare_outputs(workspace, capsys, tmp_path):
    raw = workspace["raw"]
    out = str(tmp_path / "disc")
    argv = ["prepare", "--triples", raw["triples"], "--types", raw["types"], "--out-dir", out]
    assert main([*argv, "--min-count", "2"]) == EXIT_OK
    printed = capsys.readouterr().out
    assert "unique type triples: 3" in printed
    assert "discarded" in printed
    expected = ["vocab_entity.tsv", "vocab_relation.tsv", "vocab_type.tsv", "triples.tsv"]
    expected += ["types.tsv", "type_triples.tsv", "run_manifest.json"]
    for name in expected:
        assert os.path.isfile(os.path.join(out, name)), name
    manifest = _read_json(os.path.join(out, "run_manifest.json"))
    assert manifest["command"] == "prepare"
    assert manifest["min_count"] == 2
    assert set(manifest["datasets"]) == {"triples", "types"}


def test_stats(workspace, capsys):
    assert main(["stats", "--data-dir", workspace["data_dir"]]) == EXIT_OK
    lines = dict(line.split("\t") for line in capsys.readouterr().out.splitlines())
    assert lines["entities"] == str(N_ENTITIES)
    assert lines["types"] == "4"
    assert lines["relations"] == "3"
    assert lines["triples"] == "36"


def test_train_outputs(workspace):
    checkpoint = workspace["checkpoint"]
    for name in ("manifest.json", "run_manifest.json", "loss_history.csv", "E.bin", "M.bin"):
        assert os.path.isfile(os.path.join(checkpoint, name)), name
    manifest = _read_json(os.path.join(checkpoint, "run_manifest.json"))
    assert manifest["config"]["kappa"] == 8
    assert manifest["config"]["alpha"] == 0.1
    assert manifest["seed"] == 5
    assert len(manifest["loss_history"]) == 4
    assert manifest["checkpoint_sha256"] == checkpoint_digest(checkpoint)
    with open(os.path.join(checkpoint, "loss_history.csv"), newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0][:4] == ["epoch", "j1", "j2", "j3"]
    assert [row[0] for row in rows[1:]] == ["1", "2", "3", "4"]


def test_train_is_reproducible(workspace, tmp_path):
    again = str(tmp_path / "again")
    assert main(["train", "--data-dir", workspace["data_dir"], "--out", again, *TRAIN_FLAGS]) == 0
    assert checkpoint_digest(again) == checkpoint_digest(workspace["checkpoint"])


def test_train_with_validation(workspace, tmp_path):
    out = str(tmp_path / "validated")
    args = ["train", "--data-dir", workspace["data_dir"], "--out", out, *TRAIN_FLAGS]
    assert main([*args, "--valid-types", workspace["raw"]["valid"], "--eval-every", "2"]) == 0
    validation = _read_json(os.path.join(out, "run_manifest.json"))["validation"]
    assert [row["epoch"] for row in validation] == [2, 4]
    assert all(0 < row["valid_mrr_composite"] <= 1 for row in validation)


def test_eval_report_is_reproducible(workspace, tmp_path):
    outputs = []
    for name in ("a", "b"):
        out = str(tmp_path / name)
        assert main(["eval", "--checkpoint", workspace["checkpoint"], "--out", out]) == EXIT_OK
        with open(os.path.join(out, "typing_report.json"), "rb") as handle:
            outputs.append(handle.read())
    assert outputs[0] == outputs[1]
    report = json.loads(outputs[0])
    assert report["evaluated"] == len(TEST)
    assert report["mode"] == "composite"
    assert report["lambda"] == 0.85
    assert report["manifest_sha256"]


def test_eval_e2t_equals_composite_with_lambda_one(workspace, tmp_path):
    reports = {}
    for mode in ("e2t", "composite"):
        out = str(tmp_path / mode)
        argv = ["eval", "--checkpoint", workspace["checkpoint"], "--mode", mode, "--out", out]
        assert main([*argv, "--lambda", "1"]) == EXIT_OK
        reports[mode] = _read_json(os.path.join(out, "typing_report.json"))
    for key in ("mrr", "hits_at", "evaluated"):
        assert reports["e2t"][key] == reports["composite"][key]


def test_classify(workspace, capsys):
    assert main(["classify", "--checkpoint", workspace["checkpoint"]]) == EXIT_OK
    assert "accuracy=" in capsys.readouterr().out
    out = os.path.join(workspace["checkpoint"], "classify")
    report = _read_json(os.path.join(out, "classify_report.json"))
    assert 0 <= report["accuracy"] <= 1
    assert report["seed"] == 5
    assert os.path.isfile(os.path.join(out, "pr_curve.tsv"))


def test_predict(workspace, capsys):
    argv = ["predict", "--checkpoint", workspace["checkpoint"], "--entity", _entity(21)]
    assert main([*argv, "--topk", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [line.split("\t")[0] for line in lines] == ["1", "2", "3"]
    assert all(line.split("\t")[1].startswith("/type/") for line in lines)


def test_predict_unknown_entity(workspace, caplog):
    argv = ["predict", "--checkpoint", workspace["checkpoint"], "--entity", "/m/0999"]
    assert main(argv) == EXIT_DATA
    assert "did you mean" in caplog.text


def test_missing_input_writes_nothing(workspace, tmp_path):
    out = tmp_path / "never"
    argv = ["eval", "--checkpoint", workspace["checkpoint"], "--out", str(out)]
    assert main([*argv, "--test", str(tmp_path / "missing.tsv")]) == EXIT_DATA
    assert not out.exists()
    assert main(["train", "--data-dir", str(tmp_path / "nope"), "--out", str(out)]) == EXIT_DATA
    assert not out.exists()


def test_invalid_configuration(workspace, tmp_path):
    out = tmp_path / "never"
    base = ["train", "--data-dir", workspace["data_dir"], "--out", str(out)]
    assert main([*base, "--kappa", "4", "--ell", "4"]) == EXIT_CONFIG
    assert main([*base, "--lambda", "1.5"]) == EXIT_CONFIG
    assert main(["prepare", "--types", "x.tsv"]) == EXIT_CONFIG
    assert not out.exists()


def test_argument_errors_exit_with_config_code():
    with pytest.raises(SystemExit) as excinfo:
        build_parser().parse_args(["train", "--epochs", "many"])
    assert excinfo.value.code == EXIT_CONFIG


def test_config_file_precedence(workspace, tmp_path):
    config = tmp_path / "run.conf"
    config.write_text("# small run\nkappa = 8\nell=4\nepochs = 3\nbatch = 16\nlambda = 0.5\n")
    out = str(tmp_path / "configured")
    argv = ["train", "--config", str(config), "--data-dir", workspace["data_dir"], "--out", out]
    assert main([*argv, "--epochs", "1"]) == EXIT_OK
    echoed = _read_json(os.path.join(out, "run_manifest.json"))["config"]
    assert (echoed["kappa"], echoed["ell"], echoed["epochs"]) == (8, 4, 1)
    assert (echoed["batch_size"], echoed["lambda_weight"]) == (16, 0.5)


def test_config_file_unknown_key(workspace, tmp_path):
    config = tmp_path / "bad.conf"
    config.write_text("momentum = 0.9\n")
    argv = ["train", "--config", str(config), "--data-dir", workspace["data_dir"]]
    assert main([*argv, "--out", str(tmp_path / "x")]) == EXIT_CONFIG


@pytest.mark.parametrize(
    "line", ["epochs = 800.7", "kappa = True", "init_rule = 3"], ids=["float", "bool", "int"]
)
def test_config_file_lossy_values(workspace, tmp_path, line):
    config = tmp_path / "lossy.conf"
    config.write_text(line + "\n")
    out = str(tmp_path / "lossy")
    argv = ["train", "--config", str(config), "--data-dir", workspace["data_dir"], "--out", out]
    assert main(argv) == EXIT_CONFIG
    assert not os.path.exists(out)


def test_numerical_failure_exit_code(workspace, tmp_path, mocker):
    mocker.patch.object(J1, "step", return_value=float("inf"))
    out = str(tmp_path / "diverged")
    argv = ["train", "--data-dir", workspace["data_dir"], "--out", out, *TRAIN_FLAGS]
    assert main(argv) == EXIT_NUMERIC
    assert not os.path.exists(out)
