import json
import os

import pytest

from orthoplex import cli


def run_cli(args, capsys):
    code = cli.handle_args(cli.configure_args(args))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")]


def test_usage(capsys):
    """ Default action is to display usage and sys.exit """
    with pytest.raises(SystemExit) as exc:
        cli.configure_args([])
    assert exc.type == SystemExit
    assert exc.value.code == 0
    usage = capsys.readouterr().out
    assert usage.startswith("usage: orthoplex")


def test_version(capsys):
    from orthoplex import __version__
    args = cli.configure_args(["--version"])
    with pytest.raises(SystemExit) as exc:
        cli.handle_args(args)
    assert exc.type == SystemExit
    version = capsys.readouterr().out
    assert version == __version__ + '\n'  # print adds newline


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        cli.configure_args(["frobnicate"])
    assert exc.value.code == 2


def test_oversized_simplex(capsys):
    """
    Is a module error reported as a JSON error object with exit code 1?
    """
    code, lines = run_cli(["build", "simplex", "--q", "4", "--d", "2"], capsys)
    assert code == 1
    assert lines[-1]["error"] == "dimension"


def test_missing_build_option(capsys):
    code, lines = run_cli(["build", "orthoplex", "--d", "3"], capsys)
    assert code == 1 and lines[-1]["error"] == "argument"


def test_build_entropy(capsys):
    code, lines = run_cli(["build", "entropy", "--d", "4", "--n", "6", "--kind", "high"], capsys)
    assert code == 0
    assert lines[0]["tuple"] == "2+2"
    assert (lines[0]["d"], lines[0]["n"]) == (4, 6)


def test_analyze_orthoplex(capsys, tmp_path):
    """
    Does an orthoplex subset analyse as a zero-coherence, unit-margin code?
    """
    _, lines = run_cli(["build", "orthoplex", "--d", "3", "--n", "5"], capsys)
    config = tmp_path / "orthoplex.json"
    config.write_text(json.dumps(lines[0]))

    code, lines = run_cli(["analyze", "--config", str(config)], capsys)
    out = lines[0]
    assert code == 0
    assert out["coherence"] == 0.0
    assert out["margin"] == pytest.approx(1.0, abs=1e-8)
    assert out["softmax_rattlers"] == [] and out["tammes_rattlers"] == []
    assert out["decomposition"]["batches"] == [[0, 1], [2, 3]]


def test_analyze_invalid_file(capsys, nonunit_file):
    code, lines = run_cli(["analyze", "--config", nonunit_file], capsys)
    assert code == 1 and lines[-1]["error"] == "validation"


def test_loss(capsys, square_file):
    code, lines = run_cli(["loss", "--config", square_file, "--tau", "1.0", "--closed-form", "1+1",
                           "--hardmax", "--batch-c", "1.0"], capsys)
    assert code == 0
    assert [line["kind"] for line in lines] == ["cross-entropy", "closed-form", "hardmax", "l_tau_c"]
    assert lines[0]["loss"] == pytest.approx(lines[1]["loss"], abs=1e-12)
    assert lines[2]["loss"] == pytest.approx(-1.0)


def test_loss_invalid_temperature(capsys, square_file):
    code, lines = run_cli(["loss", "--config", square_file, "--tau", "0"], capsys)
    assert code == 1 and lines[-1]["error"] == "validation"


def test_loss_with_features(capsys, square_file, square_features_file):
    code, lines = run_cli(["loss", "--config", square_file, "--features", square_features_file,
                           "--tau", "0.5"], capsys)
    assert code == 0 and len(lines) == 1


@pytest.mark.parametrize(
    ("name_title", "config_fixture"), [
        ("PERMUTED_WEIGHTS", "square_permuted_file"),
        ("OTHER_SHAPE", "orthoplex_3_5_file")
    ]
)
def test_loss_features_weights_mismatch(capsys, request, square_features_file, name_title, config_fixture):
    """
    Is a features file whose weights differ from the configuration refused?
    """
    config_file = request.getfixturevalue(config_fixture)
    code, lines = run_cli(["loss", "--config", config_file, "--features", square_features_file,
                           "--tau", "0.5"], capsys)
    assert code == 1 and lines[-1]["error"] == "argument"


def test_sweep(capsys):
    code, lines = run_cli(["sweep", "--d", "6", "--n", "10", "--tau-lo", "0.36", "--tau-hi", "0.61"], capsys)
    out = lines[-1]
    assert code == 0
    assert out["crossovers"][0]["tau"] == pytest.approx(0.4968, abs=5e-4)
    assert out["sequence"] == ["3+1+1+1", "2+2+1+1"]


def test_sweep_csv_file(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, _ = run_cli(["sweep", "--d", "8", "--n", "10", "--tau-lo", "0.36", "--tau-hi", "0.61",
                       "--grid", "32", "--csv", str(target)], capsys)
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "tau,7+1,6+2,5+3,4+4,argmin"
    assert len(lines) == 33


def test_thresholds(capsys):
    code, lines = run_cli(["thresholds", "--n", "10"], capsys)
    assert code == 0
    assert lines[0]["concavity"] == pytest.approx(0.3916, abs=5e-4)
    assert lines[0]["convexity"] == pytest.approx(0.5847, abs=5e-4)


def test_optimize_output_dir(capsys, tmp_path):
    """
    Are trajectories, final states and the manifest written per seed?
    """
    code, lines = run_cli(["optimize", "--d", "2", "--n", "4", "--tau", "0.5", "--seeds", "2",
                           "--max-iters", "20", "--output-dir", str(tmp_path)], capsys)
    assert code == 0
    assert [line["seed"] for line in lines[:2]] == [0, 1]
    assert "gram_error_low" in lines[0]["metrics"]
    manifest = lines[-1]["manifest"]
    assert manifest["seeds"] == [0, 1] and manifest["best_seed"] in (0, 1)
    assert sorted(manifest["sha256"]) == ["state_0.json", "state_1.json", "trajectory_0.csv", "trajectory_1.csv"]
    for name in manifest["sha256"]:
        assert os.path.exists(tmp_path / name)
    assert json.loads((tmp_path / "manifest.json").read_text())["tau"] == 0.5


def test_optimize_annealed(capsys):
    code, lines = run_cli(["optimize", "--d", "2", "--n", "4", "--tau", "0.2", "--max-iters", "10",
                           "--start-tau", "0.5", "--stages", "3"], capsys)
    assert code == 0
    assert lines[-1]["manifest"]["anneal"] == {"start_tau": 0.5, "stages": 3}


def test_verify_list_suites(capsys):
    code, _ = run_cli(["verify", "--list-suites"], capsys)
    assert code == 0


def test_verify_json_output(capsys):
    code, lines = run_cli(["verify", "--suite", "codes", "--json-output"], capsys)
    assert code == 0
    assert all(line["passed"] for line in lines[:-1])
    assert lines[-1]["verify_results"]["failures"] == 0


def test_verify_unknown_suite(capsys):
    code, lines = run_cli(["verify", "--suite", "nonsense"], capsys)
    assert code == 1 and lines[-1]["error"] == "argument"
