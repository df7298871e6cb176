"""CLI tests: schemas, exit codes, determinism."""

import json
import math
import os

import pytest

from lssphase import cli


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_state_noon_csv(capsys):
    code, out, _ = run_cli(capsys, ["state", "--family", "noon", "--n", "10"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "k,prob"
    assert len(lines) == 12
    probs = [float(line.split(",")[1]) for line in lines[1:]]
    assert probs[0] == pytest.approx(0.5)
    assert probs[10] == pytest.approx(0.5)
    assert sum(probs) == pytest.approx(1.0, abs=1e-10)


def test_state_phase_uniform(capsys):
    code, out, _ = run_cli(capsys, ["state", "--family", "phase", "--n", "10"])
    assert code == 0
    probs = [float(line.split(",")[1]) for line in out.strip().split("\n")[1:]]
    assert all(p == pytest.approx(1.0 / 11.0, rel=1e-10) for p in probs)


def test_state_json(capsys):
    code, out, _ = run_cli(
        capsys, ["state", "--family", "noon", "--n", "3", "--format", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n_total"] == 3
    assert len(payload["amplitudes"]) == 4


def test_state_twin_fock_odd_rejected(capsys):
    code, _, err = run_cli(capsys, ["state", "--family", "twin-fock", "--n", "3"])
    assert code == 1
    assert "even" in err


def test_missing_required_value(capsys):
    code, _, err = run_cli(capsys, ["fisher", "--family", "fock"])
    assert code == 1
    assert "--n" in err


def test_unknown_family(capsys):
    code, _, _ = run_cli(capsys, ["state", "--family", "bogus", "--n", "2"])
    assert code == 1


def test_unknown_subcommand(capsys):
    assert run_cli(capsys, ["frobnicate"])[0] == 1


def test_dist_normalization(capsys):
    m = 512
    code, out, _ = run_cli(
        capsys, ["dist", "--family", "noon", "--n", "10", "-m", str(m)]
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "phi,p"
    assert len(lines) == m + 1
    p = [float(line.split(",")[1]) for line in lines[1:]]
    assert sum(p) * (2.0 * math.pi / m) == pytest.approx(1.0, abs=1e-9)


def test_dist_bad_m(capsys):
    code, _, _ = run_cli(capsys, ["dist", "--family", "noon", "--n", "4", "-m", "1"])
    assert code == 1


def test_fisher_noon(capsys):
    code, out, _ = run_cli(capsys, ["fisher", "--family", "noon", "--n", "10"])
    assert code == 0
    header, row = out.strip().split("\n")
    assert header == "n,f_q,f_q_analytic,f_lss,quad_error,rel_diff"
    fields = row.split(",")
    assert int(fields[0]) == 10
    assert float(fields[1]) == pytest.approx(100.0, abs=1e-10)
    assert float(fields[3]) == pytest.approx(100.0, rel=1e-6)


def test_fisher_json_sq_coh(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "fisher", "--family", "sq-coh", "--n-bar", "10",
            "--regime", "sqrt-shot", "--format", "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["f_q_analytic"] is None
    assert payload["rel_diff"] < 1e-6


def test_sweep_csv_and_exit_code(capsys):
    code, out, err = run_cli(
        capsys, ["sweep", "--family", "fock", "--n-min", "2", "--n-max", "6"]
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,f_q,f_q_analytic,f_lss,quad_error,rel_diff"
    assert [int(line.split(",")[0]) for line in lines[1:]] == [2, 3, 4, 5, 6]
    assert "mean_rel_diff_percent" in err


def test_sweep_json_mean_field(capsys):
    code, out, _ = run_cli(
        capsys,
        ["sweep", "--family", "noon", "--n-min", "1", "--n-max", "4",
         "--format", "json"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "noon"
    assert len(payload["rows"]) == 4
    assert payload["mean_rel_diff_percent"] <= 1e-4


def test_sweep_respects_parity_step(capsys):
    code, out, _ = run_cli(
        capsys, ["sweep", "--family", "twin-fock", "--n-min", "2", "--n-max", "8"]
    )
    assert code == 0
    ns = [int(line.split(",")[0]) for line in out.strip().split("\n")[1:]]
    assert ns == [2, 4, 6, 8]


def test_sweep_invalid_range(capsys):
    code, _, _ = run_cli(
        capsys, ["sweep", "--family", "fock", "--n-min", "9", "--n-max", "2"]
    )
    assert code == 1


def test_deterministic_output(capsys):
    argv = ["sweep", "--family", "phase", "--n-min", "1", "--n-max", "5"]
    _, out1, _ = run_cli(capsys, argv)
    _, out2, _ = run_cli(capsys, argv)
    assert out1 == out2


def test_jobs_flag_gives_identical_output(capsys):
    base = ["sweep", "--family", "noon", "--n-min", "1", "--n-max", "4"]
    _, out1, _ = run_cli(capsys, base)
    _, out2, _ = run_cli(capsys, base + ["--jobs", "2"])
    assert out1 == out2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = run_cli(
        capsys,
        ["fisher", "--family", "fock", "--n", "5", "--out", str(target)],
    )
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert text.startswith("n,f_q,")


def test_compare_all_small(tmp_path, capsys, monkeypatch):
    # shrink the default ranges so the full pipeline runs in well under a second
    monkeypatch.setattr(
        cli,
        "_DEFAULT_RANGES",
        {
            "fock": (2, 4, 1),
            "noon": (1, 3, 1),
            "twin-fock": (2, 4, 2),
        },
    )
    monkeypatch.setattr(
        cli, "_BUNDLE_N", {"fock": 4, "noon": 3, "twin-fock": 4}
    )
    out_dir = tmp_path / "bundle"
    code, out, _ = run_cli(capsys, ["compare-all", "--out", str(out_dir)])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == (
        "family,n_min,n_max,mean_rel_diff_percent,min_uncertainty_product"
    )
    assert len(lines) == 4
    for tag in ("fock", "noon", "twin-fock"):
        for suffix in ("sweep", "coefficients", "distribution"):
            assert (out_dir / ("%s_%s.csv" % (tag, suffix))).exists()
    summary = (out_dir / "summary.csv").read_text()
    assert summary == out


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
