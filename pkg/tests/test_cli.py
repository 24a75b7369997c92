"""CLI integration: subcommands, exit codes, reproducibility, config files."""

import json

import pytest

from hypnorm.cli import EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VIOLATION, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def jsonl(out):
    return [json.loads(line) for line in out.strip().splitlines() if line]


def strip_timing(out):
    docs = jsonl(out)
    for d in docs:
        d.pop("ms", None)
    return json.dumps(docs, sort_keys=True)


# -- verify ---------------------------------------------------------------------


def test_verify_haagerup_end_to_end(capsys):
    code, out, err = run_cli(
        capsys, "verify", "--ineq", "haagerup", "--group", "free:2",
        "--k", "2", "--trials", "5", "--seed", "1", "--radius", "6",
    )
    assert code == EXIT_OK
    docs = jsonl(out)
    assert len(docs) == 5
    for i, d in enumerate(docs):
        assert d["ineq"] == "haagerup"
        assert d["group"] == "free:2"
        assert d["k"] == 2 and d["d"] == 1 and d["R"] == 6
        assert d["seed"] == 1 and d["trial"] == i
        assert d["pass"] is True and d["assertive"] is True
        assert 0 < d["lhs"] <= d["rhs"] * (1 + 1e-9)
        assert d["ratio"] == pytest.approx(d["lhs"] / d["rhs"])
        assert "version" in d and "ms" in d
    assert "5 reports, 0 violations" in err


def test_verify_reproducible_bytes(capsys):
    args = ("verify", "--ineq", "buchholz,rd", "--group", "free:2",
            "--k", "1,2", "--trials", "3", "--seed", "9", "--radius", "4")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == EXIT_OK
    assert strip_timing(out1) == strip_timing(out2)
    # identical except ms even at raw-line level
    for l1, l2 in zip(out1.splitlines(), out2.splitlines()):
        d1, d2 = json.loads(l1), json.loads(l2)
        d1.pop("ms"), d2.pop("ms")
        assert d1 == d2


def test_forced_violation_exits_2(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ineq", "haagerup", "--group", "free:2",
        "--k", "1", "--trials", "2", "--seed", "3", "--radius", "4",
        "--rhs-scale", "0.01",
    )
    assert code == EXIT_VIOLATION
    docs = jsonl(out)
    assert any(not d["pass"] for d in docs)


def test_remark3_never_fails_alone(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ineq", "remark3", "--group", "free:2",
        "--k", "1", "--trials", "2", "--seed", "3", "--radius", "4",
        "--rhs-scale", "1e-9",
    )
    docs = jsonl(out)
    assert all(d["assertive"] is False for d in docs)
    assert any(not d["pass"] for d in docs)
    assert code == EXIT_OK  # non-assertive violations do not change the exit code


def test_verify_main_zfp_unverified_delta(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ineq", "main", "--group", "zfp:3,3",
        "--k", "2", "--trials", "3", "--seed", "2", "--radius", "5",
        "--delta", "estimate:4",
    )
    assert code == EXIT_OK
    for d in jsonl(out):
        assert d["delta"] == 0
        assert d["delta_unverified"] is True


def test_verify_lemma_block(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ineq", "lemma-block", "--group", "free:2",
        "--k", "2", "--trials", "1", "--seed", "4", "--m-max", "3",
        "--delta", "proven",
    )
    assert code == EXIT_OK
    docs = jsonl(out)
    pairs = {(d["m"], d["n"]) for d in docs}
    assert pairs == {(m, n) for m in range(4) for n in range(4) if abs(m - n) <= 2}
    assert all(d["pass"] for d in docs)


def test_verify_counterexample(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--ineq", "counterexample", "--group", "free:2", "--k", "2",
    )
    assert code == EXIT_OK
    (doc,) = jsonl(out)
    assert doc["rhs"] == 3.0  # t_2
    assert doc["lhs"] == pytest.approx(3.0, rel=1e-6)


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "--ineq", "haagerup", "--group", "free:0", "--k", "1"),
        ("verify", "--ineq", "nope", "--group", "free:2", "--k", "1"),
        ("verify", "--group", "free:2", "--k", "1"),  # missing --ineq
        ("verify", "--ineq", "haagerup", "--group", "free:2"),  # missing --k
        ("verify", "--ineq", "haagerup", "--group", "zfp:3,3", "--k", "1"),  # free only
        ("verify", "--ineq", "main", "--group", "zfp:3,3", "--k", "1"),  # delta needed
        ("verify", "--ineq", "main", "--group", "zfp:3,3", "--k", "1", "--delta", "proven"),
        ("verify", "--ineq", "haagerup", "--group", "free:2", "--k", "1", "--dim", "2"),
        ("verify", "--ineq", "haagerup", "--group", "free:2", "--k", "-2"),
        ("spheres", "--group", "free:2"),  # argparse error: --k-max required
        ("nonsense",),
    ],
)
def test_usage_errors_exit_64(capsys, argv):
    code = main(list(argv))
    capsys.readouterr()
    assert code == EXIT_USAGE


def test_resource_limit_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("HYPNORM_CAP", "10")
    code, _, err = run_cli(
        capsys, "verify", "--ineq", "haagerup", "--group", "free:2",
        "--k", "2", "--trials", "1", "--seed", "1",
    )
    assert code == EXIT_RESOURCE
    assert "resource limit" in err


# -- other subcommands ------------------------------------------------------------


def test_spheres_subcommand(capsys):
    code, out, _ = run_cli(capsys, "spheres", "--group", "zfp:3,3", "--k-max", "2", "--elements")
    assert code == EXIT_OK
    docs = jsonl(out)
    assert [d["sphere_size"] for d in docs] == [1, 4, 8]
    assert docs[1]["elements"] == ["a1^1", "a1^2", "a2^1", "a2^2"]


def test_delta_subcommand(capsys):
    code, out, _ = run_cli(capsys, "delta", "--group", "zfp:3,3", "--radius", "4")
    assert code == EXIT_OK
    docs = jsonl(out)
    assert [d["radius"] for d in docs] == [1, 2, 3, 4]
    assert [d["delta"] for d in docs] == [0, 0, 0, 0]
    assert all(d["is_exhaustive"] for d in docs)


def test_delta_free1(capsys):
    code, out, _ = run_cli(capsys, "delta", "--group", "free:1", "--radius", "5")
    assert code == EXIT_OK
    assert [d["delta"] for d in jsonl(out)] == [0] * 5


def test_counterexample_subcommand(capsys):
    code, out, err = run_cli(
        capsys, "counterexample", "--k-max", "9", "--d-exponent", "1", "--verify-norms-to", "2"
    )
    assert code == EXIT_OK
    docs = jsonl(out)
    assert [d["t"] for d in docs[:5]] == [1, 3, 7, 21, 61]
    assert docs[1]["norm_value"] == pytest.approx(3.0, rel=1e-6)
    ratios = [d["ratio"] for d in docs]
    assert ratios == sorted(ratios)
    assert [d["k"] for d in docs if d["exceeds"]][0] == 8
    assert "first ratio > 1 at k = 8" in err


def test_trace_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "trace", "--group", "free:2", "--k", "2", "--m-max", "3", "--delta", "proven"
    )
    assert code == EXIT_OK
    docs = jsonl(out)
    assert all(d["ok"] for d in docs)
    assert {(d["m"], d["n"]) for d in docs} == {
        (m, n) for m in range(4) for n in range(4) if abs(m - n) <= 2
    }


def test_trace_single_pair(capsys):
    code, out, _ = run_cli(
        capsys, "trace", "--group", "zfp:3,3", "--k", "2", "--m", "2", "--n", "2",
        "--delta", "estimate:3",
    )
    assert code == EXIT_OK
    (doc,) = jsonl(out)
    assert doc["ok"] and doc["delta_unverified"] is True


# -- config files and formats --------------------------------------------------------


def test_config_toml_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('group = "free:2"\nineq = "haagerup"\nk = 1\ntrials = 4\nseed = 8\n')
    code, out, _ = run_cli(capsys, "verify", "--config", str(cfg))
    assert code == EXIT_OK
    docs = jsonl(out)
    assert len(docs) == 4 and docs[0]["k"] == 1
    assert docs[0]["R"] == 5  # default radius k+4
    # flags override the config
    code, out, _ = run_cli(capsys, "verify", "--config", str(cfg), "--trials", "2", "--k", "2")
    docs = jsonl(out)
    assert len(docs) == 2 and docs[0]["k"] == 2


def test_config_json(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"group": "free:2", "ineq": "rd", "k": 1, "trials": 2, "seed": 5}))
    code, out, _ = run_cli(capsys, "verify", "--config", str(cfg))
    assert code == EXIT_OK
    assert len(jsonl(out)) == 2


def test_table_format_and_out_file(capsys, tmp_path):
    out_path = tmp_path / "reports.txt"
    code, _, _ = run_cli(
        capsys, "verify", "--ineq", "haagerup", "--group", "free:2", "--k", "1",
        "--trials", "2", "--seed", "1", "--radius", "4",
        "--format", "table", "--out", str(out_path),
    )
    assert code == EXIT_OK
    text = out_path.read_text()
    assert text.startswith("ineq")
    assert "haagerup" in text


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "hypnorm", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "hypnorm" in proc.stdout
