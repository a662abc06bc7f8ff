import json
import subprocess
import sys

import pytest

from qlcm.cli import RunConfig, build_parser, config_from_args, main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "qlcm", *args], capture_output=True, text=True
    )


def test_verify_n1_exact_line():
    r = run_cli("verify", "--n-max", "1")
    assert r.returncode == 0
    assert r.stdout == "n=1: lhs=1 rhs=1 PASS\n"


def test_verify_text_sweep():
    r = run_cli("verify", "--n-max", "12")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert len(lines) == 12
    assert all(line.endswith(" PASS") for line in lines)
    assert lines[4] == "n=5: lhs=Phi_4 * Phi_5 rhs=Phi_4 * Phi_5 PASS"


def test_verify_polynomial_small():
    r = run_cli("verify", "--n-max", "5", "--depth", "polynomial")
    assert r.returncode == 0
    assert r.stdout.count("PASS") == 5


def test_verify_json_schema():
    r = run_cli("verify", "--n-max", "6", "--format", "json")
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert len(lines) == 6
    for i, line in enumerate(lines, start=1):
        rec = json.loads(line)
        assert list(rec) == ["n", "depth", "lhs", "rhs", "factor_equal", "poly_equal"]
        assert rec["n"] == i
        assert rec["depth"] == "factored"
        assert rec["factor_equal"] is True
        assert rec["poly_equal"] is None
        for side in (rec["lhs"], rec["rhs"]):
            for item in side:
                assert set(item) == {"d", "e"}
    rec6 = json.loads(lines[5])
    assert rec6["rhs"] == [{"d": d, "e": 1} for d in (2, 3, 4, 5, 6)]


def test_verify_json_polynomial_sets_poly_equal():
    r = run_cli("verify", "--n-max", "3", "--depth", "polynomial", "--format", "json")
    for line in r.stdout.splitlines():
        assert json.loads(line)["poly_equal"] is True


def test_verify_worker_count_does_not_change_output():
    base = run_cli("verify", "--n-max", "30")
    for w in ("2", "3"):
        got = run_cli("verify", "--n-max", "30", "--workers", w)
        assert got.returncode == 0
        assert got.stdout == base.stdout
    alt = run_cli("verify", "--n-max", "30", "--format", "json")
    alt2 = run_cli("verify", "--n-max", "30", "--format", "json", "--workers", "2")
    assert alt.stdout == alt2.stdout


def test_progress_goes_to_stderr_not_stdout():
    r = run_cli("verify", "--n-max", "40")
    assert "progress" not in r.stdout
    assert "progress" in r.stderr


def test_factor_examples():
    assert run_cli("factor", "4", "2").stdout == "Phi_3 * Phi_4\n"
    assert run_cli("factor", "4", "2", "--expand").stdout == "1 + q + 2*q^2 + q^3 + q^4\n"
    assert run_cli("factor", "3", "0").stdout == "1\n"
    assert run_cli("factor", "1", "1").stdout == "1\n"


def test_factor_k_out_of_range_is_usage_error():
    r = run_cli("factor", "3", "4")
    assert r.returncode == 2
    assert r.stdout == ""
    r = run_cli("factor", "3", "-2")
    assert r.returncode == 2


def test_lcm_command():
    assert run_cli("lcm", "--n", "5").stdout == "Phi_4 * Phi_5\n"
    assert run_cli("lcm", "--n", "1").stdout == "1\n"
    r = run_cli("lcm", "--n", "4", "--expand")
    # Phi_2 * Phi_3 * Phi_4 = (1+q)(1+q+q^2)(1+q^2)
    assert r.stdout == "1 + 2*q + 3*q^2 + 3*q^3 + 2*q^4 + q^5\n"


def test_maxcheck():
    r = run_cli("maxcheck", "--p", "2", "--n-max", "200")
    assert r.returncode == 0
    assert r.stdout == "PASS\n"
    r = run_cli("maxcheck", "--p", "9", "--n-max", "10")
    assert r.returncode == 2  # 9 is not prime


def test_witness_output():
    r = run_cli("witness", "--n", "10", "--p", "3")
    assert r.stdout == "k=8, carries at r=1,2\n"
    r = run_cli("witness", "--n", "7", "--p", "2")
    assert r.stdout == "k=3, no carries\n"
    r = run_cli("witness", "--n", "2", "--p", "5")
    assert r.returncode == 2


def test_classical_and_bounds():
    r = run_cli("classical", "--n-max", "300")
    assert (r.returncode, r.stdout) == (0, "PASS\n")
    r = run_cli("bounds", "--n-max", "300")
    assert (r.returncode, r.stdout) == (0, "PASS\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n-max", "0"],
        ["verify", "--n-max", "-3"],
        ["verify", "--n-max", "x"],
        ["verify"],
        ["bounds", "--n-max", "0"],
        ["lcm", "--n", "0"],
        ["witness", "--n", "10", "--p", "0"],
        ["nosuchcommand", "--n-max", "1"],
        ["verify", "--n-max", "2", "--depth", "exhaustive"],
    ],
)
def test_usage_errors_exit_2(argv):
    r = run_cli(*argv)
    assert r.returncode == 2


def test_console_script_entry_point():
    r = subprocess.run(["qlcm", "verify", "--n-max", "1"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout == "n=1: lhs=1 rhs=1 PASS\n"


# -- in-process config plumbing -----------------------------------------


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(command="verify")  # missing n_max
    with pytest.raises(ValueError):
        RunConfig(command="factor", n=3)  # missing k
    with pytest.raises(ValueError):
        RunConfig(command="juggle", n=3)
    cfg = RunConfig(command="verify", n_max=5)
    assert cfg.depth == "factored" and cfg.format == "text" and cfg.workers == 1


def test_parser_to_config():
    args = build_parser().parse_args(
        ["verify", "--n-max", "7", "--depth", "polynomial", "--workers", "2"]
    )
    cfg = config_from_args(args)
    assert cfg == RunConfig(
        command="verify", n_max=7, depth="polynomial", workers=2
    )


def test_main_inprocess_exit_codes(capsys):
    assert main(["verify", "--n-max", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3
    assert main(["factor", "5", "2"]) == 0
    assert capsys.readouterr().out == "Phi_4 * Phi_5\n"
    assert main(["witness", "--n", "3", "--p", "7"]) == 2  # n < p
    capsys.readouterr()
