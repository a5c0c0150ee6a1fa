"""End-to-end harness tests: subcommands, reports, exit codes."""

import pytest

from smo.cli import ExperimentConfig, main
from tests.conftest import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return str(FIXTURES / name)


def test_experiment_config_validation():
    ExperimentConfig("factor")
    ExperimentConfig("table", degree_bound=2)
    with pytest.raises(ValueError):
        ExperimentConfig("nonsense")
    with pytest.raises(ValueError):
        ExperimentConfig("compare", degree_bound=0)


def test_factor_command(capsys):
    code, out, _ = run(capsys, "factor", "--q", "3", "--poly", "T^2-1")
    assert code == 0
    assert out.splitlines() == ["factor=T+1 mult=1", "factor=T+2 mult=1"]


def test_factor_byte_stable(capsys):
    a = run(capsys, "factor", "--q", "5", "--poly", "T^6+T+1", "--seed", "1")
    b = run(capsys, "factor", "--q", "5", "--poly", "T^6+T+1", "--seed", "2")
    assert a == b


def test_split_command(capsys):
    code, out, _ = run(capsys, "split", "--field", fx("quad_f3_a.field"), "--prime", "T+1")
    assert code == 0
    assert out == "p=T+1 type=[2] e=[1]\n"


def test_table_command(capsys):
    code, out, _ = run(capsys, "table", "--field", fx("quad_f3_a.field"), "--deg", "1")
    assert code == 0
    assert out.splitlines() == [
        "p=T type=[1] e=[2]",
        "p=T+1 type=[2] e=[1]",
        "p=T+2 type=[1,1] e=[1,1]",
    ]
    code, out, _ = run(capsys, "table", "--field", fx("quad_f3_a.field"), "--deg", "1", "--euler")
    assert out.splitlines()[1] == "p=T+1 :: (1 - (T^2+2*T+1)^{-s})^{-1}"
    code, out, _ = run(capsys, "table", "--field", fx("quad_f3_a.field"), "--deg", "1", "--lifted")
    assert "[T^2+2*T+1]" in out


def test_compare_differ_exit_1(capsys):
    code, out, _ = run(
        capsys, "compare", "--a", fx("quad_f3_a.field"), "--b", fx("quad_f3_b.field"), "--deg", "2"
    )
    assert code == 1
    assert out.splitlines()[0] == "verdict: DIFFER"
    assert any(line.startswith("first witness: p=T ") for line in out.splitlines())


def test_compare_identical_exit_0(capsys):
    code, out, _ = run(
        capsys, "compare", "--a", fx("quad_f3_a.field"), "--b", fx("quad_f3_a.field"), "--deg", "2"
    )
    assert code == 0
    assert out.splitlines()[0] == "verdict: IDENTICAL"


def test_compare_inconclusive_exit_2(tmp_path, capsys):
    bad = tmp_path / "index.field"
    bad.write_text("q=3\ng = x^2 - (T^3 + T^2)\n")
    code, out, _ = run(capsys, "compare", "--a", str(bad), "--b", str(bad), "--deg", "1")
    assert code == 2
    assert out.splitlines()[0] == "verdict: INCONCLUSIVE"
    assert "unknown at p=T" in out


def test_gassmann_command(capsys):
    code, out, _ = run(capsys, "gassmann", "--group", fx("gl32.group"), "--h1", "POINT", "--h2", "PLANE")
    assert code == 0
    assert out == "gassmann_equivalent=true\nconjugate=false\n"


def test_reconstruct_check_match(capsys):
    for group, decomp in [
        ("s3.group", "RAM"),
        ("s3.group", "UNRAM"),
        ("s4.group", "RAM"),
        ("s4.group", "UNRAM"),
        ("d4.group", "RAM"),
        ("q8.group", "RAM"),
    ]:
        code, out, _ = run(capsys, "reconstruct", "--group", fx(group), "--decomp", decomp, "--check")
        assert code == 0, (group, decomp, out)
        lines = out.splitlines()
        assert lines[-1] == "MATCH"
        assert any(line.startswith("reconstructed=") for line in lines)


def test_census_writes_report_and_figure(tmp_path, capsys):
    out_path = tmp_path / "census.txt"
    code, out, _ = run(
        capsys, "census", "--field", fx("quad_f3_a.field"), "--deg", "3",
        "--out", str(out_path),
    )
    assert code == 0
    text = out_path.read_text()
    assert text.startswith("unramified_primes=")
    assert "type=[1,1] count=" in text and "type=[2] count=" in text
    png = tmp_path / "census.png"
    assert png.exists() and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert f"figure written to {png}" in out


def test_census_stdout_only_when_no_out(tmp_path, capsys):
    code, out, _ = run(capsys, "census", "--field", fx("quad_f3_a.field"), "--deg", "2")
    assert code == 0
    assert "figure written" not in out


def test_error_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "factor", "--q", "6", "--poly", "T")
    assert code == 3 and "error:" in err
    code, _, err = run(capsys, "split", "--field", str(tmp_path / "missing.field"), "--prime", "T")
    assert code == 3
    code, _, err = run(capsys, "gassmann", "--group", fx("s3.group"), "--h1", "NOPE", "--h2", "GE")
    assert code == 3
    code, _, err = run(capsys, "factor", "--q", "3", "--poly", "T^^2")
    assert code == 3
