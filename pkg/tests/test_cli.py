import json

import pytest

from symorder.algebra import dump_algebra, kappa
from symorder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coproduct_example(capsys):
    code, out, _ = run(capsys, "coproduct", "--mu", "1", "--degree", "2")
    assert code == 0
    assert "1⊗d1 + d1⊗1 + 1/2*d2⊗d3 - 1/2*d3⊗d2" in out


def test_coproduct_routes(capsys):
    code, out, _ = run(capsys, "coproduct", "--mu", "2", "--degree", "4", "--route", "all")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("argv, count", [
    (("--w", "3", "--b", "0"), 3),
    (("--w", "3", "--b", "0", "--planar"), 2),
    (("--w", "4", "--b", "1", "--contributing", "--planar"), 8),
    (("--w", "5", "--b", "0"), 105),
])
def test_tree_counts(capsys, argv, count):
    code, out, _ = run(capsys, "trees", *argv, "--count")
    assert code == 0
    assert out.split()[-1] == str(count) or f"= {count}" in out or f": {count}" in out


def test_star_text_and_structured(capsys):
    code, out, _ = run(capsys, "star", "--f", "x1", "--g", "x2")
    assert code == 0 and "x1*x2 + 1/2*x3" in out
    code, out, _ = run(capsys, "star", "--f", "x1", "--g", "x2", "--format", "structured")
    records = [json.loads(line) for line in out.splitlines()]
    assert records and all("kind" in r for r in records)


def test_star_exponential(capsys):
    code, out, _ = run(capsys, "star", "--route", "exp", "--k", "1,0,0", "--q", "0,1,0", "--degree", "3")
    assert code == 0


def test_hausdorff_and_chi(capsys):
    code, out, _ = run(capsys, "hausdorff", "--degree", "2")
    assert code == 0 and "D^1 = 1/2*k2*q3 - 1/2*k3*q2" in out
    assert run(capsys, "hausdorff", "--w", "2", "--b", "1", "--route", "all")[0] == 0
    assert run(capsys, "chi", "--mu", "1", "--nu", "2", "--cutoff", "3", "--max-degree", "1")[0] == 0


def test_verify_algebra_file(capsys, tmp_path):
    path = tmp_path / "k.toml"
    path.write_text(dump_algebra(kappa(3, (1, 0, 0))))
    code, out, _ = run(capsys, "verify", "--algebra", str(path))
    assert code == 0 and "PASS verify" in out and "kappa" in out


@pytest.mark.parametrize("argv", [
    ("verify", "--algebra", "abelian:5"),
    ("verify", "--algebra", "nosuch"),
    ("star", "--f", "x9", "--g", "x1"),
    ("star", "--f", "x1 +", "--g", "x1"),
    ("coproduct", "--mu", "7"),
    ("coproduct", "--degree", "9"),
])
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    record = json.loads(err.strip().splitlines()[-1])
    assert record["kind"] == "error"


def test_parse_error_reports_position(capsys):
    _, _, err = run(capsys, "star", "--f", "x1 ? x2", "--g", "x1")
    record = json.loads(err)
    assert record["position"] == 3 and record["type"] == "ParseError"


def test_bad_algebra_file(capsys, tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text('name = "bad"\ndim = 2\n\n[[bracket]]\ni = 1\nj = 1\nk = 2\nc = "1"\n')
    assert run(capsys, "verify", "--algebra", str(path))[0] == 2


def test_output_dir_and_env(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "trees", "--w", "3", "--b", "0", "--count", "--output-dir", str(tmp_path / "a"))
    assert (tmp_path / "a" / "trees.txt").read_text() == out
    monkeypatch.setenv("SYMORDER_OUTPUT_DIR", str(tmp_path / "b"))
    run(capsys, "verify", "--format", "structured")
    assert (tmp_path / "b" / "verify.jsonl").exists()


def test_check_all_is_deterministic(capsys):
    first = run(capsys, "check-all", "--criteria", "4,5", "--format", "structured")
    second = run(capsys, "check-all", "--criteria", "4,5", "--format", "structured")
    assert first == second and first[0] == 0
    assert "seconds" not in first[1]
    _, out, _ = run(capsys, "check-all", "--criteria", "5", "--timing", "--format", "structured")
    assert "seconds" in out
