import csv

import pytest

from stacktsp.cli import bench_rows, main
from stacktsp.fileio import parse_solution, read_instance


@pytest.fixture
def inst_file(tmp_path):
    path = tmp_path / "i.txt"
    assert main(["gen", "--family", "symmetric", "--n", "5", "--seed", "2", "--out", str(path)]) == 0
    return path


@pytest.mark.parametrize("algo", ["apx2", "dapx2", "reduce-two", "reduce-sigma", "exact"])
def test_gen_solve_verify(inst_file, tmp_path, algo, capsys):
    sol = tmp_path / f"{algo}.sol"
    assert main(["solve", str(inst_file), "--algo", algo, "--out", str(sol)]) == 0
    assert main(["verify", str(inst_file), str(sol)]) == 0
    assert "OK value" in capsys.readouterr().out


def test_tampered_value_fails_verification(inst_file, tmp_path):
    sol = tmp_path / "s.sol"
    main(["solve", str(inst_file), "--out", str(sol)])
    text = sol.read_text()
    value = parse_solution(text).value
    sol.write_text(text.replace(f"value: {value}", f"value: {value + 1}"))
    assert main(["verify", str(inst_file), str(sol)]) == 1


def test_usage_errors(inst_file, tmp_path, capsys):
    assert main(["solve", str(inst_file), "--algo", "dapx-odd"]) == 2
    assert main(["gen", "--family", "symmetric"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("DTSPMS 1\n1 1 1 min\n0 x\n1 0\n\n0 1\n1 0\n")
    assert main(["extremes", str(bad)]) == 2
    assert "line 3, column 3" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["solve", str(inst_file), "--algo", "nope"])
    assert info.value.code == 2


def test_tight_families(tmp_path):
    path = tmp_path / "t.txt"
    assert main(["gen", "--family", "metric_tight", "--c", "3", "--out", str(path)]) == 0
    assert read_instance(path).n == 6
    assert main(["gen", "--family", "bivalued_tight", "--n-prime", "2", "--out", str(path)]) == 0
    assert read_instance(path).n == 8


def test_extremes_output(inst_file, capsys):
    assert main(["extremes", str(inst_file)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("flags: ") and "opt_sigma:" in out


def test_bench_csv(tmp_path, monkeypatch):
    out = tmp_path / "b.csv"
    assert main(["bench", "--sizes", "4-5", "--count", "2", "--goals", "min,max",
                 "--algos", "apx2,dapx2,dapx-odd,exact", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 2 * 2 * 2 * 4
    na = [r for r in rows if r["value"] == "NA"]
    # dapx2 needs odd n, dapx-odd needs even n
    assert {(r["algo"], r["n"]) for r in na} == {("dapx2", "4"), ("dapx-odd", "5")}
    for r in rows:
        if r["algo"] == "exact":
            assert r["value"] == r["opt"] and float(r["diff_ratio"]) == 1.0


def test_parallel_bench_matches_sequential():
    args = (["symmetric", "general"], [4, 5], 2, ["min"], range(2), ["apx2", "reduce-sigma"], "exact", 9)
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_ms"} for r in rows]  # noqa: E731
    assert strip(bench_rows(*args, threads=2)) == strip(bench_rows(*args, threads=1))
