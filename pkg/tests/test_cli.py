import hashlib
import json
import subprocess
import sys

import pytest

from magicsq.cli import main
from magicsq.io import from_csv

from oracles import LO_SHU, REF_10_FINAL, naive_is_magic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _csv(rows):
    return "".join(",".join(map(str, r)) + "\n" for r in rows)


def test_gen_order4_csv(capsys):
    code, out, _ = run(capsys, "gen", "--n", "4", "--a-min", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4 and lines[0] == "1,15,14,4"


def test_gen_order10_json(capsys):
    code, out, _ = run(capsys, "gen", "--n", "10", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["magic_constant"] == 505 and doc["rows"] == REF_10_FINAL


def test_gen_rejects_small_order(capsys):
    code, out, err = run(capsys, "gen", "--n", "2")
    assert code == 2 and out == ""
    assert "at least 3" in err


def test_gen_rejects_bad_min(capsys):
    assert run(capsys, "gen", "--n", "5", "--a-min", "0")[0] == 2


def test_gen_self_check_guard(capsys, monkeypatch):
    import magicsq.cli as cli
    from magicsq.core import Square

    monkeypatch.setattr(cli, "construct", lambda n, a: Square([[1] * n] * n))
    code, out, err = run(capsys, "gen", "--n", "3")
    assert code == 3 and out == ""


def test_verify_lo_shu(tmp_path, capsys):
    path = tmp_path / "lo.csv"
    path.write_text(_csv(LO_SHU))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "constant=15" in out


def test_verify_altered_cell(tmp_path, capsys):
    rows = [r[:] for r in LO_SHU]
    rows[1][1] = 6  # centre 5 -> 6 duplicates the 6 in row 3
    path = tmp_path / "bad.csv"
    path.write_text(_csv(rows))
    code, out, _ = run(capsys, "verify", str(path), "--json")
    assert code == 1
    report = json.loads(out)
    broken = {(f["kind"], tuple(f["index"])) for f in report["failures"]}
    # the centre lies on row 2, column 2 and both diagonals
    assert {("row", (2,)), ("column", (2,)), ("diagonal", ()), ("anti_diagonal", ())} <= broken
    assert ("row", (1,)) not in broken


def test_verify_ragged(tmp_path, capsys):
    path = tmp_path / "ragged.csv"
    path.write_text("1,2,3\n4,5\n6,7,8\n")
    assert run(capsys, "verify", str(path))[0] == 2


def test_verify_missing_file(tmp_path, capsys):
    assert run(capsys, "verify", str(tmp_path / "nope.csv"))[0] == 2


def test_verify_declared_min(tmp_path, capsys):
    path = tmp_path / "sq.csv"
    path.write_text(_csv([[x + 4 for x in r] for r in LO_SHU]))
    assert run(capsys, "verify", str(path))[0] == 1
    assert run(capsys, "verify", str(path), "--a-min", "5")[0] == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6, 10, 12, 17, 18])
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_gen_output_verifies(tmp_path, capsys, n, fmt):
    path = tmp_path / f"sq.{fmt}"
    assert run(capsys, "gen", "--n", str(n), "--a-min", "3", "--format", fmt, "--out", str(path))[0] == 0
    args = ["verify", str(path)] + (["--a-min", "3"] if fmt == "csv" else [])
    assert run(capsys, *args)[0] == 0


def test_gen_is_deterministic(capsys):
    a = run(capsys, "gen", "--n", "31", "--format", "json")[1]
    b = run(capsys, "gen", "--n", "31", "--format", "json")[1]
    assert hashlib.sha256(a.encode()).digest() == hashlib.sha256(b.encode()).digest()


def test_csp_solve(capsys):
    code, out, err = run(capsys, "csp", "--n", "3", "--mode", "solve")
    assert code == 0 and "status=solved" in err
    assert naive_is_magic(from_csv(out).tolist())


def test_csp_export(tmp_path, capsys):
    path = tmp_path / "m.lp"
    assert run(capsys, "csp", "--n", "4", "--mode", "export", "--out", str(path))[0] == 0
    text = path.read_text()
    section = text.split("Subject To\n")[1].split("Binary\n")[0]
    assert sum(1 for ln in section.splitlines() if ln.startswith(" ") and ":" in ln) == 42


def test_csp_export_stdout(capsys):
    code, out, _ = run(capsys, "csp", "--n", "3", "--mode", "export")
    assert code == 0 and out.endswith("End\n")


def test_csp_too_large(capsys):
    code, _, err = run(capsys, "csp", "--n", "100", "--mode", "solve")
    assert code == 2 and "100000000" in err


def test_csp_timeout(capsys):
    assert run(capsys, "csp", "--n", "5", "--time-limit", "0.05")[0] == 4


def test_csp_decode(tmp_path, capsys):
    sol = tmp_path / "sol.txt"
    lines = [f"x_{i + 1}_{j + 1}_{v} 1" for i, r in enumerate(LO_SHU) for j, v in enumerate(r)]
    sol.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "csp", "--n", "3", "--mode", "decode", "--solution", str(sol))
    assert code == 0 and out == _csv(LO_SHU)
    sol.write_text("x_1_1_1 1\n")
    assert run(capsys, "csp", "--n", "3", "--mode", "decode", "--solution", str(sol))[0] == 2
    assert run(capsys, "csp", "--n", "3", "--mode", "decode")[0] == 2


def test_bench_fast(tmp_path, capsys):
    csv_path = tmp_path / "b.csv"
    code, out, _ = run(capsys, "bench", "--min-n", "3", "--max-n", "60", "--method", "fast",
                       "--repetitions", "1", "--out-csv", str(csv_path))
    assert code == 0
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "n,class,method,seconds" and len(rows) == 1 + 58
    fits = json.loads(out)
    assert [f["class"] for f in fits] == ["odd", "singly_even", "doubly_even"]
    assert set(fits[0]) == {"class", "a", "b", "c", "residual_rms"}


def test_bench_single_order(tmp_path, capsys):
    code, out, err = run(capsys, "bench", "--min-n", "3", "--max-n", "3",
                         "--out-csv", str(tmp_path / "b.csv"))
    assert code == 0 and json.loads(out) == [] and "no fit" in err


def test_bench_csp_tiny(tmp_path, capsys):
    code, out, _ = run(capsys, "bench", "--method", "csp", "--min-n", "3", "--max-n", "4",
                       "--repetitions", "1", "--out-csv", str(tmp_path / "b.csv"))
    assert code == 0
    assert len((tmp_path / "b.csv").read_text().splitlines()) == 3


def test_bench_csp_timeout_exit(tmp_path, capsys):
    code, _, err = run(capsys, "bench", "--method", "csp", "--min-n", "5", "--max-n", "5",
                       "--repetitions", "1", "--time-limit", "0.05",
                       "--out-csv", str(tmp_path / "b.csv"))
    assert code == 4 and "timed out" in err


@pytest.mark.parametrize("argv", [["bench", "--min-n", "2"], ["bench", "--min-n", "9", "--max-n", "5"]])
def test_bench_bad_range(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "magicsq", "gen", "--n", "3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "8,1,6\n3,5,7\n4,9,2\n"
    proc = subprocess.run([sys.executable, "-m", "magicsq", "gen"], capture_output=True, text=True)
    assert proc.returncode == 2
