import subprocess
import sys

import pytest

from mongeq.cli import CSV_HEADER, main
from mongeq.matrix import parse_matrix, verify_monge


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_check(tmp_path, capsys):
    path = tmp_path / "m.txt"
    assert run(capsys, "gen", "--kind", "lines", "--rows", "3", "--cols", "4", "--seed", "1", "-o", str(path))[0] == 0
    mat, shape = parse_matrix(path.read_text())
    assert (mat.rows, mat.cols, shape) == (3, 4, None)
    assert run(capsys, "check", str(path)) == (0, "OK\n", "")


def test_gen_deterministic(capsys):
    a = run(capsys, "gen", "--kind", "density", "--rows", "5", "--cols", "6", "--seed", "3")[1]
    b = run(capsys, "gen", "--kind", "density", "--rows", "5", "--cols", "6", "--seed", "3")[1]
    assert a == b


def test_gen_partial_is_partial_monge(capsys):
    text = run(capsys, "gen", "--shape", "partial", "--rows", "9", "--cols", "9", "--seed", "2")[1]
    mat, shape = parse_matrix(text)
    assert verify_monge(mat, "max", shape)[0]


def test_check_failure(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n0 1\n0 0\n")
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1 and out.startswith("NOT MONGE")


def test_malformed_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("2 3\n1 2 3\n4 five 6\n")
    code, _, err = run(capsys, "check", str(path))
    assert code == 2 and "line 3" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "nonsense")[0] == 2
    path = tmp_path / "m.txt"
    path.write_text("1 1\n5\n")
    assert run(capsys, "query", str(path), "--rect", "1", "2", "1", "1")[0] == 2
    assert run(capsys, "query", str(path))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.txt"))[0] == 2


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "ex.txt"
    path.write_text("3 4\n5 4 3 2\n4 4 4 4\n1 2 3 4\n")
    return path


def test_maxima(example_file, capsys):
    code, out, _ = run(capsys, "maxima", str(example_file))
    assert code == 0
    assert out.splitlines() == ["r: 1 2 2 3", "breakpoints: 1:1 2:2 4:3"]


def test_query_rect_and_column(example_file, capsys):
    assert run(capsys, "query", str(example_file), "--rect", "1", "3", "1", "4")[1] == "1 1 5\n"
    assert run(capsys, "query", str(example_file), "--col", "1", "--rows", "2", "3")[1] == "2 1 4\n"
    out = run(capsys, "query", str(example_file), "--index", "submatrix-basic", "--rect", "3", "3", "1", "4")[1]
    assert out == "3 4 4\n"


def test_query_batch(example_file, tmp_path, capsys):
    batch = tmp_path / "q.txt"
    batch.write_text("1 3 1 4\n3 3 1 2\n\n2 2 1 1\n")
    code, out, _ = run(capsys, "query", str(example_file), "--batch", str(batch))
    assert code == 0 and out.splitlines() == ["1 1 5", "3 2 2", "2 1 4"]
    batch.write_text("1 3 1\n")
    assert run(capsys, "query", str(example_file), "--batch", str(batch))[0] == 2


def test_query_partial_none(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text("2 2\n1 *\n2 3\n")
    assert run(capsys, "query", str(path), "--rect", "1", "1", "2", "2")[1] == "none\n"
    assert run(capsys, "query", str(path), "--rect", "1", "2", "1", "2")[1] == "2 2 3\n"


def test_build(example_file, capsys):
    code, out, _ = run(capsys, "build", str(example_file), "--index", "submatrix-basic")
    assert code == 0 and "words=" in out


def test_fuzz_ok(capsys):
    assert run(capsys, "fuzz", "--index", "submatrix-linear", "--n", "64", "--cases", "200", "--seed", "7") == \
        (0, "OK 200/200\n", "")


@pytest.mark.parametrize("kind", ["partial-linear", "staircase-large", "subcolumn-basic"])
def test_fuzz_other_kinds(kind, capsys):
    assert run(capsys, "fuzz", "--index", kind, "--n", "20", "--cases", "100", "--seed", "1")[1] == "OK 100/100\n"


def test_fuzz_reports_reproducer(monkeypatch, capsys):
    from mongeq import cli
    monkeypatch.setitem(cli.RECT_KINDS, "submatrix-basic",
                        lambda o, s: type("Bad", (), {"query": lambda self, *r: (r[0], r[2], -10 ** 9)})())
    code, out, _ = run(capsys, "fuzz", "--index", "submatrix-basic", "--n", "5", "--cases", "3")
    assert code == 1 and "FAIL" in out and "--rect" in out


def test_pred(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("\n".join(map(str, [3, 18, 21, 22, 42, 46, 57, 60])) + "\n")
    for via in ("monge", "direct", "reduced"):
        assert run(capsys, "pred", "--set", str(path), "--x", "20", "--via", via)[1] == "18\n"
        assert run(capsys, "pred", "--set", str(path), "--x", "2", "--via", via)[1] == "none\n"


def test_bench_csv(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code = run(capsys, "bench", "--sizes", "16,32", "--kinds", "submatrix-linear,subcolumn-basic",
               "--queries", "50", "-o", str(out))[0]
    lines = out.read_text().splitlines()
    assert code == 0 and lines[0] == ",".join(CSV_HEADER) and len(lines) == 5


def test_module_entry_point(example_file):
    res = subprocess.run([sys.executable, "-m", "mongeq", "query", str(example_file), "--rect", "1", "1", "1", "4"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1 1 5\n"
