import subprocess
import sys

MAPFUN_FILE = """\
(de (mapfun f l)
  (if (nullist l) ()
      (cons (! (cons f (car l)))
            (mapfun f (cdr l)))))
(print (mapfun + '((1 2) (2 3) (3 4))))
"""

F_FILE = "(de (f x y) (if (< x 0) 1 (f (- x 1) (f x y)))) (print (f 1 2))\n"


def cli(*args, stdin=None, timeout=240):
    return subprocess.run([sys.executable, "-m", "lambdix", *args],
                          capture_output=True, text=True, input=stdin,
                          timeout=timeout)


def test_run_mapfun_file(tmp_path):
    path = tmp_path / "mapfun.lx"
    path.write_text(MAPFUN_FILE)
    proc = cli("run", str(path))
    assert proc.returncode == 0
    assert proc.stdout == "(3 5 7)\n"


def test_run_divergent_file_exits_limit(tmp_path):
    path = tmp_path / "f.lx"
    path.write_text(F_FILE)
    proc = cli("run", str(path), "--strategy", "value",
               "--step-limit", "1000000")
    assert proc.returncode == 4
    proc = cli("run", str(path), "--strategy", "need")
    assert proc.returncode == 0
    assert proc.stdout == "1\n"


def test_run_empty_file(tmp_path):
    path = tmp_path / "empty.lx"
    path.write_text("")
    proc = cli("run", str(path))
    assert proc.returncode == 0
    assert proc.stdout == ""


def test_run_missing_file():
    proc = cli("run", "/nonexistent/path.lx")
    assert proc.returncode == 1
    assert proc.stderr


def test_run_evaluation_error_exit_code(tmp_path):
    path = tmp_path / "bad.lx"
    path.write_text("(car 5)")
    proc = cli("run", str(path))
    assert proc.returncode == 1
    assert "car" in proc.stderr


def test_run_stats_flag(tmp_path):
    path = tmp_path / "p.lx"
    path.write_text("(print (+ 1 2))")
    proc = cli("run", str(path), "--stats")
    assert proc.returncode == 0
    assert proc.stdout == "3\n"
    assert "switch_tests" in proc.stderr
    assert "blocks_allocated" in proc.stderr


def test_repl_session():
    proc = cli("repl", stdin="(de x 3)\nx\nundefinedvar\n(+ x 4)\n")
    assert proc.returncode == 0
    assert "= 3" in proc.stdout
    assert "** error - undefinedvar not defined **" in proc.stdout
    assert "= 7" in proc.stdout


def test_repl_multiline_continuation():
    proc = cli("repl", stdin="(+ 1\n2)\n")
    assert "= 3" in proc.stdout


def test_repl_survives_errors():
    proc = cli("repl", stdin="(car ())\n(+ 1 1)\n")
    assert proc.returncode == 0
    assert "** error" in proc.stdout
    assert "= 2" in proc.stdout


def test_repl_lazy_stream_transcript():
    stdin = "(de (from x) (cons x (from (+ x 1))))\n(cadr (from 2))\n"
    proc = cli("repl", stdin=stdin)
    assert "= 3" in proc.stdout


def test_selftest_rejects_zero_count():
    proc = cli("selftest", "--count", "0")
    assert proc.returncode == 2


def test_selftest_small_run():
    proc = cli("selftest", "--count", "3", "--seed", "7")
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "MISMATCH" not in proc.stdout
    assert "checks passed" in proc.stdout


def test_bench_rejects_unknown_program():
    proc = cli("bench", "NoSuchBench", "--reps", "1")
    assert proc.returncode == 2


def test_bench_fib_tsv_and_json(tmp_path):
    json_path = tmp_path / "bench.json"
    proc = cli("bench", "Fib", "--reps", "1", "--json", str(json_path))
    assert proc.returncode == 0
    lines = proc.stdout.strip().split("\n")
    assert lines[0].startswith("program\tstrategy\tmedian_ms")
    assert len(lines) == 3  # header + value + need
    assert json_path.exists()


def test_usage_error_exit_code():
    proc = cli("run")  # missing file argument
    assert proc.returncode == 2
