import json
import subprocess
import sys

from xtl.cli import dispatch


def run_cli(args, tmp_path=None):
    """Run in-process, capturing stdout."""
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = dispatch(args)
    return code, buf.getvalue()


def test_sum_json_matches_polynomial():
    code, out = run_cli(["sum", "--N", "3", "--format", "json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["vars"] == ["x", "tau"]
    assert obj["terms"] == [{"e": [0, 0], "c": "1"}, {"e": [0, 1], "c": "1"},
                            {"e": [1, 0], "c": "1"}, {"e": [1, 1], "c": "1"}]


def test_tsasm_count_enum():
    code, out = run_cli(["tsasm", "count", "--order", "13", "--method", "enum"])
    assert code == 0 and out.strip() == "46"


def test_tsasm_count_csv_table():
    code, out = run_cli(["tsasm", "count", "--max-order", "11",
                         "--method", "integral", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,order,count"
    assert lines[-1] == "5,11,13"


def test_tsasm_list_text():
    code, out = run_cli(["tsasm", "list", "--order", "3"])
    assert code == 0 and out == "0 1 0\n1 -1 1\n0 1 0\n"


def test_psi_table_json():
    code, out = run_cli(["psi", "--N", "2"])
    assert code == 0
    obj = json.loads(out)
    assert [e["a"] for e in obj["entries"]] == [[1], [2]]


def test_sixvertex_pf_both_methods_agree():
    args = ["sixvertex", "pf", "--n", "2", "--alpha", "-", "--s", "5/2", "--t", "3",
            "--z", "2,3,5/3,7/2"]
    c1, o1 = run_cli(args + ["--method", "enum"])
    c2, o2 = run_cli(args + ["--method", "algebraic"])
    assert c1 == c2 == 0 and o1 == o2


def test_spinchain_verify_json_and_exit():
    code, out = run_cli(["spinchain", "verify", "--N", "6", "--x", "3/7"])
    assert code == 0
    obj = json.loads(out)
    assert obj["residual_zero"] and obj["magnetization_ok"]


def test_verify_main_suite():
    code, out = run_cli(["verify", "--suite", "main", "--max-N", "4"])
    assert code == 0
    for line in out.strip().splitlines():
        rec = json.loads(line)
        assert rec["pass"]


def test_verify_corollaries_suite():
    code, out = run_cli(["verify", "--suite", "corollaries", "--max-N", "3"])
    assert code == 0


def test_usage_errors_exit_two():
    code, _ = run_cli(["tsasm", "count", "--order", "4"])
    assert code == 2
    code, _ = run_cli(["tsasm", "count"])
    assert code == 2
    code, _ = run_cli(["nonsense"])
    assert code == 2


def test_byte_stable_output():
    a = run_cli(["sum", "--N", "5", "--format", "json"])
    b = run_cli(["sum", "--N", "5", "--format", "json"])
    assert a == b


def test_thread_count_never_changes_output():
    base = ["verify", "--suite", "corollaries", "--max-N", "2"]
    r1 = subprocess.run([sys.executable, "-m", "xtl.cli"] + base + ["--threads", "1"],
                        capture_output=True, text=True)
    r2 = subprocess.run([sys.executable, "-m", "xtl.cli"] + base + ["--threads", "2"],
                        capture_output=True, text=True)
    assert r1.returncode == r2.returncode == 0
    assert r1.stdout == r2.stdout


def test_env_seed_default_applies():
    import os
    env = dict(os.environ, XTL_SEED="7")
    r = subprocess.run([sys.executable, "-m", "xtl.cli", "verify", "--suite",
                        "yandyy", "--max-N", "2", "--trials", "2"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0 and '"seed": 7' in r.stdout


def test_out_flag(tmp_path):
    p = tmp_path / "out.json"
    code = dispatch(["--out", str(p), "sum", "--N", "2"])
    assert code == 0
    assert json.loads(p.read_text())["vars"] == ["x", "tau"]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "xtl.cli", "tsasm", "count",
                        "--order", "7", "--method", "partition"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "2"
