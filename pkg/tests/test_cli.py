import csv
import io
import json
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

from qcss_bounds.bounds import glb, k_bar, welch_bound
from qcss_bounds.circulant import QcssParams
from qcss_bounds.cli import load_schema, main
from qcss_bounds.seqlab import golay_pcss, random_qcss, write_sequence_set
from qcss_bounds.weights import sine_weights, write_weight_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def check_schema(command, text):
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema(command))
    return doc


# ---------------------------------------------------------------- bound


def test_bound_cosine_ratio(capsys):
    # PAPER: M=2 cell of the comparison table
    code, out, _ = run(capsys, "bound", "--M", "2", "--N", "2048", "--K", "5", "--weight", "cosine")
    assert code == 0
    r = rows(out)
    assert r[1]["kind"] == "glb_general" and r[1]["family"] == "cosine"
    assert r[1]["ratio_to_welch"] == "1.0043"


def test_bound_uniform_equals_welch(capsys):
    _, out, _ = run(capsys, "bound", "--M", "2", "--N", "2048", "--K", "5", "--weight", "uniform")
    uni = float(rows(out)[1]["value"])
    _, out, _ = run(capsys, "bound", "--M", "2", "--N", "2048", "--K", "5", "--kind", "welch")
    r = rows(out)
    assert len(r) == 1
    assert uni == pytest.approx(float(r[0]["value"]), rel=1e-12)


def test_bound_weight_file_round_trip(capsys, tmp_path):
    p = QcssParams(9, 2, 16)
    w = sine_weights(16, 11)
    path = tmp_path / "w.txt"
    write_weight_file(path, w)
    code, out, _ = run(capsys, "bound", "--weight-file", str(path), "--M", "2", "--N", "16", "--K", "9")
    assert code == 0
    assert float(rows(out)[1]["value"]) == glb(p, w).value


def test_bound_all_kinds_json(capsys):
    code, out, _ = run(capsys, "bound", "--M", "3", "--N", "64", "--K", "10", "--format", "json")
    assert code == 0
    doc = check_schema("bound", out)
    kinds = [r["kind"] for r in doc["rows"]]
    assert kinds[0] == "welch" and "glb_chebyshev" in kinds and len(kinds) == 7


def test_bound_family_parameter(capsys):
    _, out, _ = run(capsys, "bound", "--M", "2", "--N", "16", "--K", "9", "--kind", "glb_step", "--m", "4")
    assert rows(out)[1]["family_param"] == "m=4"
    _, out, _ = run(capsys, "bound", "--M", "2", "--N", "16", "--K", "9", "--weight", "cosine", "--j", "17")
    assert rows(out)[1]["family"] == "cosine(j=17)"


@pytest.mark.parametrize("argv", [
    ["bound", "--M", "2", "--N", "16"],                                    # missing K
    ["bound", "--M", "1", "--N", "16", "--K", "3"],                         # M < 2
    ["bound", "--M", "2", "--N", "16", "--K", "3", "--weight", "step"],     # step needs m
    ["bound", "--M", "2", "--N", "16", "--K", "3", "--weight", "sine", "--m", "99"],
    ["bound", "--M", "2", "--N", "16", "--K", "3", "--weight", "gauss"],
    ["bound", "--M", "2", "--N", "16", "--K", "3", "--weight", "uniform", "--kind", "welch"],
    ["bound", "--M", "2", "--N", "16", "--K", "3", "--weight-file", "/nonexistent/w.txt"],
    ["table1", "--M-range", "5:2"],
    ["sweep", "--N", "16", "--K-range", "1:3", "--ratio-range", "1:2:1"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_non_simplex_weight_file_is_a_usage_error_for_bound(capsys, tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("\n".join(["0.5", "0.6", "-0.1"]) + "\n")
    code, _, err = run(capsys, "bound", "--weight-file", str(path), "--M", "2", "--N", "2", "--K", "3")
    assert code == 2 and "simplex" in err


# ---------------------------------------------------------------- table1


def test_table1_rows(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    table = {r["row"]: r for r in rows(out)}
    # PAPER: M=2 and M=17 columns, M=10 B3
    assert [table[k]["M=2"] for k in ("B1/BW", "B2/BW", "B3/BW")] == ["1.0043", "1.0026", "0.9909"]
    assert [table[k]["M=17"] for k in ("B1/BW", "B2/BW", "B3/BW")] == ["1.0003", "0.9977", "0.9841"]
    assert table["B3/BW"]["M=10"] == "0.9910"
    assert len(table["K"]) == 25  # row label + 24 columns
    assert int(table["K"]["M=2"]) == k_bar(2, 2048) + 1
    assert float(table["BW"]["M=2"]) == welch_bound(QcssParams(5, 2, 2048)).value


def test_table1_json(capsys):
    code, out, _ = run(capsys, "table1", "--N", "256", "--M-range", "2:4", "--format", "json")
    assert code == 0
    doc = check_schema("table1", out)
    assert [r["M"] for r in doc["rows"]] == [2, 3, 4]


# ---------------------------------------------------------------- curves


def test_curves_L(capsys):
    code, out, _ = run(capsys, "curves", "--curve", "L", "--points", "2000")
    assert code == 0
    r = rows(out)
    L = np.array([float(x["L"]) for x in r])
    rs = np.array([float(x["r"]) for x in r])
    i = int(np.argmin(L))
    assert 0 < i < len(L) - 1 and 0 < rs[0] and rs[-1] < 2
    assert L[i] == pytest.approx(2.483257, abs=1e-4)  # PAPER
    assert float(r[0]["pi2_over_4"]) == pytest.approx(2.467401, abs=1e-6)  # PAPER


def test_curves_d(capsys):
    code, out, _ = run(capsys, "curves", "--curve", "d", "--M-range", "2:100")
    assert code == 0
    r = rows(out)
    assert [int(x["M"]) for x in r if float(x["d3"]) > 0] == [3, 5, 7, 9, 11]  # PAPER
    assert all(float(x["d1"]) > 0 for x in r)


def test_curves_json(capsys):
    _, out, _ = run(capsys, "curves", "--points", "10", "--format", "json")
    doc = check_schema("curves", out)
    assert doc["min_L"] == pytest.approx(2.483257, abs=1e-6)


# ---------------------------------------------------------------- verify


def test_verify_default_grid(capsys):
    code, out, _ = run(capsys, "verify")
    doc = check_schema("verify", out)
    assert code == 0 and doc["ok"]
    assert {c["name"] for c in doc["checks"]} >= {"sequence_lab_sandwich", "golay_pcss_perfect"}


def test_verify_faulty_weight_exits_1(capsys, tmp_path):
    path = tmp_path / "w.txt"
    write_weight_file(path, [0.5, 0.6, -0.1])
    code, out, err = run(capsys, "verify", "--weight-file", str(path), "--N", "2")
    assert code == 1
    doc = check_schema("verify", out)
    detail = doc["checks"][0]["detail"]
    assert detail["min_index"] == 2 and "negative entry w[2]" in detail["message"]
    assert "weight_file_simplex" in err


def test_verify_good_weight_exits_0(capsys, tmp_path):
    path = tmp_path / "w.txt"
    write_weight_file(path, sine_weights(8, 9))
    assert main(["verify", "--weight-file", str(path), "--N", "8"]) == 0


def test_verify_set_file(capsys, tmp_path):
    path = tmp_path / "s.json"
    write_sequence_set(path, random_qcss(6, 2, 8, seed=3))
    code, out, _ = run(capsys, "verify", "--set-file", str(path))
    assert code == 0 and check_schema("verify", out)["ok"]
    write_sequence_set(path, golay_pcss(8, 2))
    assert main(["verify", "--set-file", str(path)]) == 0


def test_verify_local_min_exit_code_follows_report(capsys):
    code, out, _ = run(capsys, "verify", "--local-min", "--M", "8", "--N", "32", "--trials", "300",
                       "--seed", "2")
    doc = check_schema("verify", out)
    lm = doc["local_min"]
    passed = lm["max_violation_rel"] >= -1e-10 and lm["max_decomp_rel_err"] <= 1e-9
    assert code == (0 if passed else 1)
    assert lm["params"]["K"] == k_bar(8, 32) + 1


def test_verify_local_min_example(capsys):
    # documented CLI example; it fails because the cosine weight is not a local minimizer here
    code, out, _ = run(capsys, "verify", "--local-min", "--M", "64", "--N", "256", "--trials", "10000",
                       "--seed", "7")
    doc = json.loads(out)
    assert doc["local_min"]["max_violation"] >= -1e-12


def test_verify_rejects_csv(capsys):
    assert main(["verify", "--format", "csv"]) == 2


# ---------------------------------------------------------------- sweep


def test_sweep_no_family_beats_welch_at_or_below_k_bar(capsys):
    code, out, _ = run(capsys, "sweep", "--M-range", "2:12", "--N", "64", "--kbar-offsets=-3,-1,0")
    assert code == 0
    r = rows(out)
    assert r and all(x["beats_welch"] == "false" for x in r if int(x["K"]) >= int(x["M"]))


def test_sweep_cosine_beats_welch_just_above_k_bar(capsys):
    code, out, _ = run(capsys, "sweep", "--M-range", "2:256", "--N", "2048", "--kbar-offsets", "1")
    assert code == 0
    cos = [x for x in rows(out) if x["family"] == "cosine"]
    assert len(cos) == 255 and all(x["beats_welch"] == "true" for x in cos)


def test_sweep_step_beats_welch_for_K_at_least_4M(capsys):
    _, out, _ = run(capsys, "sweep", "--M-range", "2:6", "--N", "2", "--ratio-range", "4:8:0.5")
    steps = [x for x in rows(out) if x["family"] == "step"]
    assert steps and all(x["beats_welch"] == "true" for x in steps if int(x["K"]) >= 4 * int(x["M"]))


def test_sweep_rows_are_sorted(capsys):
    _, out, _ = run(capsys, "sweep", "--M-range", "2:5", "--N", "16", "--K-range", "1:12")
    keys = [(int(x["M"]), int(x["K"]), x["family"]) for x in rows(out)]
    assert keys == sorted(keys) and len(keys) == 4 * 12 * 4


def test_sweep_json_schema(capsys):
    _, out, _ = run(capsys, "sweep", "--M-range", "2:3", "--N", "8", "--format", "json")
    check_schema("sweep", out)


def test_sweep_thread_cap_does_not_change_output(capsys, monkeypatch, tmp_path):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("QCSS_BOUNDS_THREADS", threads)
        path = tmp_path / f"s{threads}.csv"
        assert main(["sweep", "--M-range", "2:20", "--N", "128", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_bad_thread_cap(capsys, monkeypatch):
    monkeypatch.setenv("QCSS_BOUNDS_THREADS", "zero")
    assert main(["sweep", "--M-range", "2:3", "--N", "8"]) == 2


# ---------------------------------------------------------------- config, determinism


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("# bound config\nM = 2\nN = 2048\nK = 5\nweight = cosine\nformat = json\n")
    _, out, _ = run(capsys, "bound", "--config", str(cfg))
    assert json.loads(out)["rows"][1]["family"] == "cosine"
    _, out, _ = run(capsys, "bound", "--config", str(cfg), "--K", "6", "--format", "csv")
    assert rows(out)[0]["K"] == "6"


def test_config_bool_and_errors(capsys, tmp_path):
    cfg = tmp_path / "v.conf"
    cfg.write_text("local_min = true\nM = 4\nN = 8\ntrials = 30\n")
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert "local_min" in json.loads(out)
    cfg.write_text("M 2\n")
    assert main(["bound", "--config", str(cfg)]) == 2
    cfg.write_text("colour = red\n")
    assert main(["bound", "--config", str(cfg)]) == 2
    assert main(["bound", "--config", str(tmp_path / "missing.conf")]) == 2


@pytest.mark.parametrize("argv", [
    ["table1", "--N", "512"],
    ["verify", "--seed", "5"],
    ["sweep", "--M-range", "2:9", "--N", "40"],
    ["curves", "--curve", "d"],
])
def test_output_is_byte_identical(tmp_path, argv):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qcss_bounds", "bound", "--M", "2", "--N", "4", "--K", "3",
                           "--kind", "welch"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].startswith("K,M,N,kind")
