"""Exit codes, output shapes, config handling, and determinism of the CLI."""

import json
import math

import pytest

from deformzeros.cli import main

ZETA_ZEROS = [14.1347251417346938, 21.0220396387715550, 25.0108575801456888]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_rows(text):
    lines = text.splitlines()
    assert lines[0] == "# deform-zeros v1"
    return lines[2:]


# ------------------------------------------------------------------- chars

def test_chars_even_catalog(capsys):
    code, out, _ = run(["chars", "--parity", "even", "--qmax", "21"], capsys)
    assert code == 0
    rows = data_rows(out)
    qs = {int(r.split(",")[0]) for r in rows}
    assert qs == {5, 8, 10, 12, 13, 15, 17, 21}
    five = next(r.split(",") for r in rows if r.startswith("5,"))
    assert five[1] == "2"  # label
    assert five[4] == "yes"  # primitive
    assert abs(float(five[5]) - 1.0) < 1e-9  # epsilon = +1
    assert abs(float(five[6])) < 1e-9
    ten = next(r.split(",") for r in rows if r.startswith("10,"))
    assert ten[3] == "5"  # induced from the conductor-5 character
    assert ten[4] == "no"


def test_chars_odd_catalog(capsys):
    code, out, _ = run(["chars", "--parity", "odd", "--qmax", "19"], capsys)
    assert code == 0
    qs = {int(r.split(",")[0]) for r in data_rows(out)}
    assert qs >= {3, 4, 6, 7, 11, 12, 14, 15, 19}


def test_chars_below_first_modulus_is_empty(capsys):
    code, out, _ = run(["chars", "--qmax", "2"], capsys)
    assert code == 0
    assert data_rows(out) == []


def test_chars_rejects_bad_qmax(capsys):
    code, _, err = run(["chars", "--qmax", "0"], capsys)
    assert code == 2
    assert "usage error" in err


def test_chars_json(capsys):
    code, out, _ = run(["chars", "--qmax", "8", "--json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert [d["q"] for d in payload] == [5, 8]
    assert payload[0]["primitive"] is True
    assert abs(payload[0]["epsilon"][0] - 1.0) < 1e-9


# --------------------------------------------------------------- verify-fe

def test_verify_fe_family_member_passes(capsys):
    code, out, _ = run(["verify-fe", "--family", "q5", "--tau", "0.5"], capsys)
    assert code == 0
    assert "function,phi(tau=0.5)" in out
    assert "verdict,PASS" in out
    worst = float(next(ln for ln in out.splitlines() if ln.startswith("max_residual")).split(",")[1])
    assert worst < 1e-8


def test_verify_fe_detects_wrong_equation(capsys):
    code, out, _ = run(["verify-fe", "--f", "zeta", "--fe", "q8"], capsys)
    assert code == 1
    assert "verdict,FAIL" in out


def test_verify_fe_rejects_tau_outside_unit_interval(capsys):
    code, _, err = run(["verify-fe", "--family", "q5", "--tau", "1.5"], capsys)
    assert code == 2
    assert "usage error" in err


def test_verify_fe_zeta_natural_equation(capsys):
    code, out, _ = run(["verify-fe", "--f", "zeta"], capsys)
    assert code == 0
    assert "verdict,PASS" in out


def test_verify_fe_lists_skipped_pole_points(capsys):
    # the grid corner sits exactly on the pole of zeta; the sweep must skip
    # and list it rather than fail
    code, out, _ = run(["verify-fe", "--f", "zeta", "--sigma", "1:2", "--t", "0:29"], capsys)
    assert code == 0
    assert "skipped,1" in out
    assert any(ln.startswith("skipped_point,1,0,") for ln in out.splitlines())


# ------------------------------------------------------------------- zeros

def test_zeros_scan_zeta(capsys):
    code, out, _ = run(["zeros", "scan", "--f", "zeta", "--t", "1:30"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert len(rows) == 3
    for row, want in zip(rows, ZETA_ZEROS):
        assert abs(float(row.split(",")[0]) - want) < 1e-6


def test_zeros_scan_pinned_ordinate(capsys):
    code, out, _ = run(["zeros", "scan", "--f", "f0", "--q", "5", "--t", "0:2"], capsys)
    assert code == 0
    rows = data_rows(out)
    assert len(rows) == 1
    t, _, kind, _ = rows[0].split(",")
    assert abs(float(t) - math.pi / math.log(5)) < 1e-6
    assert kind == "trivial_factor"


def test_zeros_scan_family_endpoint(capsys):
    code, out, _ = run(["zeros", "scan", "--family", "q5", "--tau", "1", "--t", "1:12"], capsys)
    assert code == 0
    got = [float(r.split(",")[0]) for r in data_rows(out)]
    want = [6.64845334472771472, 9.83144443288666962, 11.9588456260835145]
    assert len(got) == 3
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-6


def test_zeros_count_box(capsys):
    code, out, _ = run(["zeros", "count", "--f", "zeta", "--box", "-1:2:1:30"], capsys)
    assert code == 0
    assert "winding_count,3" in out
    assert "line_count,3" in out


def test_zeros_verify_family(capsys):
    code, out, _ = run(
        ["zeros", "verify", "--family", "q5", "--tau", "0.25", "--box", "-1:2:1:30"],
        capsys,
    )
    assert code == 0
    assert "verdict,PASS" in out
    assert "winding_count,11" in out
    assert "line_count,11" in out


def test_zeros_t_range_is_bounded(capsys):
    code, _, err = run(["zeros", "scan", "--f", "zeta", "--t", "0:65"], capsys)
    assert code == 2
    assert "|t| <= 60" in err


def test_zeros_scan_needs_t(capsys):
    code, _, err = run(["zeros", "scan", "--f", "zeta"], capsys)
    assert code == 2
    assert "needs --t" in err


def test_zeros_count_needs_box(capsys):
    code, _, err = run(["zeros", "count", "--f", "zeta"], capsys)
    assert code == 2
    assert "needs --box" in err


# ------------------------------------------------------------------- track

def test_track_writes_figure_data(tmp_path, capsys):
    code, out, _ = run(["track", "--family", "q5", "--t", "0:30", "--out", str(tmp_path)], capsys)
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == [
        "trajectories.csv",
        "zeros_tau0.25.csv",
        "zeros_tau0.5.csv",
        "zeros_tau0.75.csv",
        "zeros_tau0.csv",
        "zeros_tau1.csv",
    ]
    assert "n0,12" in out
    assert "n1,11" in out
    assert "pairs,10" in out
    assert "lost,1" in out
    tau0 = (tmp_path / "zeros_tau0.csv").read_text().splitlines()
    tau1 = (tmp_path / "zeros_tau1.csv").read_text().splitlines()
    assert len(tau0) - 2 == 11
    assert len(tau1) - 2 == 11
    traj = (tmp_path / "trajectories.csv").read_text().splitlines()
    assert traj[0] == "# deform-zeros v1"
    assert traj[1] == "trajectory_id,tau,t,abs_phi"
    ids = {int(r.split(",")[0]) for r in traj[2:]}
    assert ids == set(range(11))


def test_track_below_first_zero_is_empty(tmp_path, capsys):
    code, out, _ = run(["track", "--family", "q5", "--t", "0:0.5", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "n0,0" in out
    assert "pairs,0" in out
    for name in ("zeros_tau0.csv", "trajectories.csv"):
        lines = (tmp_path / name).read_text().splitlines()
        assert len(lines) == 2  # headers only


def test_track_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(["track", "--family", "q5", "--t", "10:20", "--out", str(a)], capsys)
    run(["track", "--family", "q5", "--t", "10:20", "--out", str(b)], capsys)
    for p in sorted(a.iterdir()):
        assert p.read_bytes() == (b / p.name).read_bytes()


# ------------------------------------------------------------------ report

def test_report_documents_failures_and_exits_one(tmp_path, capsys):
    out_file = tmp_path / "q5.json"
    code, out, _ = run(["report", "--q", "5", "--out", str(out_file)], capsys)
    assert code == 1  # measured claim failures; the report is still complete
    rep = json.loads(out_file.read_text())
    assert rep["claims"]["all_trajectories_complete"] == "FAIL"
    assert rep["claims"]["preserved_trivial_zeros"] == "FAIL"
    assert rep["claims"]["shared_fe"] == "PASS"
    assert rep["claims"]["all_zeros_on_line"] == "PASS"
    assert rep["claims"]["count_gap_at_most_one"] == "PASS"
    assert rep["pairing"]["lost_detail"][0]["last_t"] < 1e-2
    assert out == ""  # --out given, nothing on stdout


def test_report_stdout_and_determinism(capsys):
    code, out, _ = run(["report", "--q", "3", "--parity", "odd", "--tmax", "20"], capsys)
    assert code == 1  # the watched ordinates carry no zeros of L
    rep = json.loads(out)
    assert rep["fe"]["kappa"] == 1
    assert rep["family"]["degenerate"] is True
    code2, out2, _ = run(["report", "--q", "3", "--parity", "odd", "--tmax", "20"], capsys)
    assert out2 == out


def test_report_rejects_modulus_without_characters(capsys):
    code, _, err = run(["report", "--q", "1"], capsys)
    assert code == 2
    assert "usage error" in err


def test_report_rejects_oversized_tmax(capsys):
    code, _, err = run(["report", "--q", "5", "--tmax", "61"], capsys)
    assert code == 2
    assert "usage error" in err


# ------------------------------------------------------------------ config

def test_config_file_supplies_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep settings\ntau = 0.25\n")
    code, out, _ = run(["verify-fe", "--family", "q5", "--config", str(cfg)], capsys)
    assert code == 0
    assert "function,phi(tau=0.25)" in out


def test_explicit_flags_beat_the_config(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("tau = 1.5\n")
    code, out, _ = run(
        ["verify-fe", "--family", "q5", "--config", str(cfg), "--tau", "0.5"], capsys
    )
    assert code == 0
    assert "function,phi(tau=0.5)" in out
    # without the override the config value is used and rejected
    code, _, err = run(["verify-fe", "--family", "q5", "--config", str(cfg)], capsys)
    assert code == 2
    assert "tau" in err


def test_config_rejects_malformed_lines(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("no separator here\n")
    code, _, err = run(["verify-fe", "--family", "q5", "--config", str(cfg)], capsys)
    assert code == 2
    assert "key=value" in err


def test_config_missing_file(capsys):
    code, _, err = run(["verify-fe", "--family", "q5", "--config", "/nonexistent.cfg"], capsys)
    assert code == 2
    assert "cannot read config file" in err


# ------------------------------------------------------------------- misc

def test_unknown_command_is_usage_error(capsys):
    assert run(["bogus"], capsys)[0] == 2
    assert run([], capsys)[0] == 2


def test_function_selector_is_required(capsys):
    code, _, err = run(["verify-fe"], capsys)
    assert code == 2
    assert "--family" in err or "--f" in err
