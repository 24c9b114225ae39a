"""Tests of the command-line interface: values, CSV schemas, exit codes."""

import csv
import math

import pytest

import toroflux.oracle
from toroflux import FluxTubeKind, Permeance, TorusGeometry, permeance
from toroflux.cli import main, parse_range, run_check


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_permeance_prints_library_value(capsys):
    assert main(["permeance", "--kind", "outer-half", "--R", "1", "--ri", "0.5", "--ro", "1"]) == 0
    printed = float(capsys.readouterr().out.strip())
    expected = permeance(FluxTubeKind.OUTER_HALF, TorusGeometry(1.0, 0.5, 1.0)).value
    assert printed == pytest.approx(expected, rel=1e-11)


def test_permeance_nonexistent_tube_warns(capsys):
    rc = main(["permeance", "--kind", "inner-half", "--R", "1", "--ri", "0.2", "--ro", "1.1"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.strip() == "0"
    assert "does not exist" in captured.err


def test_permeance_missing_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["permeance", "--kind", "outer-half", "--R", "1", "--ri", "0.5"])
    assert exc.value.code == 2


def test_permeance_bad_kind_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["permeance", "--kind", "torus", "--R", "1", "--ri", "0.5", "--ro", "1"])
    assert exc.value.code == 2


def test_lower_half_sub_branch_exits_one(capsys):
    rc = main(["permeance", "--kind", "lower-half", "--R", "1", "--ri", "1", "--ro", "2"])
    assert rc == 1
    assert "eta" in capsys.readouterr().err


def test_parse_range():
    rng = parse_range("lin:0.002:0.022:200")
    assert (rng.spacing, rng.start, rng.stop, rng.samples) == ("lin", 0.002, 0.022, 200)
    values = parse_range("log:0.01:1:5").values()
    assert values[0] == pytest.approx(0.01) and values[-1] == pytest.approx(1.0)
    from toroflux import UsageError

    for bad in ("lin:1:2", "geo:1:2:5", "lin:2:1:5", "lin:0:1:5", "lin:1:2:1", "lin:a:2:5"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_sweep_permeance_family_curves(tmp_path):
    out = tmp_path / "fam.csv"
    rc = main([
        "sweep-permeance", "--kind", "inner-half", "--R", "0.001",
        "--family", "0.1,0.2,0.4,0.8", "--range", "log:0.01:1.0:25",
        "--normalized", "--out", str(out),
    ])
    assert rc == 0
    header, rows = read_csv(str(out))
    assert header == ["ro_over_R", "swept_m", "swept_over_R", "Gm_over_mu0R",
                      "Gm_H", "Gm_legacy_H", "rel_dev", "exists"]
    assert len(rows) == 4 * 25
    families = sorted({float(r[0]) for r in rows})
    assert families == [0.1, 0.2, 0.4, 0.8]
    for r in rows:
        ratio, swept = float(r[0]), float(r[1])
        assert swept <= ratio * 0.001 * (1.0 + 1e-12)  # r_i clamped to r_o
        assert r[7] in ("true", "false")
        if r[7] == "true":
            assert math.isfinite(float(r[4])) and float(r[4]) > 0.0
        else:
            assert float(r[4]) == 0.0 and r[6] == ""
    # every family's last sample is the degenerate r_i = r_o endpoint
    last_by_family = {r[0]: r for r in rows}
    assert all(r[7] == "false" for r in last_by_family.values())


def test_sweep_permeance_outer_family_beyond_pole(tmp_path):
    out = tmp_path / "fam_outer.csv"
    rc = main([
        "sweep-permeance", "--kind", "outer-half", "--R", "0.001",
        "--family", "1.6,3.2", "--range", "log:0.01:1.0:10", "--out", str(out),
    ])
    assert rc == 0
    _, rows = read_csv(str(out))
    assert len(rows) == 20
    assert all(r[-1] == "true" for r in rows[:-1])


def test_sweep_permeance_fixed_thickness_two_samples(tmp_path):
    out = tmp_path / "two.csv"
    rc = main([
        "sweep-permeance", "--kind", "outer-half", "--R", "0.01", "--t", "0.005",
        "--range", "lin:0.001:0.002:2", "--out", str(out),
    ])
    assert rc == 0
    header, rows = read_csv(str(out))
    assert header == ["swept_m", "Gm_H", "Gm_legacy_H", "rel_dev", "exists"]
    assert len(rows) == 2


def test_sweep_permeance_needs_exactly_one_fixed(tmp_path, capsys):
    rc = main(["sweep-permeance", "--kind", "outer-half", "--R", "0.01",
               "--range", "lin:0.001:0.002:2"])
    assert rc == 2
    rc = main(["sweep-permeance", "--kind", "outer-half", "--R", "0.01", "--t", "0.01",
               "--ro", "0.02", "--range", "lin:0.001:0.002:2"])
    assert rc == 2


def test_sweep_force_default_is_reference_comparison(tmp_path):
    out = tmp_path / "force.csv"
    assert main(["sweep-force", "--out", str(out)]) == 0
    header, rows = read_csv(str(out))
    assert header == ["g_m", "Gm_new_H", "F_new_N", "Gm_legacy_H", "F_legacy_N",
                      "rel_dev_percent"]
    assert len(rows) == 200
    assert float(rows[0][0]) == 0.002 and float(rows[-1][0]) == 0.022
    assert float(rows[0][5]) < float(rows[-1][5])
    assert all(float(r[2]) < 0.0 for r in rows)


def test_sweep_force_zero_mmf_columns(tmp_path):
    out = tmp_path / "force0.csv"
    assert main(["sweep-force", "--theta", "0", "--range", "lin:0.002:0.022:5",
                 "--out", str(out)]) == 0
    _, rows = read_csv(str(out))
    assert all(float(r[2]) == 0.0 and float(r[4]) == 0.0 and r[5] == "" for r in rows)


def test_sweep_outputs_are_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep-force", "--range", "lin:0.002:0.022:50"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    args = ["sweep-permeance", "--kind", "lower-half", "--R", "0.001",
            "--family", "0.1,0.4", "--range", "log:0.01:1.0:20", "--normalized"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_force_stroke_mode(tmp_path):
    out = tmp_path / "stroke.csv"
    rc = main(["sweep-force", "--kind", "inner-quarter", "--mode", "const-ri",
               "--R", "0.01", "--ri", "0.002", "--range", "lin:0.003:0.02:40",
               "--out", str(out)])
    assert rc == 0
    _, rows = read_csv(str(out))
    # stroke crosses s = R: frozen rows keep permeance but lose force
    frozen = [r for r in rows if float(r[0]) > 0.01]
    assert frozen and all(float(r[2]) == 0.0 for r in frozen)
    assert all(r[4] == "" and r[5] == "" for r in rows)


def test_unwritable_output_path(capsys):
    rc = main(["sweep-force", "--range", "lin:0.002:0.022:2",
               "--out", "/nonexistent-dir/f.csv"])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_check_quick_passes(capsys):
    import time

    started = time.perf_counter()
    assert main(["check", "--preset", "quick"]) == 0
    assert time.perf_counter() - started < 5.0
    out = capsys.readouterr().out
    assert "RESULT: PASS" in out
    # every kind and every allowed (kind, mode) pair is covered
    for kind in FluxTubeKind:
        assert f"permeance {kind.value}" in out
    for label in ("gradient inner-half const-ro", "gradient inner-half const-t",
                  "gradient outer-half const-ro", "gradient outer-half const-t",
                  "gradient inner-quarter const-ri", "gradient inner-quarter const-ro",
                  "gradient inner-quarter const-t", "gradient outer-quarter const-ri",
                  "gradient outer-quarter const-ro", "gradient outer-quarter const-t"):
        assert label in out


def test_check_full_covers_everything():
    report = run_check("full")
    labels = {e.label for e in report.entries}
    assert len([l for l in labels if l.startswith("permeance")]) == 5
    assert len([l for l in labels if l.startswith("gradient")]) == 10
    assert report.passed


def test_check_detects_perturbed_closed_form(monkeypatch, capsys):
    real = toroflux.oracle._closed_permeance

    def perturbed(kind, geom):
        result = real(kind, geom)
        return Permeance(result.value * (1.0 + 1e-6), result.exists)

    monkeypatch.setattr(toroflux.oracle, "_closed_permeance", perturbed)
    assert main(["check", "--preset", "quick"]) == 1
    assert "FAIL" in capsys.readouterr().out
