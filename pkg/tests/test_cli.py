import json
import math
import subprocess
import sys

import numpy as np
import pytest

from qheis import cli, geodesic, io


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("text,value", [
    ("1.5", 1.5), ("pi", math.pi), ("2pi", 2 * math.pi), ("2*pi", 2 * math.pi),
    ("-pi/2", -math.pi / 2), ("pi/4", math.pi / 4), ("-3", -3.0),
])
def test_parse_real(text, value):
    assert cli.parse_real(text) == pytest.approx(value, rel=1e-16)


def test_parse_real_rejects_garbage():
    with pytest.raises(ValueError):
        cli.parse_real("twopi")


def test_geodesic_csv(capsys):
    code, out, _ = run(["geodesic", "--covector", "1,0,0,0", "--c567", "1,0,0", "--samples", "5"], capsys)
    assert code == 0
    columns, rows = io.loads_csv(out)
    assert columns == cli.GEODESIC_COLUMNS
    assert rows.shape == (5, len(columns))
    np.testing.assert_allclose(rows[-1, 1:8], [0, 0, 0, 0, -2 * math.pi, 0, 0], atol=1e-12)


def test_geodesic_json_meta(capsys):
    code, out, _ = run(["geodesic", "--paper-constants", "0,1,0,0,1,0,0", "--samples", "3", "--format", "json"], capsys)
    assert code == 0
    meta, rows = io.loads_json(out)
    assert meta["C"] == 1.0 and meta["D"] == 1.0
    assert meta["columns"] == cli.GEODESIC_COLUMNS
    assert rows.shape == (3, 13)


def test_csv_roundtrip_is_lossless(tmp_path, rng):
    path = tmp_path / "g.csv"
    h0 = ",".join(repr(float(x)) for x in rng.normal(size=4))
    c = ",".join(repr(float(x)) for x in rng.normal(size=3))
    assert cli.main(["geodesic", "--covector=" + h0, "--c567=" + c, "--samples", "50", "--out", str(path)]) == 0
    meta, columns, rows = io.read_table(path)
    gp = geodesic.params_from_covector([float(x) for x in h0.split(",")], [float(x) for x in c.split(",")])
    expected = cli.geodesic_rows(gp, np.linspace(0, 2 * math.pi, 50))
    np.testing.assert_array_equal(rows, expected)


def test_orbit_coincides_at_maxwell_time(capsys):
    code, out, _ = run([
        "orbit", "--covector", "1,0.5,0,-1", "--c567", "0.3,-0.2,1", "--factor", "d", "--axis", "1,2,3",
        "--s-samples", "7", "--samples", "2", "--t-max", str(2 * math.pi / math.sqrt(1.13)),
    ], capsys)
    assert code == 0
    _, rows = io.loads_csv(out)
    ends = rows[rows[:, 1] > 0][:, 2:]
    assert np.abs(ends - ends[0]).max() < 1e-11


def test_orbit_s_zero_slice_equals_geodesic(capsys):
    args = ["--covector", "1,2,3,4", "--c567", "1,1,0", "--samples", "9"]
    _, geo, _ = run(["geodesic", *args], capsys)
    _, orb, _ = run(["orbit", *args, "--axis", "0,0,1", "--factor", "c", "--s-samples", "3"], capsys)
    _, g = io.loads_csv(geo)
    _, o = io.loads_csv(orb)
    np.testing.assert_allclose(o[:9, 1:], g[:, :8], atol=1e-15)


def test_jacobian_table(capsys):
    code, out, _ = run(["jacobian", "--tau-max", "10", "--samples", "101", "--format", "json"], capsys)
    assert code == 0
    meta, rows = io.loads_json(out)
    np.testing.assert_allclose(meta["roots"], [2 * math.pi, 8.986818915818128], atol=1e-11)
    assert meta["omitted_prefactor"] == "C**-11"
    np.testing.assert_allclose(rows[:, 1], rows[:, 2], atol=1e-9 * (1 + 10**4))


def test_maxwell_report(capsys):
    code, out, _ = run(["maxwell", "--paper-constants", "0,1,0,0,1,0,0"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["maxwell_time"] == pytest.approx(2 * math.pi)
    np.testing.assert_allclose(report["maxwell_point"], [-2 * math.pi, 0, 0, 0, 0, 0, 0])
    assert report["first_conjugate_time"] == pytest.approx(2 * math.pi, abs=1e-10)


def test_maxwell_degenerate(capsys):
    code, out, _ = run(["maxwell", "--covector", "1,0,0,0", "--c567", "0,0,0"], capsys)
    assert code == 0
    assert json.loads(out)["cut_time"] is None


@pytest.mark.parametrize("argv", [
    ["geodesic", "--covector", "1,0,0,0"],
    ["geodesic", "--covector", "1,0,0", "--c567", "1,0,0"],
    ["geodesic", "--covector", "1,0,0,0", "--c567", "1,0,0", "--paper-constants", "1,1,1,1,1,1,1"],
    ["geodesic", "--covector", "1,0,0,0", "--c567", "1,0,0", "--t-max", "-1"],
    ["geodesic", "--covector", "1,0,0,0", "--c567", "1,0,0", "--samples", "1"],
    ["orbit", "--covector", "1,0,0,0", "--c567", "1,0,0", "--axis", "0,0,0"],
    ["orbit", "--covector", "1,0,0,0", "--c567", "0,0,0", "--axis", "1,0,0"],
    ["jacobian", "--tau-min", "3", "--tau-max", "1"],
    ["geodesic", "--covector", "1,0,0,0", "--c567", "1,0,0", "--out", "/nonexistent/dir/x.csv"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["geodesic", "--format", "xml"])
    assert exc.value.code == 2


def test_verify_exit_codes(capsys, monkeypatch):
    from qheis import verify

    def fake_suite(rng):
        yield "always fails", 1.0, 0.0

    monkeypatch.setattr(verify, "SUITES", {"fake": fake_suite})
    code, out, err = run(["verify"], capsys)
    assert code == 1
    assert "always fails" in err
    assert json.loads(out)["meta"]["passed"] is False


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qheis", "maxwell", "--covector", "1,0,0,0", "--c567", "1,0,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["maxwell_time"] == pytest.approx(2 * math.pi)
