import csv
import io
import json
import math
import subprocess
import sys

import pytest

from infobounds.cli import published_values, run
from infobounds.spectra import dump_spectrum, periodic_spectrum


def _cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "infobounds", *args], capture_output=True, text=True, check=False
    )
    return proc.returncode, proc.stdout, proc.stderr


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_pendry_example():
    code, out, _ = _cli("capacity", "pendry", "--power", "1")
    assert code == 0
    row = _rows(out)[0]
    assert float(row["rate"]) == pytest.approx(1.47635, abs=1e-5)
    assert row["unit"] == "bits_per_s"


def test_blurred_example_json():
    code, out, _ = _cli("bound", "blurred", "--filling", "0.5", "--output", "json")
    assert code == 0
    assert json.loads(out)["alpha"] == pytest.approx(0.645, rel=0.015)


def test_si_units_convert_at_boundary():
    import scipy.constants as const

    code, out, _ = _cli("capacity", "pendry", "--power", "1e-3", "--units", "si")
    assert code == 0
    expected = math.sqrt(math.pi * 1e-3 / (3 * const.hbar)) / math.log(2)
    assert float(_rows(out)[0]["rate"]) == pytest.approx(expected, rel=1e-12)


def test_usage_errors_exit_2_with_json():
    for argv in (["capacity", "pendry"], ["capacity", "warp"], ["fig1", "--bogus"], ["table1", "--rows", "moon"]):
        code, out, err = _cli(*argv)
        assert code == 2, argv
        assert out == ""
        assert json.loads(err)["error"] == "usage"


def test_computation_errors_exit_1_with_json():
    code, _, err = _cli("burst", "cif", "--xi", "-3")
    assert code == 1
    payload = json.loads(err)
    assert payload["exit_code"] == 1
    assert "xi" in payload["message"]


def test_count_rejects_si():
    assert run(["count", "one-particle", "--system", "well", "--units", "si"]) == 2


def test_output_is_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run(["fig2", "--points", "6", "--out", str(a)]) == 0
    assert run(["fig2", "--points", "6", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = _rows(a.read_text())
    assert list(rows[0]) == ["imax_bits", "cost_heralded", "cost_self"]


def test_fig1_columns_and_self_heralding_floor(tmp_path):
    out = tmp_path / "fig1.csv"
    assert run(["fig1", "--points", "7", "--out", str(out)]) == 0
    rows = _rows(out.read_text())
    assert list(rows[0]) == ["xi", "imax_heralded_bits", "imax_self_bits", "continuum_bits"]
    assert rows[0]["imax_self_bits"] == ""  # below one quantum of energy
    assert float(rows[-1]["xi"]) == pytest.approx(1e5)
    for row in rows:
        assert float(row["imax_heralded_bits"]) <= float(row["continuum_bits"])


def test_fig3_ladder_ratio(tmp_path):
    out = tmp_path / "fig3.csv"
    assert run(["fig3", "--ceiling-factor", "3", "--out", str(out)]) == 0
    rows = _rows(out.read_text())
    for row in rows:
        assert float(row["h_over_e"]) == pytest.approx(math.log(int(row["omega"])) / float(row["energy"]))


def test_ladder_from_spectrum_file(tmp_path):
    path = tmp_path / "unit.csv"
    dump_spectrum(periodic_spectrum(2 * math.pi, 10), path)
    code, out, _ = _cli("count", "ladder", "--spectrum", str(path), "--ceiling", "5")
    assert code == 0
    rows = _rows(out)
    assert list(rows[0]) == ["energy", "omega", "h_nits"]
    assert [int(r["omega"]) for r in rows] == [1, 2, 4, 7, 12, 19]


def test_bad_spectrum_file_exits_1(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,1\nnot-a-number,2\n")
    code, _, err = _cli("count", "ladder", "--spectrum", str(path))
    assert code == 1
    assert "line 2" in json.loads(err)["message"]


def test_table1_subset_reports_deviations():
    code, out, _ = _cli("table1", "--rows", "sphere_neumann", "--output", "csv")
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 1
    row = rows[0]
    assert (row["field"], row["cavity"], row["boundary"]) == ("scalar", "unit sphere", "Neumann")
    assert float(row["published_numeric"]) == 0.701
    assert float(row["numeric_rel_dev"]) == pytest.approx(
        float(row["numeric_h_over_e_max"]) / 0.701 - 1, abs=1e-12
    )


def test_published_values_are_reference_only():
    ref = published_values()
    assert len(ref["table1"]) == 9
    assert ref["table1"]["sphere_dirichlet"]["numeric"] == 0.454


@pytest.mark.parametrize(
    "argv, key",
    [
        (["capacity", "crossover"], "x_star"),
        (["capacity", "single-mode", "--alpha", "1", "--n-bar", "2"], "imax_nits"),
        (["capacity", "narrowband", "--delta-omega", "1", "--omega", "1", "--power-per-band", "0.1",
          "--temperature", "0"], "quantum_limit_bits_per_s"),
        (["capacity", "cost", "--model", "lebedev_levitin", "--rate", "1", "--temperature", "1"], "energy_per_bit"),
        (["burst", "min-cost", "--heralding", "self"], "min_cost_hbar_over_tau"),
        (["burst", "imax", "--family", "occupation", "--mean-energy", "1", "--omegas", "1"], "imax_bits"),
        (["bound", "linear"], "rate_coeff_bits"),
        (["bound", "simple", "--channels", "10"], "large_n_rate_bits"),
        (["count", "one-particle", "--system", "oscillator"], "coefficient_bits"),
        (["count", "soliton", "--energy", "5", "--mass", "1"], "imax_bits"),
        (["count", "overcount", "--cavity", "sphere_dirichlet", "--energy", "10"], "n_overcount"),
    ],
)
def test_subcommands_emit_expected_columns(argv, key, capsys):
    assert run(argv + ["--output", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert key in payload
