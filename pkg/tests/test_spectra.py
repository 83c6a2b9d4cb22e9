import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infobounds.spectra import (
    EmptySpectrumError,
    ModeSpectrum,
    SpectrumFormatError,
    box_spectrum,
    dump_spectrum,
    hadron_level_density,
    hagedorn_spectrum,
    line_cavity_spectrum,
    load_spectrum,
    misc_spectrum,
    periodic_spectrum,
    phonon_chain_spectrum,
    soliton_spectrum,
    sphere_spectrum,
)


def test_periodic_levels():
    s = periodic_spectrum(2 * math.pi, 5)
    assert s.levels == [(1.0, 1), (2.0, 1), (3.0, 1), (4.0, 1), (5.0, 1)]
    assert s.cutoff["tau"] == 2 * math.pi
    with pytest.raises(ValueError):
        periodic_spectrum(0, 3)


def test_mode_spectrum_normalises_and_validates():
    s = ModeSpectrum([2.0, 1.0, 2.0 * (1 + 1e-14)], [1, 3, 2])
    assert s.levels == [(1.0, 3), (2.0, 3)]
    assert s.mode_count() == 6
    with pytest.raises(ValueError):
        ModeSpectrum([0.0], [1])
    with pytest.raises(ValueError):
        ModeSpectrum([1.0], [0])
    with pytest.raises(ValueError):
        ModeSpectrum([1.0], [1], statistics="boltzmann")
    with pytest.raises(ValueError):
        s.energies[0] = 5.0


def test_sphere_dirichlet_lowest_levels():
    s = sphere_spectrum("scalar_dirichlet", 1.0, emax=7.0)
    assert s.levels[0] == (pytest.approx(math.pi), 1)
    assert s.levels[1] == (pytest.approx(4.493409457909063), 3)
    assert s.levels[2][1] == 5
    assert s.length_scale == 1.0


def test_sphere_radius_scales_energies():
    a = sphere_spectrum("scalar_dirichlet", 1.0, emax=15.0)
    b = sphere_spectrum("scalar_dirichlet", 2.0, emax=7.5)
    np.testing.assert_allclose(a.energies / 2.0, b.energies, rtol=1e-12)


def test_sphere_fields():
    neu = sphere_spectrum("neutrino", emax=6.0)
    assert neu.statistics == "fermi"
    assert neu.levels[0][1] == 2
    em = sphere_spectrum("em", emax=6.0)
    # lowest em mode is the l=1 derivative zero with degeneracy 3
    assert em.levels[0] == (pytest.approx(2.0815759778181), 3)
    neumann = sphere_spectrum("scalar_neumann", emax=5.0)
    assert all(e > 0 for e in neumann.energies)


def test_sphere_ellmax_nmax_truncation_sets_completeness():
    s = sphere_spectrum("scalar_dirichlet", 1.0, ellmax=3, nmax=2)
    assert len(s) == 8
    full = sphere_spectrum("scalar_dirichlet", 1.0, emax=s.complete_below)
    edge = s.complete_below * (1 - 1e-9)
    assert full.below(edge).levels == s.below(edge).levels
    # the first l=4 zero is the first mode the truncation misses
    assert s.complete_below == pytest.approx(8.182561452571242, rel=1e-12)


def test_sphere_weyl_growth():
    s = sphere_spectrum("scalar_dirichlet", 1.0, emax=60.0, ell_cap=1000)
    # Weyl: N(k) ~ V k^3 / (6 pi^2) to leading order
    volume = 4 * math.pi / 3
    leading = volume * 60.0**3 / (6 * math.pi**2)
    assert s.mode_count() == pytest.approx(leading, rel=0.1)


def _box_oracle(field, sides, emax):
    a, b, c = sides
    count = {}
    top = int(emax * max(sides) / math.pi) + 2
    for i, j, k in itertools.product(range(top), repeat=3):
        e = math.pi * math.sqrt((i / a) ** 2 + (j / b) ** 2 + (k / c) ** 2)
        if e > emax or e == 0:
            continue
        zeros = (i == 0) + (j == 0) + (k == 0)
        if field == "scalar_dirichlet":
            w = 1 if zeros == 0 else 0
        elif field == "scalar_neumann":
            w = 1
        else:
            w = {0: 2, 1: 1}.get(zeros, 0)
        if w:
            count[e] = count.get(e, 0) + w
    return sum(count.values()), min(count)


@pytest.mark.parametrize("field", ["scalar_dirichlet", "scalar_neumann", "em"])
@pytest.mark.parametrize("sides", [(1.0, 1.0, 1.0), (1.0, 0.95, 0.9)])
def test_box_mode_count_matches_brute_force(field, sides):
    s = box_spectrum(field, *sides, emax=14.0)
    total, lowest = _box_oracle(field, sides, 14.0)
    assert s.mode_count() == total
    assert s.lowest == pytest.approx(lowest, rel=1e-12)


def test_box_length_scale_is_half_diagonal():
    s = box_spectrum("scalar_dirichlet", 1.0, 0.95, 0.9, emax=10.0)
    assert 2 * math.pi * s.length_scale == pytest.approx(5.174, abs=1e-3)
    cube = box_spectrum("scalar_dirichlet", 1.0, 1.0, 1.0, emax=10.0)
    assert 2 * math.pi * cube.length_scale == pytest.approx(5.441, abs=1e-3)
    assert cube.levels[0] == (pytest.approx(math.pi * math.sqrt(3)), 1)
    assert cube.levels[1][1] == 3


def test_box_rejects_empty_and_bad_field():
    with pytest.raises(EmptySpectrumError):
        box_spectrum("scalar_dirichlet", 1, 1, 1, emax=1.0)
    with pytest.raises(ValueError):
        box_spectrum("neutrino", 1, 1, 1, emax=10.0)


def test_hadron_density_and_realization():
    assert hadron_level_density(1000.0) == pytest.approx(0.41773, abs=1e-5)
    s = hagedorn_spectrum()
    assert len(s) == 126
    assert s.mode_count() == 558
    assert s.lowest > 139.57
    assert 2 * math.pi * s.length_scale == pytest.approx(0.03184, abs=1e-5)


def test_misc_spectra():
    line = line_cavity_spectrum(2.0, 4)
    np.testing.assert_allclose(line.energies, math.pi * np.arange(1, 5) / 2.0)
    chain = phonon_chain_spectrum(10.0, 1.0, 1.0)
    assert len(chain) == 5
    sol = soliton_spectrum(2.0)
    assert sol.levels[0][0] == pytest.approx(2.0 * math.sqrt(1.5))
    assert misc_spectrum("line_cavity", L=2.0, jmax=4) == line


def test_load_dump_round_trip(tmp_path):
    s = sphere_spectrum("neutrino", emax=9.0)
    path = tmp_path / "spec.csv"
    dump_spectrum(s, path)
    back = load_spectrum(path)
    assert back == s
    assert back.length_scale == s.length_scale
    assert back.statistics == "fermi"


@pytest.mark.parametrize(
    "text, line",
    [
        ("1.0,1\n2.0\n", 2),
        ("# statistics=anyon\n1.0,1\n", 1),
        ("1.0,1\n-2.0,1\n", 2),
        ("1.0,1\n2.0,0\n", 2),
        ("abc,1\n", 1),
    ],
)
def test_load_reports_line_numbers(tmp_path, text, line):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(SpectrumFormatError, match=f"line {line}"):
        load_spectrum(path)


@given(
    st.lists(
        st.tuples(st.floats(0.1, 50.0), st.integers(1, 5)),
        min_size=1,
        max_size=12,
    )
)
def test_spectrum_levels_sorted_and_total_preserved(pairs):
    s = ModeSpectrum([p[0] for p in pairs], [p[1] for p in pairs])
    assert np.all(np.diff(s.energies) > 0)
    assert s.mode_count() == sum(p[1] for p in pairs)
