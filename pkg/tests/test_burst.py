import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infobounds.burst import (
    CLOSED_FORM_CONSTANT,
    Heralding,
    OvercompletenessError,
    cif_closed_heralded,
    cif_point,
    cif_solve,
    continuum_cif,
    energy_cost_curve,
    filling_function,
    linear_bound_mu,
    log_partition,
    min_cost_per_bit,
    multichannel_bounds,
    state_family_imax,
    theorem2_check,
)
from infobounds.capacity import LOG2E
from infobounds.spectra import periodic_spectrum


def _partition_counts(nmax):
    """p(n) for n <= nmax by the standard coin-change recursion."""
    p = [1] + [0] * nmax
    for part in range(1, nmax + 1):
        for n in range(part, nmax + 1):
            p[n] += p[n - part]
    return p


def _cif_by_partitions(b, exclude_vacuum, nmax=400):
    """Gibbs ensemble over all occupation patterns of the unit spectrum.

    Every pattern of total energy n (in units of 2 pi / tau) has weight
    exp(-b n); there are p(n) of them.  Returns (xi, bits).
    """
    p = _partition_counts(nmax)
    n = np.arange(nmax + 1)
    weights = np.array(p, dtype=float) * np.exp(-b * n)
    if exclude_vacuum:
        weights[0] = 0.0
    z = weights.sum()
    mean_n = float(np.dot(n, weights) / z)
    # entropy = sum over patterns of -q ln q with q = exp(-b n) / z
    entropy = b * mean_n + math.log(z)
    return 2 * math.pi * mean_n, entropy * LOG2E


@pytest.mark.parametrize("b", [0.3, 1.0, 2.5])
@pytest.mark.parametrize("heralding", list(Heralding))
def test_cif_point_against_partition_enumeration(b, heralding):
    xi, bits = _cif_by_partitions(b, heralding is Heralding.SELF_HERALDING)
    point = cif_point(b, heralding)
    assert point.xi == pytest.approx(xi, rel=1e-10)
    assert point.imax_bits == pytest.approx(bits, rel=1e-10)


def test_cif_point_reference():
    p = cif_point(1.0)
    assert p.xi == pytest.approx(7.45563, abs=1e-5)
    assert p.imax_bits == pytest.approx(2.69918, abs=1e-5)


@given(st.floats(0.05, 5e3))
def test_cif_solve_inverts_cif_point(xi):
    p = cif_solve(xi)
    assert p.xi == pytest.approx(xi, rel=1e-9)


@given(st.floats(0.05, 1e5))
def test_continuum_is_an_upper_bound(xi):
    assert cif_solve(xi).imax_bits <= continuum_cif(xi)


@given(st.floats(7.0, 1e4))
def test_self_heralding_never_beats_heralded(xi):
    assert cif_solve(xi, "self").imax_bits <= cif_solve(xi, "heralded").imax_bits + 1e-9


@pytest.mark.parametrize("xi", [0.5, 1.0, 7.4555, 10.0, 100.0, 1e4])
def test_closed_form_tracks_exact(xi):
    exact = cif_solve(xi).imax_bits
    assert cif_closed_heralded(xi) == pytest.approx(exact, rel=0.01)


def test_closed_form_is_euler_maclaurin_in_disguise():
    # R = pi^2 / (3 b) with b from the approximate energy relation
    from infobounds.numerics import Bracket, euler_maclaurin_sums, solve_monotone

    xi = 42.0
    b = solve_monotone(lambda t: 2 * math.pi * euler_maclaurin_sums(t).s1 - xi, Bracket(0.05, 4.0), tol=1e-14)
    approx = euler_maclaurin_sums(b)
    bits = (b * approx.s1 + approx.lnz) * LOG2E
    assert cif_closed_heralded(xi) == pytest.approx(bits, abs=1e-4)


def test_closed_form_large_xi_approaches_continuum():
    assert cif_closed_heralded(1e12) / continuum_cif(1e12) == pytest.approx(1.0, abs=1e-5)


def test_closed_form_domain():
    with pytest.raises(ValueError):
        cif_closed_heralded(0.1)
    assert CLOSED_FORM_CONSTANT == 1.18808


def test_heralding_aliases():
    assert cif_point(1.0, "self").heralding is Heralding.SELF_HERALDING
    assert cif_point(1.0, "self-heralding").heralding is Heralding.SELF_HERALDING
    with pytest.raises(ValueError):
        cif_point(1.0, "maybe")


def test_energy_cost_curve_consistent_with_cif():
    curve = energy_cost_curve("self", [1.0, 3.5, 10.0])
    for imax, cost in curve:
        point = cif_solve(cost * imax, "self")
        assert point.imax_bits == pytest.approx(imax, rel=1e-8)


def test_min_cost_against_grid_search():
    cost, imax = min_cost_per_bit("self")
    grid = np.exp(np.linspace(math.log(0.1), math.log(5.0), 400))
    costs = []
    for b in grid:
        p = cif_point(float(b), "self")
        costs.append(p.xi / p.imax_bits)
    assert cost <= min(costs) + 1e-9
    assert cost == pytest.approx(min(costs), rel=1e-4)
    assert cost == pytest.approx(4.38750, abs=1e-4)
    assert imax == pytest.approx(3.45815, abs=1e-4)


def _bose_entropy(n):
    return 0.0 if n == 0 else (n + 1) * math.log1p(n) - n * math.log(n)


@pytest.mark.parametrize("energy, modes", [(1.0, 1), (5.0, 3), (40.0, 7)])
def test_state_families_equal_modes(energy, modes):
    occupation = energy / modes
    occ = state_family_imax("occupation", energy, [1.0] * modes)
    assert occ == pytest.approx(modes * _bose_entropy(occupation) * LOG2E, rel=1e-9)
    coh = state_family_imax("coherent", energy, [1.0] * modes)
    assert coh == pytest.approx(modes * math.log2(math.e * occupation), rel=1e-12)


def test_state_family_reference_values():
    assert state_family_imax("occupation", 1.0, [1.0]) == pytest.approx(2.0)
    assert state_family_imax("coherent", math.e, [1.0]) == pytest.approx(2 * LOG2E)
    with pytest.raises(OvercompletenessError):
        state_family_imax("coherent", 0.01, [1.0, 1.0])


@given(st.floats(0.5, 200.0), st.integers(1, 12))
def test_occupation_beats_coherent(energy, modes):
    rows = theorem2_check([energy], [modes])
    for row in rows:
        if math.isfinite(row["coherent_bits"]):
            assert row["margin_bits"] >= -1e-9


def test_linear_bound_root_and_coefficients():
    out = linear_bound_mu()
    spec = periodic_spectrum(2 * math.pi, 4000)
    assert log_partition(out["mu"], spec) == pytest.approx(math.log(2), rel=1e-12)
    assert out["b"] == pytest.approx(out["mu"], rel=1e-12)  # tau = 2 pi
    assert out["rate_coeff_bits"] == pytest.approx(out["b"] * LOG2E / (2 * math.pi))
    assert out["b"] == pytest.approx(0.9926, abs=1e-4)


def test_linear_bound_scales_with_tau():
    a = linear_bound_mu(periodic_spectrum(1.0, 2000))
    b = linear_bound_mu(periodic_spectrum(2.0, 4000))
    assert a["b"] == pytest.approx(b["b"], rel=1e-9)
    assert b["mu"] == pytest.approx(2 * a["mu"], rel=1e-9)


def test_filling_function():
    assert filling_function(0.5) == pytest.approx(2 * math.log(2))
    with pytest.raises(ValueError):
        filling_function(1.0)


@given(st.floats(1e-4, 0.99))
def test_blurred_alpha_solves_partition_equation(r):
    out = multichannel_bounds("blurred", filling=r)
    assert log_partition(out["alpha"], periodic_spectrum(2 * math.pi, 4000)) == pytest.approx(
        filling_function(r), rel=1e-10
    )


def test_blurred_alpha_at_filling_with_g_ln2_equals_linear_bound():
    # G(r) = ln 2 reproduces the single-channel root
    from infobounds.numerics import Bracket, solve_monotone

    r = solve_monotone(lambda x: filling_function(x) - math.log(2), Bracket(1e-6, 0.5))
    assert multichannel_bounds("blurred", filling=r)["alpha"] == pytest.approx(linear_bound_mu()["b"], rel=1e-9)


def test_simple_multichannel_large_n():
    out = multichannel_bounds("simple", channels=10**6, energy=1.0)
    assert out["rate_bound_bits"] == pytest.approx(out["large_n_rate_bits"], rel=0.05)
    one = multichannel_bounds("simple", channels=1)
    assert one["mu"] == pytest.approx(linear_bound_mu()["mu"], rel=1e-12)
    with pytest.raises(ValueError):
        multichannel_bounds("simple", channels=0)
    with pytest.raises(ValueError):
        multichannel_bounds("blurred")
