import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from infobounds.numerics import (
    STIRLING_CONSTANT,
    Bracket,
    BracketError,
    bessel_zero,
    bessel_zeros_below,
    bose_integral,
    euler_maclaurin_sums,
    exact_sums,
    solve_monotone,
)


def _sph_jn_upward(ell, x):
    """Spherical Bessel j_ell by the closed sin/cos recurrence (stable for x > ell)."""
    j0 = math.sin(x) / x
    if ell == 0:
        return j0
    j1 = math.sin(x) / x**2 - math.cos(x) / x
    for n in range(1, ell):
        j0, j1 = j1, (2 * n + 1) / x * j1 - j0
    return j1


def _bisect(f, lo, hi):
    flo = f(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_j0_zeros_are_multiples_of_pi(n):
    assert bessel_zero("function", 0, n) == pytest.approx(n * math.pi, abs=1e-12)


def test_first_zero_of_j1_solves_tan_x_equals_x():
    root = _bisect(lambda x: math.tan(x) - x, 4.0, 4.6)
    assert bessel_zero("function", 1, 1) == pytest.approx(root, abs=1e-12)
    assert root == pytest.approx(4.493409457909063, abs=1e-12)


def test_j0_derivative_zeros_coincide_with_j1_zeros():
    d = bessel_zeros_below("derivative", 0, 30.0)
    f = bessel_zeros_below("function", 1, 30.0)
    np.testing.assert_allclose(d, f, atol=1e-11)


def test_first_derivative_zero_of_j1():
    assert bessel_zero("derivative", 1, 1) == pytest.approx(2.0815759778181, abs=1e-11)


@pytest.mark.parametrize("ell", [2, 3, 7])
def test_zeros_against_independent_recurrence(ell):
    roots = bessel_zeros_below("function", ell, 40.0)
    for r in roots:
        # Bracket the root of the hand-rolled recurrence closely around the candidate.
        oracle = _bisect(lambda x: _sph_jn_upward(ell, x), r - 0.05, r + 0.05)
        assert r == pytest.approx(oracle, abs=1e-9)


@pytest.mark.parametrize("kind", ["function", "derivative"])
@pytest.mark.parametrize("ell", [0, 1, 4, 12])
def test_zero_spacing_is_close_to_pi(kind, ell):
    roots = bessel_zeros_below(kind, ell, 120.0)
    gaps = np.diff(roots)
    assert np.all(gaps > 0)
    assert abs(gaps[-1] - math.pi) < 0.1


def test_bessel_zero_guards():
    with pytest.raises(ValueError):
        bessel_zero("function", -1, 1)
    with pytest.raises(ValueError):
        bessel_zero("function", 0, 0)
    with pytest.raises(ValueError):
        bessel_zero("function", 201, 1)
    with pytest.raises(ValueError):
        bessel_zero("integral", 0, 1)


def _bose_series(upper, terms=4000):
    # int_0^X x/(e^x-1) = pi^2/6 - sum_k e^{-kX}(X/k + 1/k^2)
    k = np.arange(1, terms + 1)
    return math.pi**2 / 6 - float(np.sum(np.exp(-k * upper) * (upper / k + 1 / k**2)))


@pytest.mark.parametrize("upper", [0.05, 0.5, 1.0, 3.0, 10.0, 39.0, 80.0])
def test_bose_integral_against_series(upper):
    assert bose_integral(upper) == pytest.approx(_bose_series(upper), rel=1e-10)


def test_bose_integral_limits():
    assert bose_integral(0.0) == 0.0
    assert bose_integral(math.inf) == math.pi**2 / 6
    assert bose_integral(1.0) == pytest.approx(0.7775046, abs=1e-7)
    with pytest.raises(ValueError):
        bose_integral(-1.0)


@given(st.floats(0.0, 200.0), st.floats(0.0, 200.0))
def test_bose_integral_monotone_and_bounded(a, b):
    lo, hi = sorted((a, b))
    assert bose_integral(lo) <= bose_integral(hi) + 1e-14
    assert bose_integral(hi) <= math.pi**2 / 6


@given(st.floats(-50, 50), st.floats(0.1, 10))
def test_solve_monotone_finds_linear_root(root, slope):
    x = solve_monotone(lambda t: slope * (t - root), Bracket(-100.0, 100.0), tol=1e-13)
    assert x == pytest.approx(root, abs=1e-9)


def test_solve_monotone_rejects_bad_bracket():
    with pytest.raises(BracketError):
        solve_monotone(lambda t: t * t + 1, Bracket(-1.0, 1.0))
    with pytest.raises(ValueError):
        Bracket(1.0, 1.0)
    with pytest.raises(ValueError):
        Bracket(0.0, math.inf)


def test_solve_monotone_decreasing_function():
    x = solve_monotone(lambda t: math.exp(-t) - 0.5, Bracket(0.0, 5.0))
    assert x == pytest.approx(math.log(2), abs=1e-11)


def _naive_sums(b):
    s1 = lnz = 0.0
    j = 1
    while True:
        t1 = j / math.expm1(b * j)
        t2 = -math.log1p(-math.exp(-b * j))
        s1 += t1
        lnz += t2
        if t1 < 1e-17 * s1 and t2 < 1e-17 * lnz:
            return s1, lnz
        j += 1


@pytest.mark.parametrize("b", [0.01, 0.3, 1.0, 2.5, 10.0])
def test_exact_sums_against_naive_loop(b):
    s = exact_sums(b)
    s1, lnz = _naive_sums(b)
    assert s.s1 == pytest.approx(s1, rel=1e-12)
    assert s.lnz == pytest.approx(lnz, rel=1e-12)


def test_exact_sums_at_one():
    s = exact_sums(1.0)
    assert s.s1 == pytest.approx(1.1866007, abs=1e-7)
    assert s.lnz == pytest.approx(0.6843289, abs=1e-7)


def test_stirling_constant_is_half_log_two_pi():
    assert STIRLING_CONSTANT == pytest.approx(0.5 * math.log(2 * math.pi), abs=5e-6)


@given(st.floats(0.02, 4.0))
def test_euler_maclaurin_within_one_percent(b):
    approx = euler_maclaurin_sums(b)
    exact = exact_sums(b)
    assert abs(approx.s1 / exact.s1 - 1) < 0.01
    assert abs(approx.lnz / exact.lnz - 1) < 0.01
