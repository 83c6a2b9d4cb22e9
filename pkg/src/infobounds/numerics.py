"""Special functions and root-finding primitives shared by the physics modules.

Everything here is a pure function of its arguments.  Spherical Bessel
values come from :func:`scipy.special.spherical_jn`; zero isolation,
bracketing and refinement are done here so that the returned roots carry
the ordering and tolerance guarantees the spectra module relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import spherical_jn

__all__ = [
    "Bracket",
    "SumPair",
    "BESSEL_ELL_CAP",
    "BESSEL_N_CAP",
    "STIRLING_CONSTANT",
    "bessel_zero",
    "bessel_zeros_below",
    "bose_integral",
    "solve_monotone",
    "euler_maclaurin_sums",
    "exact_sums",
]

BESSEL_ELL_CAP = 200
BESSEL_N_CAP = 200

# Constant term of the asymptotic expansion of -sum ln(1 - e^{-bj}),
# printed to five decimals; it equals ln(2 pi)/2 = 0.918938...
STIRLING_CONSTANT = 0.91894

_SCAN_STEP = np.pi / 8
_BISECTION_STEPS = 60
_SUM_RELATIVE_CUTOFF = 1e-14


class BracketError(ValueError):
    """Raised when a bracket does not straddle a sign change."""


@dataclass(frozen=True)
class Bracket:
    """Closed interval ``[lo, hi]`` known to contain a single sign change."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("bracket endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SumPair:
    """Pair of Bose mode sums on the unit-spaced spectrum.

    Attributes
    ----------
    s1 : float
        ``sum_{j>=1} j / (exp(b j) - 1)``.
    lnz : float
        ``-sum_{j>=1} ln(1 - exp(-b j))``, the log partition function.
    """

    s1: float
    lnz: float


# ---------------------------------------------------------------------------
# Spherical Bessel zeros


def _bessel_values(kind: str, ell: int, x: np.ndarray) -> np.ndarray:
    return spherical_jn(ell, x, derivative=(kind == "derivative"))


def _check_kind(kind: str) -> None:
    if kind not in ("function", "derivative"):
        raise ValueError(f"kind must be 'function' or 'derivative', got {kind!r}")


def bessel_zeros_below(kind: str, ell: int, xmax: float) -> np.ndarray:
    """All strictly positive zeros of ``j_ell`` or ``j_ell'`` up to ``xmax``.

    The interval is scanned with step pi/8 starting at ``max(ell, 1) / 2``;
    every sign change is then refined by vectorised bisection to full double
    precision.  The trivial root of ``j_0'`` at the origin lies below the
    scan start and is therefore never reported.

    Parameters
    ----------
    kind : {"function", "derivative"}
        Whether to locate zeros of ``j_ell`` or of its derivative.
    ell : int
        Angular order, ``ell >= 0``.
    xmax : float
        Upper end of the search interval.

    Returns
    -------
    numpy.ndarray
        Zeros in strictly increasing order.
    """
    _check_kind(kind)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    start = 0.5 * max(ell, 1)
    if xmax <= start:
        return np.empty(0)
    grid = np.arange(start, xmax + _SCAN_STEP, _SCAN_STEP)
    values = _bessel_values(kind, ell, grid)
    exact = grid[:-1][values[:-1] == 0.0]
    flips = np.nonzero(values[:-1] * values[1:] < 0.0)[0]
    lo = grid[flips].copy()
    hi = grid[flips + 1].copy()
    f_lo = values[flips].copy()
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        f_mid = _bessel_values(kind, ell, mid)
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(same, mid, lo)
        f_lo = np.where(same, f_mid, f_lo)
        hi = np.where(same, hi, mid)
    roots = np.sort(np.concatenate([exact, 0.5 * (lo + hi)]))
    return roots[(roots > 1e-9) & (roots <= xmax)]


def bessel_zero(
    kind: str,
    ell: int,
    n: int,
    *,
    ell_cap: int = BESSEL_ELL_CAP,
    n_cap: int = BESSEL_N_CAP,
) -> float:
    """Return the ``n``-th positive zero of ``j_ell`` (or of ``j_ell'``).

    Parameters
    ----------
    kind : {"function", "derivative"}
    ell : int
        Angular order, ``0 <= ell <= ell_cap``.
    n : int
        One-based root index, ``1 <= n <= n_cap``.
    ell_cap, n_cap : int
        Configurable guards on the problem size.

    Examples
    --------
    >>> round(bessel_zero("function", 0, 1), 12) == round(np.pi, 12)
    True
    """
    _check_kind(kind)
    if not 0 <= ell <= ell_cap:
        raise ValueError(f"ell={ell} outside [0, {ell_cap}]")
    if not 1 <= n <= n_cap:
        raise ValueError(f"n={n} outside [1, {n_cap}]")
    # McMahon's estimate puts the n-th zero near (n + ell/2) pi; scan a bit
    # beyond that and widen if the scan comes up short.
    xmax = (n + 0.5 * ell + 2.0) * np.pi
    for _ in range(8):
        roots = bessel_zeros_below(kind, ell, xmax)
        if len(roots) >= n:
            return float(roots[n - 1])
        xmax *= 1.5
    raise RuntimeError(f"failed to bracket zero n={n} of order {ell} ({kind})")


# ---------------------------------------------------------------------------
# Integrals and root finding


def _bose_integrand(x: float) -> float:
    if x < 1e-8:
        return 1.0 - 0.5 * x
    if x > 700.0:
        return x * math.exp(-x)
    return x / math.expm1(x)


def bose_integral(upper: float) -> float:
    """Compute ``int_0^upper x / (e^x - 1) dx``.

    ``math.inf`` returns pi^2/6 exactly.  Finite limits use adaptive
    quadrature with the small-argument series to avoid the 0/0 at the origin.
    """
    if math.isnan(upper) or upper < 0:
        raise ValueError("upper limit must be non-negative")
    if math.isinf(upper):
        return math.pi**2 / 6
    if upper == 0:
        return 0.0
    if upper > 40.0:
        # The integrand is negligible far out; subtract the convergent tail
        # series sum_k e^{-k X} (X/k + 1/k^2) from the complete integral.
        tail = sum(math.exp(-k * upper) * (upper / k + 1.0 / k**2) for k in range(1, 4))
        return math.pi**2 / 6 - tail
    value, _ = quad(_bose_integrand, 0.0, upper, epsabs=1e-14, epsrel=1e-13, limit=200)
    return min(value, math.pi**2 / 6)


def solve_monotone(
    func: Callable[[float], float],
    bracket: Bracket,
    tol: float = 1e-12,
    max_iter: int = 400,
) -> float:
    """Root of a monotone function inside a sign-changing bracket.

    Bisection narrows the bracket until its width is below
    ``tol * max(1, |x|)`` or ``|f| <= tol``; a final secant step through the
    bracket ends is accepted only if it stays inside the bracket and improves
    the residual.  The procedure is deterministic.
    """
    lo, hi = bracket.lo, bracket.hi
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise BracketError(
            f"f does not change sign on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}"
        )
    mid, f_mid = lo, f_lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        if hi - lo <= tol * max(1.0, abs(mid)) or abs(f_mid) <= tol:
            break
    if f_hi != f_lo:
        secant = hi - f_hi * (hi - lo) / (f_hi - f_lo)
        if lo < secant < hi:
            f_secant = func(secant)
            if abs(f_secant) < abs(f_mid):
                return secant
    return mid


# ---------------------------------------------------------------------------
# Mode sums on the unit-spaced spectrum


def euler_maclaurin_sums(b: float) -> SumPair:
    """Closed-form approximations to the unit-spectrum Bose sums.

    ``s1 ~ pi^2/(6 b^2) - 1/(2b) + 1/24`` and
    ``lnz ~ pi^2/(6b) + ln(b)/2 - b/24 - 0.91894``.
    Both are better than 1% for ``b <= 4``.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    s1 = math.pi**2 / (6 * b * b) - 1 / (2 * b) + 1 / 24
    lnz = math.pi**2 / (6 * b) + 0.5 * math.log(b) - b / 24 - STIRLING_CONSTANT
    return SumPair(s1=s1, lnz=lnz)


def exact_sums(b: float, chunk: int = 65536) -> SumPair:
    """Term-by-term evaluation of the unit-spectrum Bose sums.

    Summation stops once the last term drops below 1e-14 of the running
    total; the neglected tail is geometric and smaller than that.
    """
    if not b > 0:
        raise ValueError("b must be positive")
    s1 = 0.0
    lnz = 0.0
    start = 1
    while True:
        j = np.arange(start, start + chunk, dtype=float)
        with np.errstate(over="ignore"):
            s1_terms = j / np.expm1(b * j)
        lnz_terms = -np.log1p(-np.exp(-b * j))
        s1 += float(np.sum(s1_terms))
        lnz += float(np.sum(lnz_terms))
        if s1_terms[-1] < _SUM_RELATIVE_CUTOFF * s1 and lnz_terms[-1] < _SUM_RELATIVE_CUTOFF * lnz:
            return SumPair(s1=s1, lnz=lnz)
        start += chunk
