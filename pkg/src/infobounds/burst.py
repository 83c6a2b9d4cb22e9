"""Information carried by finite-duration signals and the linear rate bounds.

A burst of duration ``tau`` lives on the periodic spectrum ``2 pi j / tau``.
Maximising the entropy at fixed mean energy gives a Gibbs distribution with
Lagrange multiplier ``mu``; in the dimensionless variable ``b = 2 pi mu / tau``
everything reduces to the two unit-spectrum sums of
:func:`infobounds.numerics.exact_sums`.  ``xi = E tau`` is the
dimensionless signal energy (hbar = 1).

A *heralded* signal has its arrival announced separately, so the vacuum
counts as a message.  A *self-heralding* signal must announce itself, so
the vacuum is removed from the ensemble.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .capacity import LOG2E
from .numerics import Bracket, exact_sums, solve_monotone
from .spectra import ModeSpectrum, periodic_spectrum

__all__ = [
    "Heralding",
    "CifPoint",
    "OvercompletenessError",
    "CLOSED_FORM_CONSTANT",
    "cif_point",
    "cif_solve",
    "cif_closed_heralded",
    "continuum_cif",
    "energy_cost_curve",
    "min_cost_per_bit",
    "state_family_imax",
    "log_partition",
    "linear_bound_mu",
    "filling_function",
    "multichannel_bounds",
    "theorem2_check",
]

# Constant of the closed-form heralded CIF.
CLOSED_FORM_CONSTANT = 1.18808

_B_LO = 1e-6
_B_HI = 50.0


class Heralding(enum.IntEnum):
    """Whether the vacuum is an admissible message (value is the excluded count)."""

    HERALDED = 0
    SELF_HERALDING = 1


class OvercompletenessError(ValueError):
    """Coherent-state information came out negative (too little energy per mode)."""


@dataclass(frozen=True)
class CifPoint:
    """One point of the characteristic information function.

    Attributes
    ----------
    b : float
        ``2 pi mu / tau``.
    ln_z : float
        Log partition function of the unit spectrum at ``b``.
    xi : float
        Mean signal energy times duration.
    imax_bits : float
        Maximum information, in bits.
    heralding : Heralding
    """

    b: float
    ln_z: float
    xi: float
    imax_bits: float
    heralding: Heralding

    def __post_init__(self) -> None:
        if not (self.b > 0 and self.xi > 0):
            raise ValueError("b and xi must be positive")
        if self.imax_bits < 0:
            raise ValueError("information must be non-negative")


def _as_heralding(value: Heralding | int | str) -> Heralding:
    if isinstance(value, str):
        key = value.lower().replace("-", "_")
        aliases = {"heralded": Heralding.HERALDED, "self": Heralding.SELF_HERALDING,
                   "self_heralding": Heralding.SELF_HERALDING}
        if key not in aliases:
            raise ValueError(f"unknown heralding {value!r}")
        return aliases[key]
    return Heralding(int(value))


def cif_point(b: float, heralding: Heralding | int | str = Heralding.HERALDED) -> CifPoint:
    """Evaluate the CIF parametrically at ``b``.

    ``xi = 2 pi Z / (Z - zeta) * s1(b)`` and
    ``I = [b xi / 2 pi + ln(Z - zeta)] log2 e``, where ``zeta`` is 0 for
    heralded and 1 for self-heralding signals.
    """
    h = _as_heralding(heralding)
    if not b > 0:
        raise ValueError("b must be positive")
    sums = exact_sums(b)
    ln_z = sums.lnz
    if h is Heralding.HERALDED:
        ratio = 1.0
        ln_z_minus = ln_z
    else:
        if ln_z < 1e-300:
            raise ValueError(f"Z - 1 underflows at b={b}; the self-heralding ensemble is empty")
        ratio = 1.0 / -math.expm1(-ln_z)
        ln_z_minus = ln_z + math.log(-math.expm1(-ln_z))
    xi = 2 * math.pi * ratio * sums.s1
    imax = (b * xi / (2 * math.pi) + ln_z_minus) * LOG2E
    return CifPoint(b=b, ln_z=ln_z, xi=xi, imax_bits=max(imax, 0.0), heralding=h)


def cif_solve(xi: float, heralding: Heralding | int | str = Heralding.HERALDED) -> CifPoint:
    """Invert ``xi(b)`` (strictly decreasing) and return the CIF point."""
    h = _as_heralding(heralding)
    if not xi > 0:
        raise ValueError("xi must be positive")
    target = math.log(xi)

    def residual(log_b: float) -> float:
        return math.log(cif_point(math.exp(log_b), h).xi) - target

    # Start from a narrow bracket and widen towards the documented limits
    # [1e-6, 50]; tiny b makes the mode sums long.
    lo, hi = math.log(1e-3), math.log(_B_HI)
    while residual(lo) < 0 and lo > math.log(_B_LO) + 1e-9:
        lo = max(lo - math.log(10.0), math.log(_B_LO))
    if not (residual(lo) > 0 > residual(hi)):
        raise ValueError(f"xi={xi} outside the reachable numeric range")
    log_b = solve_monotone(residual, Bracket(lo, hi), tol=1e-13)
    return cif_point(math.exp(log_b), h)


def continuum_cif(xi: float) -> float:
    """Continuum approximation ``sqrt(pi xi / 3) log2 e`` (bits); an upper bound."""
    if xi < 0:
        raise ValueError("xi must be non-negative")
    return math.sqrt(math.pi * xi / 3) * LOG2E


def cif_closed_heralded(xi: float) -> float:
    """Closed-form heralded CIF (bits), valid for ``xi > 0.12``.

    ``I = R log2 e - log2(R) / 2 - 1.18808`` where ``R = pi^2 / (3 b)`` and
    ``b`` solves the Euler-Maclaurin energy relation.  That relation is a
    quadratic in ``R`` with root ``R = 1/2 + sqrt(1/4 - pi^2/36 + pi xi / 3)``.

    Notes
    -----
    The form ``R = 1 + sqrt(1 - pi^2/36 + pi xi / 3)`` sometimes quoted
    overshoots the exact CIF by about 0.75 bits at every ``xi``; it is not
    the root of the energy relation and is not used.
    """
    if not xi > 0.12:
        raise ValueError("closed form requires xi > 0.12")
    r = 0.5 + math.sqrt(0.25 - math.pi**2 / 36 + math.pi * xi / 3)
    return r * LOG2E - 0.5 * math.log2(r) - CLOSED_FORM_CONSTANT


def energy_cost_curve(
    heralding: Heralding | int | str,
    imax_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """Energy per bit ``xi / I`` (units of hbar / tau) at requested information levels.

    Each grid value is located on the CIF by a monotone solve in ``b``.
    """
    h = _as_heralding(heralding)
    out = []
    for target in imax_grid:
        if not target > 0:
            raise ValueError("information grid values must be positive")

        def residual(log_b: float, target: float = target) -> float:
            return cif_point(math.exp(log_b), h).imax_bits - target

        lo = math.log(1e-3)
        while residual(lo) < 0 and lo > math.log(_B_LO) + 1e-9:
            lo = max(lo - math.log(10.0), math.log(_B_LO))
        log_b = solve_monotone(residual, Bracket(lo, math.log(_B_HI)), tol=1e-13)
        point = cif_point(math.exp(log_b), h)
        out.append((point.imax_bits, point.xi / point.imax_bits))
    return out


def min_cost_per_bit(heralding: Heralding | int | str = Heralding.SELF_HERALDING) -> tuple[float, float]:
    """Global minimum of the cost curve: ``(cost, imax_bits)`` at the minimum.

    Only the self-heralding branch has an interior minimum; the heralded
    cost decreases towards zero information.
    """
    from scipy.optimize import minimize_scalar

    h = _as_heralding(heralding)

    def cost(log_b: float) -> float:
        p = cif_point(math.exp(log_b), h)
        return p.xi / p.imax_bits

    res = minimize_scalar(cost, bounds=(math.log(0.05), math.log(10.0)), method="bounded",
                          options={"xatol": 1e-10})
    p = cif_point(math.exp(res.x), h)
    return p.xi / p.imax_bits, p.imax_bits


# ---------------------------------------------------------------------------
# Coherent versus occupation-number coding


def state_family_imax(family: str, mean_energy: float, omegas: Sequence[float]) -> float:
    """Maximum information (bits) storable in ``N`` modes at mean energy ``E``.

    ``coherent``: ``N log2 e + sum log2(E / (N omega_j))``; raises
    :class:`OvercompletenessError` if negative.
    ``occupation``: solve ``E = sum omega_j / (e^(mu omega_j) - 1)`` for
    ``mu`` and return ``mu E log2 e - sum log2(1 - e^(-mu omega_j))``.
    """
    omegas_arr = np.asarray(omegas, dtype=float)
    if len(omegas_arr) == 0 or np.any(omegas_arr <= 0):
        raise ValueError("need at least one positive mode frequency")
    if not mean_energy > 0:
        raise ValueError("mean energy must be positive")
    n = len(omegas_arr)
    if family == "coherent":
        value = n * LOG2E + float(np.sum(np.log2(mean_energy / (n * omegas_arr))))
        if value < 0:
            raise OvercompletenessError(
                f"coherent-state information is negative ({value:.4g} bits): overcompleteness regime"
            )
        return value
    if family == "occupation":
        def energy_gap(log_mu: float) -> float:
            mu = math.exp(log_mu)
            return math.log(float(np.sum(omegas_arr / np.expm1(mu * omegas_arr)))) - math.log(mean_energy)

        # E(mu) ~ N / mu for small mu and ~ omega e^{-mu omega} for large mu.
        lo = math.log(1e-6 * n / mean_energy)
        hi = math.log(max(1.0, 50.0 / float(omegas_arr.min())) + abs(math.log(mean_energy)) / float(omegas_arr.min()))
        while energy_gap(lo) < 0:
            lo -= 5
        while energy_gap(hi) > 0:
            hi += 1
        mu = math.exp(solve_monotone(energy_gap, Bracket(lo, hi), tol=1e-14))
        return mu * mean_energy * LOG2E - float(np.sum(np.log2(-np.expm1(-mu * omegas_arr))))
    raise ValueError("family must be 'occupation' or 'coherent'")


def theorem2_check(
    mean_energy_grid: Sequence[float],
    mode_count_grid: Sequence[int],
    omega: float = 1.0,
) -> list[dict[str, float]]:
    """Occupation minus coherent information on an (E, N) grid of equal-frequency modes.

    Returns one row per grid point; points where the coherent value is
    negative are reported with ``coherent_bits = nan`` and skipped in the
    comparison.  Raises ``AssertionError`` if any defined margin is negative.
    """
    rows = []
    for energy in mean_energy_grid:
        for count in mode_count_grid:
            omegas = [omega] * int(count)
            occ = state_family_imax("occupation", energy, omegas)
            try:
                coh = state_family_imax("coherent", energy, omegas)
            except OvercompletenessError:
                coh = math.nan
            margin = occ - coh if math.isfinite(coh) else math.nan
            rows.append({"mean_energy": energy, "modes": int(count), "occupation_bits": occ,
                         "coherent_bits": coh, "margin_bits": margin})
    bad = [r for r in rows if math.isfinite(r["margin_bits"]) and r["margin_bits"] < -1e-9]
    if bad:
        raise AssertionError(f"coherent coding beat occupation coding at {bad[0]}")
    return rows


# ---------------------------------------------------------------------------
# Linear bounds


def log_partition(mu: float, spectrum: ModeSpectrum) -> float:
    """``-sum_j g_j ln(1 - exp(-mu eps_j))`` over a finite spectrum."""
    return float(-np.sum(spectrum.degeneracies * np.log1p(-np.exp(-mu * spectrum.energies))))


def _root_mu(spectrum: ModeSpectrum, level: float) -> float:
    """Unique ``mu`` with ``log_partition(mu) = level``; the sum falls monotonically in mu."""
    if len(spectrum) == 0:
        raise ValueError("empty spectrum")
    scale = 1.0 / spectrum.lowest

    def residual(log_mu: float) -> float:
        return math.log(log_partition(math.exp(log_mu), spectrum)) - math.log(level)

    lo = math.log(_B_LO * scale)
    hi = math.log(_B_HI * scale)
    while residual(hi) > 0:
        hi += math.log(2.0)
    while residual(lo) < 0:
        lo -= math.log(10.0)
    return math.exp(solve_monotone(residual, Bracket(lo, hi), tol=1e-14))


def _tau_of(spectrum: ModeSpectrum) -> float | None:
    tau = spectrum.cutoff.get("tau")
    return float(tau) if tau is not None else None


def linear_bound_mu(spectrum: ModeSpectrum | None = None) -> dict[str, float]:
    """Maximum information per unit energy, ``mu``, from the vacuum-excluded ensemble.

    ``mu`` solves ``-sum g_j ln(1 - e^(-mu eps_j)) = ln 2``; stored
    information is then at most ``mu E`` nits.  For a periodic spectrum the
    bound becomes a rate ``b E / 2 pi`` with ``b = 2 pi mu / tau``.

    Parameters
    ----------
    spectrum : ModeSpectrum, optional
        Defaults to the unit periodic spectrum (``tau = 2 pi``) with enough
        modes that truncation is below double precision.

    Returns
    -------
    dict
        ``mu``, ``info_coeff_bits`` (= mu log2 e) and, for periodic spectra,
        ``b``, ``mu_pi_over_tau`` and ``rate_coeff_bits`` (= b log2 e / 2 pi).
    """
    if spectrum is None:
        spectrum = periodic_spectrum(2 * math.pi, 4000)
    if spectrum.statistics != "bose":
        raise ValueError("the linear bound is derived for bosonic spectra")
    mu = _root_mu(spectrum, math.log(2.0))
    out = {"mu": mu, "info_coeff_bits": mu * LOG2E}
    tau = _tau_of(spectrum)
    if tau is not None:
        b = 2 * math.pi * mu / tau
        out.update(b=b, mu_pi_over_tau=mu * math.pi / tau, rate_coeff_bits=b * LOG2E / (2 * math.pi))
    return out


def filling_function(r: float) -> float:
    """``r / (1 - r) |ln r| + |ln(1 - r)|`` for a filling fraction ``0 < r < 1``."""
    if not 0 < r < 1:
        raise ValueError("filling fraction must lie strictly between 0 and 1")
    return r / (1 - r) * abs(math.log(r)) + abs(math.log1p(-r))


def multichannel_bounds(mode: str, spectrum: ModeSpectrum | None = None, *,
                        channels: int = 1, filling: float | None = None,
                        energy: float = 1.0) -> dict[str, float | str]:
    """Linear bounds for ``N`` parallel channels.

    ``simple``: ``mu`` solves ``-N sum ln(1 - e^(-mu eps_j)) = ln 2``; the
    exact bound is ``mu E log2 e`` and the large-N form is
    ``(E / 2 pi) log2(N / ln 2)``.

    ``blurred``: each channel obeys ``ln Y = G(r)`` with ``G`` the
    :func:`filling_function`; ``alpha`` is the root ``b`` of the unit
    periodic log-partition equal to ``G(r)``, and the rate bound
    ``alpha E / 2 pi`` is in **nits** per second.
    """
    if spectrum is None:
        spectrum = periodic_spectrum(2 * math.pi, 4000)
    tau = _tau_of(spectrum)
    if mode == "simple":
        if channels < 1:
            raise ValueError("need at least one channel")
        mu = _root_mu(spectrum, math.log(2.0) / channels)
        out: dict[str, float | str] = {
            "mode": "simple",
            "channels": channels,
            "mu": mu,
            "exact_bound_bits": mu * energy * LOG2E,
        }
        if tau is not None:
            out["b"] = 2 * math.pi * mu / tau
            out["rate_bound_bits"] = out["b"] * energy * LOG2E / (2 * math.pi)
            out["large_n_rate_bits"] = energy / (2 * math.pi) * math.log2(channels / math.log(2))
        return out
    if mode == "blurred":
        if filling is None:
            raise ValueError("blurred mode needs a filling fraction")
        g = filling_function(filling)
        mu = _root_mu(spectrum, g)
        b = 2 * math.pi * mu / tau if tau is not None else mu
        return {
            "mode": "blurred",
            "filling": filling,
            "G": g,
            "mu": mu,
            "alpha": b,
            "rate_bound": b * energy / (2 * math.pi),
            "unit": "nits_per_s",
        }
    raise ValueError("mode must be 'simple' or 'blurred'")
