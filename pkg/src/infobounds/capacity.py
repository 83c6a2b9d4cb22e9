"""Steady-state channel capacities and single-mode noisy-channel information.

All formulas use natural units (hbar = c = k_B = 1): power is energy per
unit time, temperature is an energy, and rates come out per unit time.
Rates are wrapped in :class:`CapacityResult` so the bits/nits choice is
always explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Mapping

import numpy as np
from scipy.optimize import minimize_scalar

__all__ = [
    "LOG2E",
    "LevelDistribution",
    "CapacityResult",
    "NoisyModeChannel",
    "entropy",
    "nyquist_noise",
    "shannon_capacity",
    "crossover_function",
    "crossover_heuristic",
    "pendry_capacity",
    "energy_cost_per_bit",
    "thermal_noise_power",
    "lebedev_levitin_capacity",
    "noncommittal_bounds",
    "geometric_distribution",
    "thermal_entropy",
    "single_mode_info",
    "output_distribution",
    "narrowband_capacity",
    "narrowband_classical_limit",
    "narrowband_quantum_limit",
    "theorem1_distribution",
    "convolve",
    "total_variation",
    "linear_bound_heuristics",
    "unruh_capacity",
    "unruh_crossover_power",
    "boost_signal",
]

LOG2E = 1.0 / math.log(2.0)
_TAIL_MASS = 1e-12


# ---------------------------------------------------------------------------
# Value types


@dataclass(frozen=True, eq=False)
class LevelDistribution:
    """Probability mass function on ``0, 1, ..., support_cutoff``.

    Parameters
    ----------
    probs : array_like
        ``probs[m]`` is the probability of ``m``.
    tail_mass : float
        Mass known to lie beyond the stored support (must be < 1e-12).
    """

    probs: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float).ravel()
        if len(p) == 0:
            raise ValueError("distribution needs at least one entry")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite and non-negative")
        if not 0 <= self.tail_mass < _TAIL_MASS:
            raise ValueError(f"tail beyond the cutoff must be below {_TAIL_MASS}")
        total = float(np.sum(p))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def support_cutoff(self) -> int:
        return len(self.probs) - 1

    def mean(self) -> float:
        return float(np.dot(np.arange(len(self.probs)), self.probs))

    def __getitem__(self, m: int) -> float:
        return float(self.probs[m]) if 0 <= m < len(self.probs) else 0.0


@dataclass(frozen=True)
class CapacityResult:
    """Information rate with an explicit unit tag.

    Attributes
    ----------
    rate : float
        Non-negative rate.
    unit : {"bits_per_s", "nits_per_s"}
    inputs : mapping
        Parameters that produced the value.
    regime : str, optional
        Free-form tag such as ``"quantum"`` or ``"classical"``.
    """

    rate: float
    unit: str = "bits_per_s"
    inputs: Mapping[str, Any] = field(default_factory=dict)
    regime: str | None = None

    def __post_init__(self) -> None:
        if self.unit not in ("bits_per_s", "nits_per_s"):
            raise ValueError(f"unknown unit {self.unit!r}")
        if not math.isfinite(self.rate) or self.rate < 0:
            raise ValueError(f"rate must be finite and non-negative, got {self.rate!r}")
        object.__setattr__(self, "inputs", MappingProxyType(dict(self.inputs)))

    def to(self, unit: str) -> "CapacityResult":
        if unit == self.unit:
            return self
        factor = LOG2E if unit == "bits_per_s" else 1.0 / LOG2E
        return CapacityResult(self.rate * factor, unit, self.inputs, self.regime)

    @property
    def bits(self) -> float:
        return self.to("bits_per_s").rate

    @property
    def nits(self) -> float:
        return self.to("nits_per_s").rate

    def as_dict(self) -> dict[str, Any]:
        return {"rate": self.rate, "unit": self.unit, "regime": self.regime, "inputs": dict(self.inputs)}


@dataclass(frozen=True)
class NoisyModeChannel:
    """One bosonic mode with thermal noise and a mean signal occupation.

    ``alpha`` is the noise parameter (photon energy over noise temperature);
    ``beta`` is fixed by ``1/(e^beta - 1) = 1/(e^alpha - 1) + n_bar_in``.
    ``alpha = math.inf`` describes the noiseless mode.
    """

    alpha: float
    n_bar_in: float

    def __post_init__(self) -> None:
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.n_bar_in >= 0 or not math.isfinite(self.n_bar_in):
            raise ValueError("n_bar_in must be finite and non-negative")

    @property
    def noise_occupation(self) -> float:
        return 0.0 if math.isinf(self.alpha) else 1.0 / math.expm1(self.alpha)

    @property
    def output_occupation(self) -> float:
        return self.noise_occupation + self.n_bar_in

    @property
    def beta(self) -> float:
        n_out = self.output_occupation
        if n_out == 0:
            return math.inf
        return math.log1p(1.0 / n_out)


# ---------------------------------------------------------------------------
# Shannon entropy and classical capacity


def entropy(dist: LevelDistribution, base: str = "bits") -> float:
    """Shannon entropy ``-sum p ln p`` in bits or nits; empty cells add nothing."""
    p = dist.probs[dist.probs > 0]
    h = float(-np.sum(p * np.log(p)))
    if base == "bits":
        return h * LOG2E
    if base == "nits":
        return h
    raise ValueError("base must be 'bits' or 'nits'")


def nyquist_noise(T: float, delta_omega: float) -> float:
    """Thermal noise power ``T * delta_omega / 2 pi`` in a band."""
    return T * delta_omega / (2 * math.pi)


def shannon_capacity(delta_omega: float, P: float, N: float) -> CapacityResult:
    """Classical band-limited capacity ``(delta_omega / 2 pi) log2(1 + P/N)``."""
    if not delta_omega > 0:
        raise ValueError("bandwidth must be positive")
    if P < 0:
        raise ValueError("signal power must be non-negative")
    if N == 0:
        raise ValueError("zero noise power: the classical capacity diverges")
    if N < 0:
        raise ValueError("noise power must be positive")
    rate = delta_omega / (2 * math.pi) * math.log2(1 + P / N)
    return CapacityResult(rate, "bits_per_s", {"delta_omega": delta_omega, "P": P, "N": N}, "classical")


def crossover_function(x: float | np.ndarray) -> float | np.ndarray:
    """``x^(-1/2) log2(1 + x)``."""
    x = np.asarray(x, dtype=float)
    out = np.log2(1 + x) / np.sqrt(x)
    return float(out) if out.ndim == 0 else out


def crossover_heuristic() -> tuple[float, float]:
    """Maximiser and maximum of :func:`crossover_function` (about 3.92, 1.16)."""
    res = minimize_scalar(
        lambda lx: -crossover_function(math.exp(lx)),
        bounds=(math.log(0.1), math.log(100.0)),
        method="bounded",
        options={"xatol": 1e-12},
    )
    x_star = math.exp(res.x)
    return x_star, float(crossover_function(x_star))


# ---------------------------------------------------------------------------
# Broadband quantum channels


def pendry_capacity(P: float, statistics: str = "bose") -> CapacityResult:
    """Noiseless broadband capacity ``sqrt(pi P / 3) log2 e``.

    Fermionic carriers lose a factor ``sqrt(2)``.
    """
    if P < 0:
        raise ValueError("power must be non-negative")
    if statistics not in ("bose", "fermi"):
        raise ValueError("statistics must be 'bose' or 'fermi'")
    rate = math.sqrt(math.pi * P / 3) * LOG2E
    if statistics == "fermi":
        rate /= math.sqrt(2)
    return CapacityResult(rate, "bits_per_s", {"P": P, "statistics": statistics}, "quantum")


def thermal_noise_power(T: float) -> float:
    """Power ``pi T^2 / 12`` carried by one broadband bosonic channel at temperature ``T``."""
    return math.pi * T * T / 12


def lebedev_levitin_capacity(P: float, T: float) -> CapacityResult:
    """Broadband capacity with thermal noise at temperature ``T``.

    ``(pi T / 6) (sqrt(1 + 12 P / (pi T^2)) - 1) log2 e``; reduces to
    :func:`pendry_capacity` at ``T = 0``.
    """
    if P < 0 or T < 0:
        raise ValueError("power and temperature must be non-negative")
    if T == 0:
        base = pendry_capacity(P)
        return CapacityResult(base.rate, base.unit, {"P": P, "T": T}, "quantum")
    x = 12 * P / (math.pi * T * T)
    # sqrt(1+x) - 1 written to avoid cancellation at small x.
    rate = math.pi * T / 6 * x / (math.sqrt(1 + x) + 1) * LOG2E
    regime = "classical" if x < 1 else "quantum"
    return CapacityResult(rate, "bits_per_s", {"P": P, "T": T}, regime)


def noncommittal_bounds(P: float, N: float) -> tuple[float, float]:
    """Lower and upper capacity bounds (bits/s) valid for any noise of power ``N``.

    The upper bound is the noiseless rate; the lower bound coincides with
    :func:`lebedev_levitin_capacity` when ``N`` is thermal.
    """
    if P < 0:
        raise ValueError("power must be non-negative")
    if not N > 0:
        raise ValueError("noise power must be positive")
    upper = math.sqrt(math.pi * P / 3) * LOG2E
    if P == 0:
        return 0.0, 0.0
    snr = P / N
    lower = upper * snr / (math.sqrt(1 + snr) + 1) / math.sqrt(snr)
    return lower, upper


def energy_cost_per_bit(model: str, rate: float, **params: float) -> float:
    """Minimum energy spent per transmitted bit at a given rate.

    Parameters
    ----------
    model : {"shannon", "pendry", "lebedev_levitin"}
        ``shannon`` needs ``N`` and ``delta_omega``; ``lebedev_levitin``
        needs ``T``.
    rate : float
        Information rate in bits per unit time.

    Notes
    -----
    At zero rate the Shannon and thermal costs tend to ``T ln 2``; the
    noiseless cost is ``3 (ln 2)^2 rate / pi``.
    """
    if rate < 0:
        raise ValueError("rate must be non-negative")
    ln2 = math.log(2)
    if model == "pendry":
        return 3 * ln2 * ln2 * rate / math.pi
    if model == "lebedev_levitin":
        T = params["T"]
        if T < 0:
            raise ValueError("temperature must be non-negative")
        return (T + 3 * rate / math.pi) * ln2
    if model == "shannon":
        N = params["N"]
        delta_omega = params["delta_omega"]
        if not (N > 0 and delta_omega > 0):
            raise ValueError("need positive N and delta_omega")
        k = 2 * math.pi * ln2 / delta_omega
        if rate == 0:
            return N * k
        return N * math.expm1(k * rate) / rate
    raise ValueError(f"unknown model {model!r}")


# ---------------------------------------------------------------------------
# Single-mode noisy channel


def geometric_distribution(param: float) -> LevelDistribution:
    """``(1 - e^-param) e^(-param m)``, truncated where the tail drops below 1e-12."""
    if not param > 0:
        raise ValueError("parameter must be positive")
    if math.isinf(param):
        return LevelDistribution(np.array([1.0]))
    q = math.exp(-param)
    # The tail beyond m is q^(m+1); keep a margin below the 1e-12 threshold.
    cutoff = max(1, int(math.ceil(math.log(1e-14) / math.log(q))))
    m = np.arange(cutoff + 1)
    p = -math.expm1(-param) * q**m
    tail = q ** (cutoff + 1)
    p[0] += 1.0 - tail - float(np.sum(p))  # remove rounding drift in the sum
    return LevelDistribution(p, tail_mass=tail)


def thermal_entropy(param: float) -> float:
    """Entropy in nits of the geometric distribution with parameter ``param``."""
    if math.isinf(param):
        return 0.0
    return param / math.expm1(param) - math.log(-math.expm1(-param))


def single_mode_info(channel: NoisyModeChannel) -> tuple[float, tuple[float, float]]:
    """Maximum mutual information (nits) per use of one noisy bosonic mode.

    Returns
    -------
    imax : float
        Output entropy at parameter ``beta`` minus the thermal noise entropy.
    bounds : tuple of float
        Lower bound (thermal noise, equal to ``imax``) and upper bound
        (output entropy alone), valid for any noise of the same mean.
    """
    h_out = thermal_entropy(channel.beta)
    h_noise = thermal_entropy(channel.alpha)
    imax = max(h_out - h_noise, 0.0)
    return imax, (imax, h_out)


def output_distribution(channel: NoisyModeChannel) -> LevelDistribution:
    """Geometric output distribution of the optimally driven channel."""
    return geometric_distribution(channel.beta)


def narrowband_capacity(delta_omega: float, omega: float, P_omega: float, T: float) -> CapacityResult:
    """Capacity of a narrow band at carrier ``omega`` with thermal noise.

    Parameters
    ----------
    delta_omega : float
        Bandwidth.
    omega : float
        Carrier frequency (equal to the quantum energy).
    P_omega : float
        Signal power per unit circular frequency.
    T : float
        Noise temperature; 0 gives the noiseless channel.
    """
    if not omega > 0 or delta_omega <= 0:
        raise ValueError("omega and delta_omega must be positive")
    if P_omega < 0 or T < 0:
        raise ValueError("P_omega and T must be non-negative")
    x = 2 * math.pi * P_omega / omega
    inputs = {"delta_omega": delta_omega, "omega": omega, "P_omega": P_omega, "T": T}
    if x == 0:
        return CapacityResult(0.0, "bits_per_s", inputs, "exact")
    a = math.inf if T == 0 else omega / T
    if math.isinf(a) or a > 700:
        per_mode = math.log1p(x) + x * math.log1p(1 / x)
    else:
        em1 = math.expm1(a)
        per_mode = (
            math.log1p(x * -math.expm1(-a))
            + (x + 1 / em1) * math.log1p(em1 / (x * em1 + 1))
            - a / em1
        )
    rate = delta_omega / (2 * math.pi) * max(per_mode, 0.0) * LOG2E
    return CapacityResult(rate, "bits_per_s", inputs, "exact")


def narrowband_classical_limit(delta_omega: float, P_omega: float, T: float) -> float:
    """High-temperature form ``(delta_omega / 2 pi) log2(1 + 2 pi P_omega / T)``."""
    return delta_omega / (2 * math.pi) * math.log2(1 + 2 * math.pi * P_omega / T)


def narrowband_quantum_limit(delta_omega: float, omega: float, P_omega: float) -> float:
    """Noiseless form: wave term ``log2(1+x)`` plus particle term ``x log2(1+1/x)``."""
    x = 2 * math.pi * P_omega / omega
    if x == 0:
        return 0.0
    return delta_omega / (2 * math.pi) * (math.log2(1 + x) + x * math.log2(1 + 1 / x))


def theorem1_distribution(alpha: float, beta: float, mmax: int | None = None) -> LevelDistribution:
    """Optimal input distribution for a mode with geometric noise.

    ``Q(0) = (1 - e^-beta) / (1 - e^-alpha)`` and, for ``m >= 1``,
    ``Q(m) = Q(0) (1 - e^(beta - alpha)) e^(-beta m)``.  Adding geometric
    noise of parameter ``alpha`` to ``Q`` yields a geometric output of
    parameter ``beta``.

    Parameters
    ----------
    alpha, beta : float
        ``0 < beta < alpha``; ``alpha = inf`` is the noiseless case.
    mmax : int, optional
        Support cutoff.  It is grown until the neglected tail is below 1e-12.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not beta < alpha:
        raise ValueError("beta must be smaller than alpha")
    q0 = -math.expm1(-beta) / (1.0 if math.isinf(alpha) else -math.expm1(-alpha))
    factor = 1.0 if math.isinf(alpha) else -math.expm1(beta - alpha)
    q = math.exp(-beta)

    def tail_after(cut: int) -> float:
        # sum_{m > cut} Q(m) in closed form
        return q0 * factor * q ** (cut + 1) / (1 - q)

    cutoff = max(1, mmax or 1)
    while tail_after(cutoff) >= 1e-13:
        cutoff = max(cutoff + 1, int(cutoff * 1.5))
    m = np.arange(cutoff + 1)
    p = q0 * factor * q**m
    p[0] = q0
    tail = tail_after(cutoff)
    p[0] += 1.0 - tail - float(np.sum(p))
    return LevelDistribution(p, tail_mass=tail)


def convolve(a: LevelDistribution, b: LevelDistribution) -> np.ndarray:
    """Distribution of the sum of independent draws (unnormalised array)."""
    return np.convolve(a.probs, b.probs)


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    """Half the L1 distance, padding the shorter array with zeros."""
    n = max(len(p), len(q))
    pp = np.zeros(n)
    qq = np.zeros(n)
    pp[: len(p)] = p
    qq[: len(q)] = q
    return 0.5 * float(np.sum(np.abs(pp - qq)))


# ---------------------------------------------------------------------------
# Linear bounds, accelerated receivers, boosts


def _bose_configuration_bound(x: float) -> float:
    """Bracketed factor of the Stirling-counted configuration bound at ``x = deps / eps``."""
    return x ** -0.5 * math.log2(1 + x) + x**0.5 * math.log2(1 + 1 / x)


def linear_bound_heuristics(E: float, tau: float, eps: float, deps: float) -> dict[str, float]:
    """Rate bounds linear in the signal energy (bits/s, hbar = 1).

    Parameters
    ----------
    E : float
        Signal energy.
    tau : float
        Signal duration.
    eps : float
        Lowest non-zero one-quantum level.
    deps : float
        Smallest level spacing below ``E``.

    Returns
    -------
    dict
        ``bremermann`` is ``E log2(1 + 4 pi) / 2 pi``; ``bulk_transport`` is
        ``2 pi E log2 e``; ``heuristic_rhs`` is the Stirling bound on the
        information of the configuration count at (E, eps, deps);
        ``bracket_max`` bounds its bracketed factor by twice the crossover
        maximum and ``bracket_sup`` is the attained supremum;
        ``heuristic_rate_bound`` is ``E bracket_max / sqrt(2 pi)``, the rate
        limit once ``sqrt(eps deps) >= sqrt(2 pi) / tau`` is imposed, and
        ``heuristic_coefficient`` its coefficient of ``E``.
    """
    if min(E, tau, eps, deps) <= 0:
        raise ValueError("all arguments must be positive")
    # Each of the two bracketed terms is the crossover function at x or 1/x,
    # so twice its maximum bounds the bracket; the bracket itself peaks at
    # x = 1 with value 2 (reported as ``bracket_sup``).
    _, f_star = crossover_heuristic()
    bracket_max = 2 * f_star
    res = minimize_scalar(
        lambda lx: -_bose_configuration_bound(math.exp(lx)),
        bounds=(-10.0, 10.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    coefficient = bracket_max / math.sqrt(2 * math.pi)
    return {
        "bremermann": E * math.log2(1 + 4 * math.pi) / (2 * math.pi),
        "bulk_transport": 2 * math.pi * E * LOG2E,
        "heuristic_rhs": E / math.sqrt(eps * deps) * _bose_configuration_bound(deps / eps),
        "bracket_max": bracket_max,
        "bracket_sup": -float(res.fun),
        "heuristic_rate_bound": coefficient * E,
        "heuristic_coefficient": coefficient,
        "uncertainty_satisfied": float(math.sqrt(eps * deps) >= math.sqrt(2 * math.pi) / tau),
    }


def unruh_crossover_power(a: float) -> float:
    """Characteristic power ``1e-2 a^2`` separating thermal and quantum regimes."""
    return 1e-2 * a * a


def unruh_capacity(P: float, a: float) -> CapacityResult:
    """Capacity seen by a receiver with proper acceleration ``a``.

    ``(a / 12) (sqrt(1 + 48 pi P / a^2) - 1) log2 e``: the thermal formula
    at the acceleration temperature ``a / 2 pi``.
    """
    if P < 0:
        raise ValueError("power must be non-negative")
    if not a > 0:
        raise ValueError("acceleration must be positive")
    x = 48 * math.pi * P / (a * a)
    rate = a / 12 * x / (math.sqrt(1 + x) + 1) * LOG2E
    regime = "quantum" if P > unruh_crossover_power(a) else "classical"
    return CapacityResult(rate, "bits_per_s", {"P": P, "a": a}, regime)


def boost_signal(E: float, tau: float, V: float, c_s: float = 1.0) -> tuple[float, float]:
    """Energy and duration of a signal seen by a receiver moving at ``V``.

    The signal travels at ``c_s <= 1``; ``E * tau`` is invariant.
    """
    if not 0 < c_s <= 1:
        raise ValueError("signal speed must lie in (0, 1]")
    if abs(V) >= c_s:
        raise ValueError("receiver speed must be below the signal speed")
    gamma = 1 / math.sqrt(1 - V * V)
    shift = 1 - V / c_s
    return gamma * E * shift, tau / (shift * gamma)
