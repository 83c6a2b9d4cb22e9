"""Microcanonical state counting and the storage bounds built on it.

The central object is the exact cumulative state count ``Omega(E)``: the
number of multi-quantum configurations of a mode spectrum with total energy
at most ``E``.  It is stored at its jump energies as arbitrary-precision
integers, so the specific entropy ``ln Omega(E) / E`` can be scanned
without binning.
"""

from __future__ import annotations

import math
import sys
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .capacity import LOG2E
from .numerics import Bracket, bose_integral, solve_monotone
from .spectra import (
    PION_MASS_MEV,
    ModeSpectrum,
    box_spectrum,
    hagedorn_spectrum,
    line_cavity_spectrum,
    sphere_spectrum,
)

__all__ = [
    "CountLadder",
    "PeakReport",
    "ZetaReport",
    "GuardExceededError",
    "InsufficientDepthError",
    "DEFAULT_CEILING_FACTOR",
    "STATE_GUARD",
    "omega_ladder",
    "specific_entropy_peak",
    "spectral_zeta_and_bounds",
    "deep_spectral_zeta",
    "sphere_reference_zeta",
    "n_overcount",
    "one_particle_bounds",
    "soliton_imax",
    "soliton_bound_coefficient",
    "chain_storage",
    "phonon_storage",
    "line_field",
    "hadron_peak",
    "CAVITY_ROWS",
    "cavity_row",
]

DEFAULT_CEILING_FACTOR = 7.0
STATE_GUARD = 10**8
_JUMP_RTOL = 1e-9


class GuardExceededError(RuntimeError):
    """Enumeration would visit more configurations than the guard allows."""


class InsufficientDepthError(ValueError):
    """The spectrum is too shallow for the zeta tail estimate to be small."""


# ---------------------------------------------------------------------------
# Ladders and peaks


@dataclass(frozen=True, eq=False)
class CountLadder:
    """Cumulative state counts at the jump energies.

    Attributes
    ----------
    energies : numpy.ndarray
        Jump energies, strictly increasing, starting at 0 (the vacuum).
    omega : tuple of int
        ``Omega(E)`` just after each jump; exact integers.
    ceiling : float
    spectrum_label : str
    configurations : int
        Number of occupation patterns visited during enumeration.
    """

    energies: np.ndarray
    omega: tuple[int, ...]
    ceiling: float
    spectrum_label: str = ""
    configurations: int = 0

    def __post_init__(self) -> None:
        if len(self.energies) != len(self.omega) or len(self.omega) == 0:
            raise ValueError("ladder needs matching, non-empty energy and count lists")
        if self.omega[0] != 1:
            raise ValueError("the vacuum must be the only zero-energy state")
        if np.any(np.diff(self.energies) <= 0):
            raise ValueError("jump energies must increase strictly")

    def __len__(self) -> int:
        return len(self.omega)

    @property
    def h(self) -> np.ndarray:
        """``ln Omega`` at each jump, from the exact integers."""
        return np.array([math.log(w) for w in self.omega])

    def omega_at(self, energy: float) -> int:
        """``Omega(E)`` for any ``0 <= E <= ceiling``."""
        if energy < 0:
            return 0
        idx = int(np.searchsorted(self.energies, energy * (1 + _JUMP_RTOL), side="right")) - 1
        return self.omega[idx]

    def rows(self) -> list[tuple[float, int, float]]:
        return [(float(e), w, math.log(w)) for e, w in zip(self.energies, self.omega)]


@dataclass(frozen=True)
class PeakReport:
    """Peak specific entropy and the bounds it is compared with.

    ``zeta4_quarter`` and ``rigorous_bound`` are ``None`` unless a
    :class:`ZetaReport` was supplied.  ``violations`` lists any bound the
    peak exceeds.
    """

    h_over_e_max: float
    argmax_energy: float
    zeta4_quarter: float | None
    rigorous_bound: float | None
    geometric_bound: float | None
    violations: tuple[str, ...] = ()

    def as_dict(self) -> dict[str, float | None]:
        return {
            "h_over_e_max": self.h_over_e_max,
            "argmax_energy": self.argmax_energy,
            "zeta4_quarter": self.zeta4_quarter,
            "rigorous_bound": self.rigorous_bound,
            "geometric_bound": self.geometric_bound,
        }


def _multiplicity(statistics: str) -> Callable[[int, int], int]:
    if statistics == "bose":
        return lambda n, g: math.comb(n + g - 1, n)
    return lambda n, g: math.comb(g, n)


def omega_ladder(
    spectrum: ModeSpectrum,
    ceiling: float | None = None,
    guard: int = STATE_GUARD,
) -> CountLadder:
    """Exact ``Omega(E)`` for all ``E <= ceiling``.

    Depth-first enumeration over levels in increasing energy; at each level
    every occupation that fits in the remaining energy is tried.  A level of
    degeneracy ``g`` holding ``n`` quanta contributes ``C(n+g-1, n)`` states
    for bosons and ``C(g, n)`` for fermions.  Counts at equal total energy
    (to a relative 1e-9) are merged.

    Parameters
    ----------
    spectrum : ModeSpectrum
    ceiling : float, optional
        Defaults to seven times the lowest level.
    guard : int
        Maximum number of occupation patterns to visit.

    Raises
    ------
    GuardExceededError
        If the enumeration exceeds ``guard`` patterns.
    """
    if len(spectrum) == 0:
        raise ValueError("empty spectrum")
    if ceiling is None:
        ceiling = DEFAULT_CEILING_FACTOR * spectrum.lowest
    if ceiling < spectrum.lowest:
        raise ValueError("ceiling lies below the lowest level")
    if ceiling > spectrum.complete_below * (1 + 1e-12):
        raise ValueError(
            f"ceiling {ceiling:g} exceeds the range {spectrum.complete_below:g} where the spectrum is complete"
        )
    limit = ceiling * (1 + 1e-12)
    keep = spectrum.energies <= limit
    energies = [float(e) for e in spectrum.energies[keep]]
    degs = [int(g) for g in spectrum.degeneracies[keep]]
    mult = _multiplicity(spectrum.statistics)
    fermi = spectrum.statistics == "fermi"
    count_levels = len(energies)
    acc: defaultdict[float, int] = defaultdict(int)
    visited = 0

    def visit(start: int, energy: float, weight: int) -> None:
        nonlocal visited
        visited += 1
        if visited > guard:
            raise GuardExceededError(f"more than {guard} configurations below the ceiling")
        acc[energy] += weight
        for j in range(start, count_levels):
            eps = energies[j]
            if energy + eps > limit:
                break
            g = degs[j]
            n = 1
            total = energy + eps
            while total <= limit:
                if fermi and n > g:
                    break
                visit(j + 1, total, weight * mult(n, g))
                n += 1
                total = energy + n * eps

    old_limit = sys.getrecursionlimit()
    depth_needed = int(ceiling / spectrum.lowest) + 50
    if depth_needed > old_limit:
        sys.setrecursionlimit(depth_needed)
    try:
        visit(0, 0.0, 1)
    finally:
        sys.setrecursionlimit(old_limit)

    keys = sorted(acc)
    jump_e: list[float] = []
    counts: list[int] = []
    for e in keys:
        if jump_e and e - jump_e[-1] <= _JUMP_RTOL * max(e, 1e-300):
            counts[-1] += acc[e]
        else:
            jump_e.append(e)
            counts.append(acc[e])
    cumulative = []
    running = 0
    for c in counts:
        running += c
        cumulative.append(running)
    return CountLadder(np.array(jump_e), tuple(cumulative), float(ceiling), spectrum.label, visited)


def specific_entropy_peak(
    ladder: CountLadder,
    length_scale: float | None = None,
    zeta: "ZetaReport | None" = None,
) -> PeakReport:
    """Maximum of ``ln Omega(E) / E`` over the ladder's jump energies.

    Between jumps ``Omega`` is constant while ``E`` grows, so the maximum
    sits on a jump.  ``geometric_bound`` is ``2 pi length_scale``.
    """
    if len(ladder) < 2:
        raise ValueError("ladder has no excited states")
    e = ladder.energies[1:]
    ratio = ladder.h[1:] / e
    k = int(np.argmax(ratio))
    peak = float(ratio[k])
    geometric = 2 * math.pi * length_scale if length_scale is not None else None
    violations = []
    if geometric is not None and peak > geometric:
        violations.append("geometric")
    rigorous = zeta.rigorous_bound if zeta is not None else None
    if rigorous is not None and peak > rigorous:
        violations.append("rigorous")
    if violations:
        import warnings

        warnings.warn(f"peak specific entropy {peak:.6g} exceeds the {', '.join(violations)} bound",
                      RuntimeWarning, stacklevel=2)
    return PeakReport(
        h_over_e_max=peak,
        argmax_energy=float(e[k]),
        zeta4_quarter=zeta.estimate if zeta is not None else None,
        rigorous_bound=rigorous,
        geometric_bound=geometric,
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Spectral zeta function


@dataclass(frozen=True)
class ZetaReport:
    """Spectral zeta sum with its tail estimate and the derived bounds.

    Attributes
    ----------
    zeta : float
        Partial sum plus tail.
    partial, tail : float
    depth : float
        Energy up to which modes were summed explicitly.
    estimate : float
        ``zeta^(1/kappa)``: approximate peak specific entropy.
    rigorous_bound : float or None
        ``(kappa! * zeta_ref)^(1/kappa)`` with ``zeta_ref`` the zeta of the
        Dirichlet sphere enclosing the system.
    reference_zeta : float or None
    """

    kappa: float
    zeta: float
    partial: float
    tail: float
    depth: float
    estimate: float
    rigorous_bound: float | None
    reference_zeta: float | None

    @property
    def tail_fraction(self) -> float:
        return self.tail / self.zeta

    def n_star(self, energy: float | np.ndarray) -> float | np.ndarray:
        """Reference state-count bound ``[cosh(x E) + cos(x E)] / 2`` with ``x`` the rigorous bound."""
        if self.rigorous_bound is None:
            raise ValueError("no enclosing radius was given")
        x = self.rigorous_bound * np.asarray(energy, dtype=float)
        out = 0.5 * (np.cosh(x) + np.cos(x))
        return float(out) if out.ndim == 0 else out


def _zeta_sum(spectrum: ModeSpectrum, kappa: float, dimension: int) -> tuple[float, float, float]:
    depth = spectrum.complete_below
    keep = spectrum.energies <= depth * (1 + 1e-12)
    e = spectrum.energies[keep]
    g = spectrum.degeneracies[keep]
    partial = float(np.sum(g * e**-kappa))
    # Weyl growth N(eps) ~ C eps^d fitted at the cutoff, integrated past it.
    count = float(np.sum(g))
    tail = count * dimension / (kappa - dimension) * depth**-kappa
    return partial, tail, depth


@lru_cache(maxsize=16)
def _unit_sphere_zeta(depth: float, kappa: float) -> tuple[float, float]:
    spec = sphere_spectrum("scalar_dirichlet", 1.0, emax=depth, ell_cap=100000)
    partial, tail, _ = _zeta_sum(spec, kappa, 3)
    return partial, tail


# Depth at which the unit-sphere Dirichlet tail estimate is below 1%.
_REFERENCE_DEPTH = 430.0


def sphere_reference_zeta(radius: float, kappa: float = 4.0, depth: float | None = None) -> float:
    """Zeta of the Dirichlet sphere of the given radius (partial sum plus tail)."""
    d = _REFERENCE_DEPTH if depth is None else depth
    partial, tail = _unit_sphere_zeta(round(float(d), 9), float(kappa))
    return (partial + tail) / radius**kappa


def spectral_zeta_and_bounds(
    spectrum: ModeSpectrum,
    kappa: float = 4.0,
    length_scale: float | None = None,
    dimension: int = 3,
    max_tail: float = 0.01,
) -> ZetaReport:
    """``zeta(kappa) = sum g_j eps_j^-kappa`` with estimate and rigorous bound.

    The explicit sum runs over every mode below the spectrum's
    ``complete_below`` energy ``X``; the remainder is estimated from Weyl
    growth, ``d N(X) X^-kappa / (kappa - d)``, and must be below
    ``max_tail`` of the total.

    Parameters
    ----------
    spectrum : ModeSpectrum
    kappa : float
        Exponent, larger than ``dimension``.
    length_scale : float, optional
        Enclosing radius; defaults to ``spectrum.length_scale``.  When
        absent no rigorous bound is computed.
    dimension : int
    max_tail : float

    Raises
    ------
    InsufficientDepthError
        If the tail estimate reaches ``max_tail`` of the total.
    """
    if not kappa > dimension:
        raise ValueError("kappa must exceed the dimension")
    partial, tail, depth = _zeta_sum(spectrum, kappa, dimension)
    total = partial + tail
    if tail >= max_tail * total:
        raise InsufficientDepthError(
            f"tail estimate is {tail / total:.2%} of zeta at depth {depth:g}; use a deeper spectrum"
        )
    radius = length_scale if length_scale is not None else spectrum.length_scale
    reference = None
    rigorous = None
    if radius is not None:
        ref_depth = max(_REFERENCE_DEPTH, depth * radius)
        if dimension == 3:
            reference = sphere_reference_zeta(radius, kappa, ref_depth if ref_depth < 2000 else 2000.0)
            rigorous = (math.gamma(kappa + 1) * reference) ** (1 / kappa)
    return ZetaReport(
        kappa=kappa,
        zeta=total,
        partial=partial,
        tail=tail,
        depth=depth,
        estimate=total ** (1 / kappa),
        rigorous_bound=rigorous,
        reference_zeta=reference,
    )


def deep_spectral_zeta(
    build: Callable[[float], ModeSpectrum],
    start_depth: float,
    target_tail: float = 0.008,
    max_depth: float = 5000.0,
    **kwargs: float,
) -> ZetaReport:
    """Rebuild a spectrum at increasing depth until the zeta tail is small enough.

    ``build(depth)`` must return a spectrum complete up to ``depth``.  The
    tail scales like ``1 / depth``, which sets each new depth.
    """
    depth = start_depth
    while True:
        spec = build(depth)
        partial, tail, _ = _zeta_sum(spec, kwargs.get("kappa", 4.0), int(kwargs.get("dimension", 3)))
        fraction = tail / (partial + tail)
        if fraction < target_tail:
            return spectral_zeta_and_bounds(spec, **kwargs)
        if depth >= max_depth:
            raise InsufficientDepthError(f"tail still {fraction:.2%} at depth {depth:g}")
        depth = min(max_depth, depth * fraction / target_tail * 1.05)


# ---------------------------------------------------------------------------
# Overcounting function


def _is_uniform(spectrum: ModeSpectrum) -> bool:
    e = spectrum.energies
    if np.any(spectrum.degeneracies != 1):
        return False
    j = np.arange(1, len(e) + 1)
    return bool(np.allclose(e, j * e[0], rtol=1e-12, atol=0))


def n_overcount(spectrum: ModeSpectrum, E: float, method: str = "integral_equation") -> int:
    """Number of ordered sequences of quanta with total energy at most ``E``.

    ``closed_form_uniform`` gives ``2 ** floor(E / eps)`` for the uniform
    spectrum ``eps_j = j eps``.  ``integral_equation`` evaluates
    ``N(E) = 1 + sum_{eps_j <= E} g_j N(E - eps_j)``, the renewal equation
    with a sum of delta functions as kernel; it is exact for any discrete
    spectrum, so no energy grid is needed.
    """
    if E < 0:
        return 0
    if method == "closed_form_uniform":
        if not _is_uniform(spectrum):
            raise ValueError("closed form needs the uniform spectrum eps_j = j eps with g_j = 1")
        if E > spectrum.complete_below * (1 + 1e-12):
            raise ValueError("E exceeds the range where the spectrum is complete")
        return 2 ** int(math.floor(E / spectrum.lowest + 1e-12))
    if method != "integral_equation":
        raise ValueError(f"unknown method {method!r}")
    if E > spectrum.complete_below * (1 + 1e-12):
        raise ValueError("E exceeds the range where the spectrum is complete")
    energies = [float(x) for x in spectrum.energies if x <= E * (1 + 1e-12)]
    degs = [int(g) for g in spectrum.degeneracies[: len(energies)]]
    tol = 1e-12 * max(E, 1.0)
    memo: dict[float, int] = {}

    def count(remaining: float) -> int:
        key = round(remaining / tol)
        if key in memo:
            return memo[key]
        total = 1
        for eps, g in zip(energies, degs):
            if eps > remaining + tol:
                break
            total += g * count(remaining - eps)
        memo[key] = total
        return total

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, int(E / spectrum.lowest) * 4 + 100))
    try:
        return count(E)
    finally:
        sys.setrecursionlimit(old_limit)


# ---------------------------------------------------------------------------
# One-particle systems


def _well_bound() -> dict[str, float]:
    # Y(e, R) = ln(2 e R^2 / pi^2) / (R (1 + e)); the particle must stay
    # non-relativistic, e < 1.
    def best_radius(e: float) -> tuple[float, float]:
        res = minimize_scalar(
            lambda log_r: -math.log(2 * e * math.exp(2 * log_r) / math.pi**2) / (math.exp(log_r) * (1 + e)),
            bounds=(math.log(math.pi / math.sqrt(2 * e)), math.log(1e4)),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return -float(res.fun), math.exp(res.x)

    res = minimize_scalar(lambda e: -best_radius(e)[0], bounds=(1e-3, 1.0), method="bounded",
                          options={"xatol": 1e-12})
    y_max, r_star = best_radius(res.x)
    return {"coefficient_bits": 0.5 * y_max * LOG2E, "y_max": y_max, "e_star": float(res.x), "r_star": r_star}


def _rotator_peak_condition(j: int) -> float:
    # Value of I* R*^2 at which the continuous peak over j falls on integer j.
    return 0.5 * ((2 * j + 1) * (j + 1) * math.log(j + 1) - j * (j + 1))


def _rotator_bound(jmax: int = 40) -> dict[str, float | list[float]]:
    conditions = [_rotator_peak_condition(j) for j in range(0, jmax + 1)]
    best = 0.0
    best_j = 0
    for j in range(1, jmax + 1):
        # X = ln(j+1) / (R + j(j+1) / (2 I R)) is largest for I = 1 (radius of
        # gyration inside the sphere) and R = sqrt(j(j+1)/2).
        res = minimize_scalar(
            lambda log_r, j=j: -math.log(j + 1) / (math.exp(log_r) + j * (j + 1) / (2 * math.exp(log_r))),
            bounds=(-5.0, 8.0), method="bounded", options={"xatol": 1e-12},
        )
        x = -float(res.fun)
        if x > best:
            best, best_j = x, j
    return {
        "coefficient_bits": best * LOG2E,
        "h_over_e_coefficient_bits": 2 * best * LOG2E,
        "x_max": best,
        "j_star": best_j,
        "peak_conditions": conditions[:5],
    }


def _oscillator_bound(nmax: int = 40) -> dict[str, float]:
    def k_value(n: int, y: float, count: float) -> float:
        a = n + 1.5
        return math.log(count) * math.sqrt(y) / (math.sqrt(a) * (1 + a * y))

    best = (0.0, 0, 0.0)
    cube_best = 0.0
    for n in range(1, nmax + 1):
        ways = (n + 1) * (n + 2) / 2  # three labelled non-negative integers summing to n
        res = minimize_scalar(lambda ly, n=n, w=ways: -k_value(n, math.exp(ly), w),
                              bounds=(-12.0, 4.0), method="bounded", options={"xatol": 1e-12})
        k = -float(res.fun)
        if k > best[0]:
            best = (k, n, math.exp(res.x))
        cube_best = max(cube_best, k_value(n, 1 / (n + 1.5), (n + 1) ** 3))
    return {
        "coefficient_bits": best[0] * LOG2E,
        "k_max": best[0],
        "n_star": best[1],
        "y_star": best[2],
        "cube_bound_coefficient_bits": cube_best * LOG2E,
    }


def one_particle_bounds(system: str) -> dict[str, float | list[float]]:
    """Coefficient ``c`` in ``I < c E R`` (bits, hbar = c = 1) for one particle.

    ``well``: particle in a one-dimensional well, WKB state count, with the
    kinetic energy below the rest energy.  ``rotator``: rigid rotator with
    radius of gyration inside the enclosing sphere; ``peak_conditions``
    lists the values of ``I* R*^2`` at which the peak over angular momentum
    falls on ``j = 0, 1, 2, ...``.  ``oscillator``: isotropic 3-D oscillator
    with the virial amplitude as radius, optimised over the rest-to-level
    energy ratio ``y`` and the level ``n``.
    """
    if system == "well":
        return _well_bound()
    if system == "rotator":
        return _rotator_bound()
    if system == "oscillator":
        return _oscillator_bound()
    raise ValueError("system must be 'well', 'rotator' or 'oscillator'")


# ---------------------------------------------------------------------------
# Solitons and one-dimensional storage


def soliton_imax(E: float, m: float) -> float:
    """Bits storable in the kink's confined excitation: ``log2(1 + floor(E / omega_1))``."""
    if E < 0 or not m > 0:
        raise ValueError("need E >= 0 and m > 0")
    omega1 = m * math.sqrt(1.5)
    return math.log2(1 + math.floor(E / omega1 + 1e-12))


def soliton_bound_coefficient() -> float:
    """Coefficient ``c`` in ``I < c E R_s``: ``log2 e / (sqrt(3/2) sqrt(8))``."""
    return LOG2E / (math.sqrt(1.5) * math.sqrt(8.0))


def chain_storage(N: int, n_species: int, mass: float, spacing: float) -> dict[str, float | bool]:
    """Sequence information of ``N`` molecules drawn from ``n_species`` kinds.

    The geometric bound uses ``E = N m`` and half-length ``N spacing``; the
    Compton condition ``spacing > 1/m`` makes it at least ``2 pi N^2``.
    """
    if N < 1 or n_species < 1 or mass <= 0 or spacing <= 0:
        raise ValueError("invalid chain parameters")
    h_nits = N * math.log(n_species)
    bound = 2 * math.pi * (N * mass) * (N * spacing)
    return {
        "h_max_nits": h_nits,
        "h_max_bits": h_nits * LOG2E,
        "geometric_bound_nits": bound,
        "compton_floor_nits": 2 * math.pi * N * N,
        "compton_ok": spacing * mass > 1,
        "satisfied": h_nits <= bound,
    }


def phonon_storage(E: float, L: float, spacing: float, sound_speed: float) -> dict[str, float | str]:
    """Thermal phonon entropy of a chain of length ``L`` holding energy ``E``.

    ``H = (2 L T / pi c_s) B(X)`` and ``E = (L T^2 / pi c_s) B(X)`` with
    ``B`` the :func:`~infobounds.numerics.bose_integral` and
    ``X = c_s / (2 spacing T)``.  The temperature is found by monotone
    inversion of ``E(T)``.
    """
    if min(E, L, spacing, sound_speed) <= 0:
        raise ValueError("parameters must be positive")

    def energy(T: float) -> float:
        return L * T * T / (math.pi * sound_speed) * bose_integral(sound_speed / (2 * spacing * T))

    lo, hi = 1e-12, 1.0
    while energy(hi) < E:
        hi *= 4
    T = math.exp(solve_monotone(lambda lt: math.log(energy(math.exp(lt))) - math.log(E),
                                Bracket(math.log(lo), math.log(hi)), tol=1e-13))
    X = sound_speed / (2 * spacing * T)
    h = 2 * L * T / (math.pi * sound_speed) * bose_integral(X)
    if X > 10:
        regime = "sqrt_law"
    elif X < 0.1:
        regime = "saturation"
    else:
        regime = "crossover"
    return {
        "h_max_nits": h,
        "temperature": T,
        "cutoff_ratio": X,
        "regime": regime,
        "sqrt_law_nits": math.sqrt(2 * math.pi * E * L / (3 * sound_speed)),
        "saturation_nits": L / (math.pi * spacing),
        "continuum_valid": T > sound_speed / L,
    }


def line_field(E: float | None = None, L: float = 1.0, ceiling_quanta: int = 40) -> dict[str, float]:
    """Scalar field on a segment of length ``L``.

    Returns the large-energy entropy ``sqrt(2 pi E L / 3)`` (when ``E`` is
    given) and the exact microcanonical peak coefficient of
    ``(H/E)_max`` in units of ``L`` from the standing-wave ladder.
    """
    spec = line_cavity_spectrum(L, ceiling_quanta)
    ladder = omega_ladder(spec, ceiling=spec.complete_below)
    peak = specific_entropy_peak(ladder, spec.length_scale)
    out = {"peak_coefficient": peak.h_over_e_max * L, "argmax_energy": peak.argmax_energy}
    if E is not None:
        if E < 0:
            raise ValueError("E must be non-negative")
        out["analytic_h_nits"] = math.sqrt(2 * math.pi * E * L / 3)
        if E <= spec.complete_below:
            out["exact_h_nits"] = math.log(ladder.omega_at(E))
    return out


def hadron_peak(
    emax: float = 1400.0,
    bin_width: float = 10.0,
    threshold: float = PION_MASS_MEV,
) -> PeakReport:
    """Peak specific entropy (per MeV) of a gas of hadrons at rest.

    Levels come from :func:`~infobounds.spectra.hagedorn_spectrum`; the
    geometric bound uses a radius of 1e-13 cm.
    """
    spec = hagedorn_spectrum(emax, bin_width, threshold)
    ladder = omega_ladder(spec, ceiling=min(emax, spec.complete_below))
    return specific_entropy_peak(ladder, spec.length_scale)


# ---------------------------------------------------------------------------
# Cavity table


@dataclass(frozen=True)
class CavityRow:
    """One cavity configuration of the peak-specific-entropy table."""

    key: str
    field: str
    cavity: str
    boundary: str
    build: Callable[[float], ModeSpectrum]
    zeta_start_depth: float


def _sphere(field: str) -> Callable[[float], ModeSpectrum]:
    return lambda emax: sphere_spectrum(field, 1.0, emax=emax, ell_cap=100000)


def _box(field: str, sides: tuple[float, float, float]) -> Callable[[float], ModeSpectrum]:
    return lambda emax: box_spectrum(field, *sides, emax=emax)


CAVITY_ROWS: tuple[CavityRow, ...] = (
    CavityRow("sphere_dirichlet", "scalar", "unit sphere", "Dirichlet", _sphere("scalar_dirichlet"), 430.0),
    CavityRow("sphere_neumann", "scalar", "unit sphere", "Neumann", _sphere("scalar_neumann"), 90.0),
    CavityRow("sphere_em", "electromagnetic", "unit sphere", "conducting", _sphere("em"), 150.0),
    CavityRow("sphere_neutrino", "neutrino", "unit sphere", "bag", _sphere("neutrino"), 430.0),
    CavityRow("box_111_dirichlet", "scalar", "1x1x1", "Dirichlet",
              _box("scalar_dirichlet", (1.0, 1.0, 1.0)), 800.0),
    CavityRow("box_1_095_09_dirichlet", "scalar", "1x0.95x0.9", "Dirichlet",
              _box("scalar_dirichlet", (1.0, 0.95, 0.9)), 800.0),
    CavityRow("box_1_095_09_neumann", "scalar", "1x0.95x0.9", "Neumann",
              _box("scalar_neumann", (1.0, 0.95, 0.9)), 150.0),
    CavityRow("box_1_095_09_em", "electromagnetic", "1x0.95x0.9", "conducting",
              _box("em", (1.0, 0.95, 0.9)), 300.0),
    CavityRow("box_1_066_02_dirichlet", "scalar", "1x0.66x0.2", "Dirichlet",
              _box("scalar_dirichlet", (1.0, 0.66, 0.2)), 2300.0),
)


def cavity_row(
    key: str,
    ceiling_factor: float = DEFAULT_CEILING_FACTOR,
    with_zeta: bool = True,
) -> tuple[PeakReport, ModeSpectrum, CountLadder]:
    """Peak report, ladder spectrum and ladder for one cavity of the table."""
    row = next((r for r in CAVITY_ROWS if r.key == key), None)
    if row is None:
        raise KeyError(f"unknown cavity row {key!r}")
    # The lowest mode never exceeds 2 pi / shortest-side scale; build a shallow
    # spectrum first to find it, then the full ladder spectrum.
    probe = row.build(12.0 if "sphere" in key else 40.0)
    ceiling = ceiling_factor * probe.lowest
    spec = row.build(ceiling)
    ladder = omega_ladder(spec, ceiling)
    zeta = deep_spectral_zeta(row.build, row.zeta_start_depth) if with_zeta else None
    return specific_entropy_peak(ladder, spec.length_scale, zeta), spec, ladder
