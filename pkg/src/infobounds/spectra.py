"""One-quantum mode spectra ``{(energy, degeneracy)}`` for the counted systems.

Energies are in natural units (hbar = c = k_B = 1) with the cavity length
as the unit of inverse energy, except the hadron spectrum which is in MeV.
Every constructor returns an immutable :class:`ModeSpectrum` whose levels
are strictly positive, sorted, and merged when two energies agree to a
relative 1e-12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np
from scipy.integrate import quad

from .numerics import BESSEL_ELL_CAP, BESSEL_N_CAP, bessel_zeros_below

__all__ = [
    "ModeSpectrum",
    "SpectrumFormatError",
    "EmptySpectrumError",
    "MERGE_RTOL",
    "PION_MASS_MEV",
    "HBAR_C_MEV_CM",
    "periodic_spectrum",
    "sphere_spectrum",
    "box_spectrum",
    "hadron_level_density",
    "hagedorn_spectrum",
    "line_cavity_spectrum",
    "phonon_chain_spectrum",
    "soliton_spectrum",
    "misc_spectrum",
    "load_spectrum",
    "dump_spectrum",
]

MERGE_RTOL = 1e-12

# Lightest hadron (charged pion) mass, used as the lower edge of the hadron
# level realization.
PION_MASS_MEV = 139.57
HBAR_C_MEV_CM = 197.3269804e-13

SPHERE_FIELDS = ("scalar_dirichlet", "scalar_neumann", "em", "neutrino")
BOX_FIELDS = ("scalar_dirichlet", "scalar_neumann", "em")


class SpectrumFormatError(ValueError):
    """Malformed spectrum file; the message carries the line number."""


class EmptySpectrumError(ValueError):
    """The requested cutoff leaves no modes."""


def _merge_levels(energies: np.ndarray, degeneracies: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(energies, kind="stable")
    e = energies[order]
    g = degeneracies[order]
    if len(e) == 0:
        return e, g
    starts = np.concatenate([[True], np.diff(e) > MERGE_RTOL * e[1:]])
    idx = np.nonzero(starts)[0]
    return e[idx], np.add.reduceat(g, idx)


@dataclass(frozen=True, eq=False)
class ModeSpectrum:
    """Ordered one-quantum levels with a statistics flag.

    Parameters
    ----------
    energies, degeneracies : array_like
        Level energies (> 0) and integer degeneracies (>= 1).  Unsorted
        input and repeated energies are accepted and normalised.
    statistics : {"bose", "fermi"}
    label : str
    length_scale : float, optional
        Circumscribing radius used for the geometric entropy bound.
    cutoff : mapping
        Truncation metadata.  ``complete_below`` is the energy under which
        the list is known to hold every mode.
    """

    energies: np.ndarray
    degeneracies: np.ndarray
    statistics: str = "bose"
    label: str = ""
    length_scale: float | None = None
    cutoff: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        e = np.asarray(self.energies, dtype=float).ravel()
        g = np.asarray(self.degeneracies).ravel()
        if e.shape != g.shape:
            raise ValueError("energies and degeneracies differ in length")
        if not np.all(np.isfinite(e)):
            raise ValueError("energies must be finite")
        if np.any(e <= 0):
            raise ValueError("energies must be strictly positive (zero modes are excluded)")
        if len(g) and not np.all(np.equal(np.mod(g, 1), 0)):
            raise ValueError("degeneracies must be integers")
        g = g.astype(np.int64)
        if np.any(g < 1):
            raise ValueError("degeneracies must be at least 1")
        if self.statistics not in ("bose", "fermi"):
            raise ValueError(f"statistics must be 'bose' or 'fermi', got {self.statistics!r}")
        if self.length_scale is not None and not self.length_scale > 0:
            raise ValueError("length_scale must be positive")
        e, g = _merge_levels(e, g)
        e.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "degeneracies", g)
        object.__setattr__(self, "cutoff", MappingProxyType(dict(self.cutoff)))

    def __len__(self) -> int:
        return len(self.energies)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModeSpectrum):
            return NotImplemented
        return (
            self.statistics == other.statistics
            and np.array_equal(self.energies, other.energies)
            and np.array_equal(self.degeneracies, other.degeneracies)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def levels(self) -> list[tuple[float, int]]:
        return [(float(e), int(g)) for e, g in zip(self.energies, self.degeneracies)]

    @property
    def lowest(self) -> float:
        if len(self) == 0:
            raise EmptySpectrumError("spectrum has no levels")
        return float(self.energies[0])

    @property
    def complete_below(self) -> float:
        """Energy below which no mode is missing."""
        return float(self.cutoff.get("complete_below", self.energies[-1] if len(self) else 0.0))

    def below(self, ceiling: float) -> "ModeSpectrum":
        """Sub-spectrum of levels with energy <= ceiling."""
        keep = self.energies <= ceiling * (1 + MERGE_RTOL)
        return ModeSpectrum(
            self.energies[keep],
            self.degeneracies[keep],
            self.statistics,
            self.label,
            self.length_scale,
            {**self.cutoff, "complete_below": min(ceiling, self.complete_below)},
        )

    def with_statistics(self, statistics: str) -> "ModeSpectrum":
        return ModeSpectrum(
            self.energies, self.degeneracies, statistics, self.label, self.length_scale, self.cutoff
        )

    def mode_count(self) -> int:
        """Number of modes counting degeneracy."""
        return int(np.sum(self.degeneracies))


# ---------------------------------------------------------------------------
# Constructors


def periodic_spectrum(tau: float, jmax: int) -> ModeSpectrum:
    """Levels ``2 pi j / tau`` for ``j = 1..jmax``; the dc mode is left out."""
    if not tau > 0:
        raise ValueError("tau must be positive")
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    j = np.arange(1, jmax + 1, dtype=float)
    return ModeSpectrum(
        2 * math.pi * j / tau,
        np.ones(jmax, dtype=np.int64),
        label=f"periodic(tau={tau:g})",
        cutoff={"jmax": jmax, "tau": tau, "complete_below": 2 * math.pi * jmax / tau},
    )


def sphere_spectrum(
    field: str,
    R: float = 1.0,
    ellmax: int | None = None,
    nmax: int | None = None,
    *,
    emax: float | None = None,
    ell_cap: int = BESSEL_ELL_CAP,
    n_cap: int = BESSEL_N_CAP,
) -> ModeSpectrum:
    """Field modes of a spherical cavity of radius ``R``.

    Mode energies are Bessel zeros divided by ``R``.  ``scalar_dirichlet``
    uses zeros of ``j_l``; ``scalar_neumann`` zeros of ``j_l'``; ``em`` both
    families from ``l = 1``; ``neutrino`` zeros of ``j_l`` with doubled
    degeneracy and Fermi statistics.  Each family is ``2l+1`` degenerate.

    At least one of ``emax`` or the pair (``ellmax``, ``nmax``) must be
    given.  With ``emax`` every mode up to that energy is returned.
    """
    if field not in SPHERE_FIELDS:
        raise ValueError(f"unknown sphere field {field!r}; choose from {SPHERE_FIELDS}")
    if not R > 0:
        raise ValueError("R must be positive")
    if emax is None and (ellmax is None or nmax is None):
        raise ValueError("give emax, or both ellmax and nmax")
    for name, value in (("ellmax", ellmax), ("nmax", nmax)):
        if value is not None and value < 1 and not (name == "ellmax" and value == 0):
            raise ValueError(f"{name} must be positive")
    if ellmax is not None and ellmax > ell_cap:
        raise ValueError(f"ellmax={ellmax} exceeds cap {ell_cap}")
    if nmax is not None and nmax > n_cap:
        raise ValueError(f"nmax={nmax} exceeds cap {n_cap}")

    kinds = {"scalar_dirichlet": ("function",), "neutrino": ("function",),
             "scalar_neumann": ("derivative",), "em": ("function", "derivative")}[field]
    ell_start = 1 if field == "em" else 0
    spin = 2 if field == "neutrino" else 1
    statistics = "fermi" if field == "neutrino" else "bose"

    if emax is not None:
        x_limit = emax * R
    else:
        # Large enough to hold nmax zeros of every order up to ellmax.
        x_limit = (nmax + 0.5 * ellmax + 3.0) * math.pi  # type: ignore[operator]

    energies: list[np.ndarray] = []
    degs: list[np.ndarray] = []
    complete = math.inf if emax is None else x_limit
    ell = ell_start
    while True:
        if ellmax is not None and ell > ellmax:
            break
        found_any = False
        for kind in kinds:
            zeros = bessel_zeros_below(kind, ell, x_limit)
            if nmax is not None:
                if len(zeros) > nmax:
                    complete = min(complete, zeros[nmax])
                zeros = zeros[:nmax]
            if len(zeros):
                found_any = True
                energies.append(zeros)
                degs.append(np.full(len(zeros), spin * (2 * ell + 1), dtype=np.int64))
        if not found_any and ell > x_limit:
            break
        ell += 1
        if ell > ell_cap and (ellmax is None or ell <= ellmax):
            # Only an error when modes of this order still fall below the limit.
            if any(len(bessel_zeros_below(k, ell, x_limit)) for k in kinds):
                raise ValueError(
                    f"spectrum needs ell > {ell_cap}; raise ell_cap or lower emax"
                )
            break
    if ellmax is not None:
        next_first = min(
            bessel_zeros_below(k, ellmax + 1, (ellmax + 8) * math.pi)[0] for k in kinds
        )
        complete = min(complete, next_first)
    if not energies:
        raise EmptySpectrumError("no sphere modes below the requested cutoff")
    e = np.concatenate(energies) / R
    g = np.concatenate(degs)
    return ModeSpectrum(
        e,
        g,
        statistics,
        label=f"sphere {field} R={R:g}",
        length_scale=R,
        cutoff={"complete_below": float(complete) / R,
                "ellmax": float(ellmax if ellmax is not None else ell - 1),
                "nmax": float(nmax if nmax is not None else -1)},
    )


def box_spectrum(field: str, A: float, B: float, C: float, emax: float) -> ModeSpectrum:
    """Field modes of a rectangular cavity with sides ``A, B, C``.

    Energies are ``pi * sqrt(i^2/A^2 + j^2/B^2 + k^2/C^2)`` for all index
    triples below ``emax``.  ``scalar_dirichlet`` needs every index >= 1.
    ``scalar_neumann`` admits zero indices but not the all-zero constant
    mode.  ``em`` gives weight 2 when all indices are positive, weight 1
    when exactly one vanishes, and drops triples with two or more zeros.
    The length scale is the half-diagonal of the box.
    """
    if field not in BOX_FIELDS:
        raise ValueError(f"unknown box field {field!r}; choose from {BOX_FIELDS}")
    if min(A, B, C) <= 0:
        raise ValueError("box sides must be positive")
    first = 0 if field != "scalar_dirichlet" else 1
    imax = int(emax * A / math.pi) + 1
    jmax = int(emax * B / math.pi) + 1
    kmax = int(emax * C / math.pi) + 1
    jj, kk = np.meshgrid(np.arange(first, jmax + 1), np.arange(first, kmax + 1), indexing="ij")
    jj = jj.ravel()
    kk = kk.ravel()
    jk_term = (jj / B) ** 2 + (kk / C) ** 2
    limit = (emax / math.pi) ** 2
    energies: list[np.ndarray] = []
    degs: list[np.ndarray] = []
    for i in range(first, imax + 1):
        q = (i / A) ** 2 + jk_term
        keep = q <= limit * (1 + 1e-14)
        if not np.any(keep):
            continue
        zeros = int(i == 0) + (jj[keep] == 0).astype(int) + (kk[keep] == 0).astype(int)
        if field == "scalar_dirichlet":
            g = np.ones(zeros.shape, dtype=np.int64)
        elif field == "scalar_neumann":
            g = np.where(zeros == 3, 0, 1).astype(np.int64)
        else:
            g = np.select([zeros == 0, zeros == 1], [2, 1], 0).astype(np.int64)
        nonzero = g > 0
        energies.append(math.pi * np.sqrt(q[keep][nonzero]))
        degs.append(g[nonzero])
    if not energies or sum(len(x) for x in energies) == 0:
        raise EmptySpectrumError(f"emax={emax} lies below the lowest {field} box mode")
    return ModeSpectrum(
        np.concatenate(energies),
        np.concatenate(degs),
        "bose",
        label=f"box {field} {A:g}x{B:g}x{C:g}",
        length_scale=0.5 * math.sqrt(A * A + B * B + C * C),
        cutoff={"complete_below": emax},
    )


def hadron_level_density(e_mev: float | np.ndarray) -> float | np.ndarray:
    """Semi-empirical hadron level density in levels per MeV.

    ``26300 (2.5e4 + e^2)^(-5/4) exp(e/160)`` with ``e`` in MeV; spin,
    isospin and antiparticle multiplicities are included.
    """
    e = np.asarray(e_mev, dtype=float)
    out = 26300.0 * (2.5e4 + e * e) ** -1.25 * np.exp(e / 160.0)
    return float(out) if out.ndim == 0 else out


def hagedorn_spectrum(
    emax: float = 1400.0,
    bin_width: float = 10.0,
    threshold: float = PION_MASS_MEV,
) -> ModeSpectrum:
    """Deterministic realization of the hadron level density.

    The range ``[threshold, emax)`` is cut into bins of width ``bin_width``.
    Each bin contributes one level at its centre whose degeneracy is the
    rounded integral of :func:`hadron_level_density` over the bin; empty
    bins are dropped.  ``threshold=0`` bins from zero energy.

    Parameters
    ----------
    emax : float
        Upper edge in MeV, at most 2000.
    bin_width : float
        Bin width in MeV, between 1 and 50.
    threshold : float
        Lower edge in MeV.  The default is the pion mass: the density
        formula is smooth down to zero energy and would otherwise place
        hadron levels at a few MeV.
    """
    if not 0 < emax <= 2000:
        raise ValueError("emax must lie in (0, 2000] MeV")
    if not 1 <= bin_width <= 50:
        raise ValueError("bin_width must lie in [1, 50] MeV")
    if not 0 <= threshold < emax:
        raise ValueError("threshold must lie in [0, emax)")
    nbins = int(math.floor((emax - threshold) / bin_width + 1e-9))
    energies = []
    degs = []
    for k in range(nbins):
        lo = threshold + k * bin_width
        count, _ = quad(hadron_level_density, lo, lo + bin_width, epsrel=1e-12)
        g = int(round(count))
        if g > 0:
            energies.append(lo + 0.5 * bin_width)
            degs.append(g)
    if not energies:
        raise EmptySpectrumError("no hadron levels in the requested range")
    return ModeSpectrum(
        np.array(energies),
        np.array(degs),
        "bose",
        label=f"hadron realization emax={emax:g} MeV bin={bin_width:g} MeV",
        length_scale=1e-13 / HBAR_C_MEV_CM,
        cutoff={"complete_below": threshold + nbins * bin_width, "threshold": threshold},
    )


def line_cavity_spectrum(L: float, jmax: int) -> ModeSpectrum:
    """Dirichlet standing waves on a segment: ``pi j / L``, ``j = 1..jmax``."""
    if not L > 0 or jmax < 1:
        raise ValueError("need L > 0 and jmax >= 1")
    j = np.arange(1, jmax + 1, dtype=float)
    return ModeSpectrum(
        math.pi * j / L,
        np.ones(jmax, dtype=np.int64),
        label=f"line cavity L={L:g}",
        length_scale=L / 2,
        cutoff={"complete_below": math.pi * jmax / L, "jmax": jmax},
    )


def phonon_chain_spectrum(L: float, spacing: float, sound_speed: float) -> ModeSpectrum:
    """Longitudinal phonons ``pi c_s j / L`` cut off at ``pi c_s / (2 spacing)``."""
    if min(L, spacing, sound_speed) <= 0:
        raise ValueError("parameters must be positive")
    count = int(math.floor(L / (2 * spacing) + 1e-9))
    if count < 2:
        raise ValueError("chain must support at least two modes (L / 2 spacing >= 2)")
    j = np.arange(1, count + 1, dtype=float)
    return ModeSpectrum(
        math.pi * sound_speed * j / L,
        np.ones(count, dtype=np.int64),
        label=f"phonon chain L={L:g}",
        length_scale=L / 2,
        cutoff={"complete_below": math.pi * sound_speed / (2 * spacing)},
    )


def soliton_spectrum(m: float) -> ModeSpectrum:
    """Confined excitation of the kink: one level at ``m sqrt(3/2)``.

    The translational zero mode and the unconfined continuum are left out.
    The length scale is the kink radius ``sqrt(8) / m``.
    """
    if not m > 0:
        raise ValueError("mass must be positive")
    return ModeSpectrum(
        np.array([m * math.sqrt(1.5)]),
        np.array([1]),
        label=f"soliton m={m:g}",
        length_scale=math.sqrt(8) / m,
    )


def misc_spectrum(kind: str, **params: float) -> ModeSpectrum:
    """Dispatch to the line-cavity, phonon-chain or soliton constructors."""
    builders = {
        "line_cavity": line_cavity_spectrum,
        "phonon_chain": phonon_chain_spectrum,
        "soliton": soliton_spectrum,
    }
    if kind not in builders:
        raise ValueError(f"unknown spectrum kind {kind!r}")
    return builders[kind](**params)


# ---------------------------------------------------------------------------
# Text format


def load_spectrum(path: str | Path) -> ModeSpectrum:
    """Read ``energy,degeneracy`` lines with optional ``#`` directives.

    Recognised directives are ``# statistics=bose|fermi`` and
    ``# length_scale=<real>``; any other ``#`` line is a comment.
    """
    path = Path(path)
    statistics = "bose"
    length_scale = None
    energies: list[float] = []
    degs: list[int] = []
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = (part.strip() for part in body.partition("="))
                    if key == "statistics":
                        if value not in ("bose", "fermi"):
                            raise SpectrumFormatError(f"line {lineno}: unknown statistics {value!r}")
                        statistics = value
                    elif key == "length_scale":
                        try:
                            length_scale = float(value)
                        except ValueError:
                            raise SpectrumFormatError(f"line {lineno}: bad length_scale {value!r}") from None
                        if not length_scale > 0:
                            raise SpectrumFormatError(f"line {lineno}: length_scale must be positive")
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2:
                raise SpectrumFormatError(f"line {lineno}: expected 'energy,degeneracy', got {line!r}")
            try:
                energy = float(parts[0])
                deg = int(parts[1])
            except ValueError:
                raise SpectrumFormatError(f"line {lineno}: cannot parse {line!r}") from None
            if not math.isfinite(energy) or energy <= 0:
                raise SpectrumFormatError(f"line {lineno}: energy must be positive (zero modes excluded)")
            if deg < 1:
                raise SpectrumFormatError(f"line {lineno}: degeneracy must be at least 1")
            energies.append(energy)
            degs.append(deg)
    if not energies:
        raise SpectrumFormatError(f"{path}: no levels found")
    return ModeSpectrum(
        np.array(energies), np.array(degs), statistics, label=path.stem, length_scale=length_scale
    )


def dump_spectrum(spectrum: ModeSpectrum, path: str | Path) -> None:
    """Write a spectrum in the format read by :func:`load_spectrum`."""
    lines = [f"# statistics={spectrum.statistics}"]
    if spectrum.length_scale is not None:
        lines.append(f"# length_scale={spectrum.length_scale!r}")
    lines += [f"{e!r},{g}" for e, g in spectrum.levels]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _as_levels(pairs: Iterable[tuple[float, int]]) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(pairs)
    return np.array([p[0] for p in pairs], dtype=float), np.array([p[1] for p in pairs])
