"""Command-line front end: every computation as a deterministic CSV/JSON generator.

Subcommands
-----------
capacity   steady-state channel capacities
burst      finite-duration signal information (CIF, costs, coding families)
bound      linear rate bounds and multichannel variants
count      microcanonical state counting and storage bounds
table1     peak specific entropy of the nine reference cavities
fig1       information function of a burst against its energy-duration product
fig2       energy cost per bit against information
fig3       ln Omega(E) / E for the 1 x 0.95 x 0.9 Neumann box

Exit codes: 0 on success, 1 when a computation fails, 2 on bad flags.  In
both failure cases a JSON object is written to standard error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from scipy import constants

from . import burst, capacity, counting
from .spectra import ModeSpectrum, SpectrumFormatError, load_spectrum

__all__ = ["main", "run", "UsageError", "published_values"]

HBAR = constants.hbar
BOLTZMANN = constants.k
LIGHT_SPEED = constants.c


class UsageError(Exception):
    """Bad or missing command-line flags."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def published_values() -> dict[str, Any]:
    """Published reference constants, used only for deviation columns."""
    text = resources.files("infobounds").joinpath("published_values.json").read_text(encoding="utf-8")
    return json.loads(text)


# ---------------------------------------------------------------------------
# Unit conversion at the boundary.  Internally hbar = c = k_B = 1 with time
# in seconds, so energies become angular frequencies (1/s).


class _Units:
    def __init__(self, system: str) -> None:
        self.si = system == "si"

    def energy(self, value: float) -> float:
        """Joules to 1/s."""
        return value / HBAR if self.si else value

    def power(self, value: float) -> float:
        """Watts to 1/s^2."""
        return value / HBAR if self.si else value

    def temperature(self, value: float) -> float:
        """Kelvin to 1/s."""
        return BOLTZMANN * value / HBAR if self.si else value

    def acceleration(self, value: float) -> float:
        """m/s^2 to 1/s."""
        return value / LIGHT_SPEED if self.si else value

    def energy_out(self, value: float) -> float:
        """1/s back to joules."""
        return value * HBAR if self.si else value


# ---------------------------------------------------------------------------
# Output


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else None
    return value


def _render(rows: list[dict[str, Any]], fmt: str) -> str:
    if fmt == "json":
        payload: Any = rows[0] if len(rows) == 1 else rows
        return json.dumps(_jsonable(payload), indent=2) + "\n"
    header: list[str] = []
    for row in rows:
        header.extend(k for k in row if k not in header)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def _flatten(record: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in record.items():
        if isinstance(value, dict):
            out.update(_flatten(value, f"{prefix}{key}_"))
        else:
            out[f"{prefix}{key}"] = value
    return out


# ---------------------------------------------------------------------------
# Flag helpers


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", choices=("csv", "json"), default="csv", help="output format")
    parser.add_argument("--out", type=Path, default=None, help="write to this file instead of stdout")
    parser.add_argument("--units", choices=("natural", "si"), default="natural",
                        help="natural (hbar=c=k_B=1) or SI inputs and outputs")


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"{args.command} {getattr(args, 'kind', '')}: missing {flags}".replace("  ", " "))


def _spectrum_from(args: argparse.Namespace) -> ModeSpectrum:
    if args.spectrum is not None and args.cavity is not None:
        raise UsageError("give either --spectrum or --cavity, not both")
    if args.spectrum is not None:
        return load_spectrum(args.spectrum)
    if args.cavity is not None:
        row = _cavity(args.cavity)
        probe = row.build(12.0 if row.key.startswith("sphere") else 40.0)
        depth = args.depth if args.depth is not None else counting.DEFAULT_CEILING_FACTOR * probe.lowest
        return row.build(depth)
    raise UsageError("a spectrum is required: --spectrum PATH or --cavity KEY")


def _cavity(key: str) -> counting.CavityRow:
    for row in counting.CAVITY_ROWS:
        if row.key == key:
            return row
    raise UsageError(f"unknown cavity {key!r}")


# ---------------------------------------------------------------------------
# capacity


_CAPACITY_KINDS = ("pendry", "lebedev-levitin", "shannon", "narrowband", "noncommittal",
                   "unruh", "cost", "single-mode", "crossover")


def _run_capacity(args: argparse.Namespace) -> list[dict[str, Any]]:
    u = _Units(args.units)
    kind = args.kind
    if kind == "pendry":
        _require(args, "power")
        result = capacity.pendry_capacity(u.power(args.power), args.statistics)
        return [{"model": "pendry", **_flatten(result.as_dict())}]
    if kind == "lebedev-levitin":
        _require(args, "power", "temperature")
        result = capacity.lebedev_levitin_capacity(u.power(args.power), u.temperature(args.temperature))
        return [{"model": "lebedev_levitin", **_flatten(result.as_dict())}]
    if kind == "shannon":
        _require(args, "delta_omega", "power", "noise")
        result = capacity.shannon_capacity(args.delta_omega, u.power(args.power), u.power(args.noise))
        return [{"model": "shannon", **_flatten(result.as_dict())}]
    if kind == "narrowband":
        _require(args, "delta_omega", "omega", "power_per_band", "temperature")
        p_omega = u.energy(args.power_per_band)
        T = u.temperature(args.temperature)
        result = capacity.narrowband_capacity(args.delta_omega, args.omega, p_omega, T)
        row = {"model": "narrowband", **_flatten(result.as_dict())}
        row["quantum_limit_bits_per_s"] = capacity.narrowband_quantum_limit(args.delta_omega, args.omega, p_omega)
        if T > 0:
            row["classical_limit_bits_per_s"] = capacity.narrowband_classical_limit(args.delta_omega, p_omega, T)
        return [row]
    if kind == "noncommittal":
        _require(args, "power", "noise")
        lower, upper = capacity.noncommittal_bounds(u.power(args.power), u.power(args.noise))
        return [{"model": "noncommittal", "lower_bits_per_s": lower, "upper_bits_per_s": upper}]
    if kind == "unruh":
        _require(args, "power", "acceleration")
        a = u.acceleration(args.acceleration)
        result = capacity.unruh_capacity(u.power(args.power), a)
        row = {"model": "unruh", **_flatten(result.as_dict())}
        row["crossover_power"] = capacity.unruh_crossover_power(a)
        return [row]
    if kind == "cost":
        _require(args, "model", "rate")
        params: dict[str, float] = {}
        if args.temperature is not None:
            params["T"] = u.temperature(args.temperature)
        if args.noise is not None:
            params["N"] = u.power(args.noise)
        if args.delta_omega is not None:
            params["delta_omega"] = args.delta_omega
        cost = capacity.energy_cost_per_bit(args.model, args.rate, **params)
        return [{"model": args.model, "rate_bits_per_s": args.rate,
                 "energy_per_bit": u.energy_out(cost),
                 "energy_unit": "J" if u.si else "hbar/s"}]
    if kind == "single-mode":
        _require(args, "alpha", "n_bar")
        channel = capacity.NoisyModeChannel(args.alpha, args.n_bar)
        imax, (lower, upper) = capacity.single_mode_info(channel)
        return [{"alpha": args.alpha, "n_bar_in": args.n_bar, "beta": channel.beta,
                 "imax_nits": imax, "lower_nits": lower, "upper_nits": upper}]
    if kind == "crossover":
        x_star, f_star = capacity.crossover_heuristic()
        return [{"x_star": x_star, "f_star": f_star}]
    raise UsageError(f"unknown capacity kind {kind!r}")


# ---------------------------------------------------------------------------
# burst


_BURST_KINDS = ("cif", "closed-form", "continuum", "cost-curve", "min-cost", "imax", "theorem2")


def _xi_from(args: argparse.Namespace, u: _Units) -> float:
    if args.xi is not None:
        return args.xi
    if args.energy is not None and args.duration is not None:
        return u.energy(args.energy) * args.duration
    raise UsageError("give --xi, or both --energy and --duration")


def _run_burst(args: argparse.Namespace) -> list[dict[str, Any]]:
    u = _Units(args.units)
    kind = args.kind
    if kind == "cif":
        point = burst.cif_point(args.b, args.heralding) if args.b is not None else \
            burst.cif_solve(_xi_from(args, u), args.heralding)
        return [{"heralding": point.heralding.name.lower(), "b": point.b, "ln_z": point.ln_z,
                 "xi": point.xi, "imax_bits": point.imax_bits,
                 "continuum_bits": burst.continuum_cif(point.xi)}]
    if kind == "closed-form":
        xi = _xi_from(args, u)
        return [{"xi": xi, "closed_form_heralded_bits": burst.cif_closed_heralded(xi)}]
    if kind == "continuum":
        xi = _xi_from(args, u)
        return [{"xi": xi, "continuum_bits": burst.continuum_cif(xi)}]
    if kind == "cost-curve":
        _require(args, "imax")
        curve = burst.energy_cost_curve(args.heralding, args.imax)
        return [{"imax_bits": i, "cost_hbar_over_tau": c} for i, c in curve]
    if kind == "min-cost":
        cost, imax = burst.min_cost_per_bit(args.heralding)
        return [{"heralding": args.heralding, "min_cost_hbar_over_tau": cost, "imax_bits": imax}]
    if kind == "imax":
        _require(args, "family", "mean_energy", "omegas")
        value = burst.state_family_imax(args.family, u.energy(args.mean_energy), args.omegas)
        return [{"family": args.family, "imax_bits": value}]
    if kind == "theorem2":
        _require(args, "mean_energies", "modes")
        return burst.theorem2_check([u.energy(e) for e in args.mean_energies], args.modes)
    raise UsageError(f"unknown burst kind {kind!r}")


# ---------------------------------------------------------------------------
# bound


_BOUND_KINDS = ("linear", "simple", "blurred", "heuristics", "boost")


def _optional_spectrum(args: argparse.Namespace) -> ModeSpectrum | None:
    return load_spectrum(args.spectrum) if args.spectrum is not None else None


def _run_bound(args: argparse.Namespace) -> list[dict[str, Any]]:
    u = _Units(args.units)
    kind = args.kind
    energy = u.energy(args.energy) if args.energy is not None else 1.0
    if kind == "linear":
        return [burst.linear_bound_mu(_optional_spectrum(args))]
    if kind == "simple":
        _require(args, "channels")
        return [burst.multichannel_bounds("simple", _optional_spectrum(args), channels=args.channels,
                                          energy=energy)]
    if kind == "blurred":
        _require(args, "filling")
        return [burst.multichannel_bounds("blurred", _optional_spectrum(args), filling=args.filling,
                                          energy=energy)]
    if kind == "heuristics":
        _require(args, "energy", "duration", "eps", "deps")
        return [capacity.linear_bound_heuristics(energy, args.duration, u.energy(args.eps), u.energy(args.deps))]
    if kind == "boost":
        _require(args, "energy", "duration", "velocity")
        e_out, tau_out = capacity.boost_signal(energy, args.duration, args.velocity, args.sound_speed)
        return [{"energy_out": u.energy_out(e_out), "duration_out": tau_out}]
    raise UsageError(f"unknown bound kind {kind!r}")


# ---------------------------------------------------------------------------
# count


_COUNT_KINDS = ("ladder", "peak", "zeta", "overcount", "one-particle", "soliton", "chain",
                "phonon", "line-field", "hadron")


def _run_count(args: argparse.Namespace) -> list[dict[str, Any]]:
    if args.units == "si":
        raise UsageError("count works in the energy units of its spectrum; --units si is not accepted")
    kind = args.kind
    if kind in ("ladder", "peak"):
        spec = _spectrum_from(args)
        ladder = counting.omega_ladder(spec, args.ceiling)
        if kind == "ladder":
            return [{"energy": e, "omega": w, "h_nits": h} for e, w, h in ladder.rows()]
        report = counting.specific_entropy_peak(ladder, spec.length_scale)
        return [report.as_dict()]
    if kind == "zeta":
        if args.cavity is not None and args.spectrum is None and args.depth is None:
            row = _cavity(args.cavity)
            report = counting.deep_spectral_zeta(row.build, row.zeta_start_depth, kappa=args.kappa)
        else:
            report = counting.spectral_zeta_and_bounds(_spectrum_from(args), args.kappa)
        return [{"kappa": report.kappa, "zeta": report.zeta, "partial": report.partial, "tail": report.tail,
                 "tail_fraction": report.tail_fraction, "depth": report.depth, "estimate": report.estimate,
                 "rigorous_bound": report.rigorous_bound}]
    if kind == "overcount":
        _require(args, "energy")
        spec = _spectrum_from(args)
        return [{"energy": args.energy, "method": args.method,
                 "n_overcount": counting.n_overcount(spec, args.energy, args.method)}]
    if kind == "one-particle":
        _require(args, "system")
        return [{"system": args.system, **counting.one_particle_bounds(args.system)}]
    if kind == "soliton":
        row: dict[str, Any] = {"coefficient_bits": counting.soliton_bound_coefficient()}
        if args.energy is not None:
            _require(args, "mass")
            row["imax_bits"] = counting.soliton_imax(args.energy, args.mass)
        return [row]
    if kind == "chain":
        _require(args, "sites", "species", "mass", "spacing")
        return [counting.chain_storage(args.sites, args.species, args.mass, args.spacing)]
    if kind == "phonon":
        _require(args, "energy", "length", "spacing")
        return [counting.phonon_storage(args.energy, args.length, args.spacing, args.sound_speed)]
    if kind == "line-field":
        return [counting.line_field(args.energy, args.length if args.length is not None else 1.0)]
    if kind == "hadron":
        report = counting.hadron_peak(args.emax, args.bin_width, args.threshold)
        return [report.as_dict()]
    raise UsageError(f"unknown count kind {kind!r}")


# ---------------------------------------------------------------------------
# Tables and figure data


def _deviation(value: float | None, reference: float | None) -> float | None:
    if value is None or reference is None:
        return None
    return value / reference - 1.0


def _run_table1(args: argparse.Namespace) -> list[dict[str, Any]]:
    reference = published_values()["table1"]
    keys = args.rows if args.rows else [r.key for r in counting.CAVITY_ROWS]
    rows = []
    for key in keys:
        row = _cavity(key)
        report, _, ladder = counting.cavity_row(key, args.ceiling_factor, with_zeta=not args.no_zeta)
        ref = reference.get(key, {})
        rows.append({
            "field": row.field,
            "cavity": row.cavity,
            "boundary": row.boundary,
            "numeric_h_over_e_max": report.h_over_e_max,
            "estimate_zeta4_quarter": report.zeta4_quarter,
            "rigorous_bound": report.rigorous_bound,
            "geometric_bound_2pi_r": report.geometric_bound,
            "published_numeric": ref.get("numeric"),
            "published_estimate": ref.get("estimate"),
            "numeric_rel_dev": _deviation(report.h_over_e_max, ref.get("numeric")),
            "estimate_rel_dev": _deviation(report.zeta4_quarter, ref.get("estimate")),
            "ladder_jumps": len(ladder),
        })
    return rows


def _self_heralding_or_blank(xi: float) -> float | None:
    # A self-heralding signal holds at least one quantum of energy 2 pi / tau,
    # so its curve starts at xi = 2 pi; below (and just above) it stays blank.
    try:
        return burst.cif_solve(xi, burst.Heralding.SELF_HERALDING).imax_bits
    except ValueError:
        if xi > 2 * math.pi * 1.01:
            raise
        return None


def _run_fig1(args: argparse.Namespace) -> list[dict[str, Any]]:
    rows = []
    for xi in np.logspace(-1, 5, args.points):
        xi = float(xi)
        rows.append({
            "xi": xi,
            "imax_heralded_bits": burst.cif_solve(xi, burst.Heralding.HERALDED).imax_bits,
            "imax_self_bits": _self_heralding_or_blank(xi),
            "continuum_bits": burst.continuum_cif(xi),
        })
    return rows


def _run_fig2(args: argparse.Namespace) -> list[dict[str, Any]]:
    grid = [float(v) for v in np.logspace(math.log10(args.imin), math.log10(args.imax), args.points)]
    heralded = burst.energy_cost_curve(burst.Heralding.HERALDED, grid)
    self_h = burst.energy_cost_curve(burst.Heralding.SELF_HERALDING, grid)
    return [{"imax_bits": i, "cost_heralded": ch, "cost_self": cs}
            for i, (_, ch), (_, cs) in zip(grid, heralded, self_h)]


def _run_fig3(args: argparse.Namespace) -> list[dict[str, Any]]:
    row = _cavity("box_1_095_09_neumann")
    probe = row.build(40.0)
    ceiling = args.ceiling_factor * probe.lowest
    ladder = counting.omega_ladder(row.build(ceiling), ceiling)
    return [{"energy": e, "omega": w, "h_over_e": h / e} for e, w, h in ladder.rows() if e > 0]


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infobounds", description="Quantum limits on information storage and transmission.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("capacity", help="steady-state channel capacities")
    p.add_argument("kind", choices=_CAPACITY_KINDS)
    p.add_argument("--power", type=float)
    p.add_argument("--temperature", type=float)
    p.add_argument("--noise", type=float)
    p.add_argument("--delta-omega", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--power-per-band", type=float, help="signal power per unit angular frequency")
    p.add_argument("--acceleration", type=float)
    p.add_argument("--statistics", choices=("bose", "fermi"), default="bose")
    p.add_argument("--model", choices=("shannon", "pendry", "lebedev_levitin"))
    p.add_argument("--rate", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--n-bar", type=float)
    _common(p)

    p = sub.add_parser("burst", help="finite-duration signals")
    p.add_argument("kind", choices=_BURST_KINDS)
    p.add_argument("--xi", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--energy", type=float)
    p.add_argument("--duration", type=float)
    p.add_argument("--heralding", choices=("heralded", "self"), default="heralded")
    p.add_argument("--imax", type=_float_list, help="comma-separated information levels in bits")
    p.add_argument("--family", choices=("occupation", "coherent"))
    p.add_argument("--mean-energy", type=float)
    p.add_argument("--omegas", type=_float_list)
    p.add_argument("--mean-energies", type=_float_list)
    p.add_argument("--modes", type=_int_list)
    _common(p)

    p = sub.add_parser("bound", help="linear information bounds")
    p.add_argument("kind", choices=_BOUND_KINDS)
    p.add_argument("--spectrum", type=Path)
    p.add_argument("--channels", type=int)
    p.add_argument("--filling", type=float)
    p.add_argument("--energy", type=float)
    p.add_argument("--duration", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--deps", type=float)
    p.add_argument("--velocity", type=float)
    p.add_argument("--sound-speed", type=float, default=1.0)
    _common(p)

    p = sub.add_parser("count", help="microcanonical counting and storage")
    p.add_argument("kind", choices=_COUNT_KINDS)
    p.add_argument("--spectrum", type=Path)
    p.add_argument("--cavity", choices=[r.key for r in counting.CAVITY_ROWS])
    p.add_argument("--depth", type=float, help="build the cavity spectrum up to this energy")
    p.add_argument("--ceiling", type=float)
    p.add_argument("--kappa", type=float, default=4.0)
    p.add_argument("--energy", type=float)
    p.add_argument("--method", choices=("closed_form_uniform", "integral_equation"),
                   default="integral_equation")
    p.add_argument("--system", choices=("well", "rotator", "oscillator"))
    p.add_argument("--mass", type=float)
    p.add_argument("--sites", type=int)
    p.add_argument("--species", type=int)
    p.add_argument("--spacing", type=float)
    p.add_argument("--length", type=float)
    p.add_argument("--sound-speed", type=float, default=1.0)
    p.add_argument("--emax", type=float, default=1400.0)
    p.add_argument("--bin-width", type=float, default=10.0)
    p.add_argument("--threshold", type=float, default=counting.PION_MASS_MEV)
    _common(p)

    p = sub.add_parser("table1", help="peak specific entropy of the reference cavities")
    p.add_argument("--rows", type=lambda s: [k.strip() for k in s.split(",") if k.strip()],
                   help="comma-separated subset of cavity keys")
    p.add_argument("--ceiling-factor", type=float, default=counting.DEFAULT_CEILING_FACTOR)
    p.add_argument("--no-zeta", action="store_true", help="skip the zeta estimate and bound")
    _common(p)

    p = sub.add_parser("fig1", help="information function curves")
    p.add_argument("--points", type=int, default=61)
    _common(p)

    p = sub.add_parser("fig2", help="energy cost per bit curves")
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--imin", type=float, default=0.1)
    p.add_argument("--imax", type=float, default=30.0)
    _common(p)

    p = sub.add_parser("fig3", help="ln Omega / E for the Neumann box")
    p.add_argument("--ceiling-factor", type=float, default=counting.DEFAULT_CEILING_FACTOR)
    _common(p)
    return parser


_HANDLERS = {
    "capacity": _run_capacity,
    "burst": _run_burst,
    "bound": _run_bound,
    "count": _run_count,
    "table1": _run_table1,
    "fig1": _run_fig1,
    "fig2": _run_fig2,
    "fig3": _run_fig3,
}


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message, "exit_code": code}) + "\n")
    return code


def _validate(args: argparse.Namespace) -> None:
    if args.command == "table1" and args.rows:
        known = {r.key for r in counting.CAVITY_ROWS}
        unknown = [k for k in args.rows if k not in known]
        if unknown:
            raise UsageError(f"unknown cavity rows: {', '.join(unknown)}")
    if args.command in ("fig1", "fig2") and args.points < 2:
        raise UsageError("--points must be at least 2")


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the subcommand and write its output; return the exit code."""
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        rows = _HANDLERS[args.command](args)
    except UsageError as exc:
        return _fail("usage", str(exc), 2)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ValueError, ArithmeticError, RuntimeError, KeyError, OSError,
            SpectrumFormatError, AssertionError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    text = _render(rows, args.output)
    if args.out is not None:
        try:
            args.out.write_text(text, encoding="utf-8")
        except OSError as exc:
            return _fail(type(exc).__name__, str(exc), 1)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
            return 1
    return 0


def main(argv: Iterable[str] | None = None) -> None:
    sys.exit(run(list(argv) if argv is not None else None))
