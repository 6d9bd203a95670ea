"""Command-line front end: unit conversion, sweeps, and machine-readable output.

The math kernel works in reduced units only; this module owns the physical
constants and converts kelvin/meter/kilogram inputs into them.  Subcommands:

- ``exchange``: sweep the exchange function over a separation range
- ``spectrum``: partial-transpose spectrum and PPT verdict at one point
- ``decompose``: separable-decomposition weights and reconstruction error
- ``verify-paper``: run the built-in verification suite

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error
(for example a phase-space density in the condensed regime).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import separability, spinstate, statmech

# CODATA values, 10 significant digits
HBAR_JS = 1.054571817e-34  # reduced Planck constant [J s]
KB_J_PER_K = 1.380649e-23  # Boltzmann constant [J/K]
C_M_PER_S = 2.99792458e8  # speed of light [m/s]
H_JS = 6.62607015e-34  # Planck constant [J s]
AMU_KG = 1.66053906660e-27  # atomic mass unit [kg]

JSON_SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2  # argparse's own code for bad flags
EXIT_DOMAIN = 3

_SYSTEMS = {
    "photon": (2, spinstate.Statistics.BOSON),
    "massive": (3, spinstate.Statistics.BOSON),
    "fermion-T0": (2, spinstate.Statistics.FERMION),
}


class UsageError(Exception):
    """Flag combination errors detected after argparse (still exit code 2)."""


def photon_reduced_separation(separation_m: float, temperature_k: float) -> float:
    """u = r * k_B * T / (hbar * c)."""
    _require_positive(temperature_k, "temperature")
    if not separation_m >= 0.0:
        raise ValueError(f"separation must be >= 0, got {separation_m}")
    return separation_m * KB_J_PER_K * temperature_k / (HBAR_JS * C_M_PER_S)


def thermal_wavelength_m(mass_kg: float, temperature_k: float) -> float:
    """Thermal de Broglie wavelength lambda = h / sqrt(2 pi m k_B T)."""
    _require_positive(mass_kg, "mass")
    _require_positive(temperature_k, "temperature")
    return H_JS / math.sqrt(2.0 * math.pi * mass_kg * KB_J_PER_K * temperature_k)


def massive_phase_space_degeneracy(
    density_m3: float, mass_kg: float, temperature_k: float
) -> float:
    """Per-spin-state phase-space density d = n * lambda^3 / 3."""
    _require_positive(density_m3, "number density")
    lam = thermal_wavelength_m(mass_kg, temperature_k)
    return density_m3 * lam**3 / 3.0


def _require_positive(value: float, name: str) -> None:
    if value is None or not value > 0.0:
        raise ValueError(f"{name} must be > 0, got {value}")


def _parse_range(text: str) -> tuple[float, float, int]:
    try:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"range must look like a:b:n, got {text!r}"
        ) from None
    if count < 2:
        raise argparse.ArgumentTypeError(f"range needs at least 2 points, got {count}")
    if not start >= 0.0:
        raise argparse.ArgumentTypeError(f"range start must be >= 0, got {start}")
    if not start < stop:
        raise argparse.ArgumentTypeError(
            f"range start must be below stop, got {start}:{stop}"
        )
    return start, stop, count


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _resolve_massive_fugacity(args) -> float:
    if args.fugacity is not None:
        if not 0.0 < args.fugacity <= 1.0:
            raise ValueError(f"fugacity must lie in (0, 1], got {args.fugacity}")
        return args.fugacity
    if args.degeneracy is not None:
        return statmech.fugacity_from_degeneracy(args.degeneracy)
    if (
        args.temperature_k is not None
        and args.mass_amu is not None
        and args.density_m3 is not None
    ):
        d = massive_phase_space_degeneracy(
            args.density_m3, args.mass_amu * AMU_KG, args.temperature_k
        )
        return statmech.fugacity_from_degeneracy(d)
    raise UsageError(
        "massive system needs --fugacity, --degeneracy, or all of "
        "--temperature-k/--mass-amu/--density-m3"
    )


def _si_scale(args) -> float | None:
    """Meters per unit of reduced separation, when the units are pinned down."""
    if args.system == "photon" and args.temperature_k is not None:
        return HBAR_JS * C_M_PER_S / (KB_J_PER_K * args.temperature_k)
    if (
        args.system == "massive"
        and args.temperature_k is not None
        and args.mass_amu is not None
    ):
        return thermal_wavelength_m(args.mass_amu * AMU_KG, args.temperature_k)
    return None


def cmd_exchange(args) -> int:
    start, stop, count = args.range
    separations = np.linspace(start, stop, count)
    fugacity = None
    if args.system == "photon":
        values = [statmech.photon_exchange(u) for u in separations]
    elif args.system == "massive":
        fugacity = _resolve_massive_fugacity(args)
        values = [statmech.massive_exchange(s, fugacity) for s in separations]
    else:  # fermion-T0
        values = [statmech.fermi_exchange_T0(x) for x in separations]
    scale = _si_scale(args)
    rows = [
        [float(sep), None if scale is None else float(sep * scale), float(f)]
        for sep, f in zip(separations, values)
    ]
    if args.format == "csv":
        text = _csv_text(["sep_reduced", "sep_si", "f"], rows)
    else:
        text = _json_text(
            {
                "schema": JSON_SCHEMA_VERSION,
                "system": args.system,
                "fugacity": fugacity,
                "rows": [
                    {"sep_reduced": r[0], "sep_si": r[1], "f": r[2]} for r in rows
                ],
            }
        )
    _emit(text, args.out)
    return EXIT_OK


def _resolve_spectrum_state(args) -> spinstate.TwoSpinDensityMatrix:
    if args.system == "abstract-f":
        if args.alpha is None or args.statistics is None:
            raise UsageError("abstract-f needs --alpha and --statistics")
        alpha, statistics = args.alpha, spinstate.Statistics[args.statistics.upper()]
    else:
        alpha, statistics = _SYSTEMS[args.system]

    if args.f is not None:
        f = args.f
    elif args.system == "abstract-f":
        raise UsageError("abstract-f needs an explicit --f")
    elif args.sep_reduced is not None:
        if args.system == "photon":
            f = statmech.photon_exchange(args.sep_reduced)
        elif args.system == "massive":
            f = statmech.massive_exchange(
                args.sep_reduced, _resolve_massive_fugacity(args)
            )
        else:
            f = statmech.fermi_exchange_T0(args.sep_reduced)
    elif args.separation_m is not None:
        if args.system == "photon":
            if args.temperature_k is None:
                raise UsageError("--separation-m for photons needs --temperature-k")
            u = photon_reduced_separation(args.separation_m, args.temperature_k)
            f = statmech.photon_exchange(u)
        elif args.system == "massive":
            if args.temperature_k is None or args.mass_amu is None:
                raise UsageError(
                    "--separation-m for massive bosons needs --temperature-k "
                    "and --mass-amu"
                )
            lam = thermal_wavelength_m(args.mass_amu * AMU_KG, args.temperature_k)
            f = statmech.massive_exchange(
                args.separation_m / lam, _resolve_massive_fugacity(args)
            )
        else:
            raise UsageError(
                "fermion-T0 takes --f or --sep-reduced (= k_F * r), not "
                "--separation-m"
            )
    else:
        raise UsageError("spectrum needs --f, --sep-reduced, or --separation-m")
    return spinstate.two_spin_density(f, alpha, statistics)


def cmd_spectrum(args) -> int:
    state = _resolve_spectrum_state(args)
    report = separability.ppt_report(state)
    payload = {
        "schema": JSON_SCHEMA_VERSION,
        "alpha": state.alpha,
        "statistics": state.statistics.name.lower(),
        "f": state.f,
        "spectrum": [float(v) for v in report.spectrum],
        "min_eigenvalue": report.min_eigenvalue,
        "negativity": report.negativity,
        "is_ppt": report.is_ppt,
    }
    if args.format == "csv":
        header = [
            "alpha",
            "statistics",
            "f",
            "min_eigenvalue",
            "negativity",
            "is_ppt",
        ] + [f"eig{i}" for i in range(len(report.spectrum))]
        row = [
            state.alpha,
            state.statistics.name.lower(),
            float(state.f),
            report.min_eigenvalue,
            report.negativity,
            report.is_ppt,
        ] + [float(v) for v in report.spectrum]
        text = _csv_text(header, [row])
    else:
        text = _json_text(payload)
    _emit(text, args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    decomposition = separability.qutrit_decomposition(args.f)
    error = separability.verify_decomposition(args.f)
    if args.format == "csv":
        text = _csv_text(
            ["f", "weight_rho0", "weight_sigma0", "weight_sigma1", "reconstruction_error"],
            [[float(args.f), *map(float, decomposition.weights), float(error)]],
        )
    else:
        text = _json_text(
            {
                "schema": JSON_SCHEMA_VERSION,
                "f": args.f,
                "weight_rho0": decomposition.weight_rho0,
                "weight_sigma0": decomposition.weight_sigma0,
                "weight_sigma1": decomposition.weight_sigma1,
                "reconstruction_error": error,
            }
        )
    _emit(text, args.out)
    return EXIT_OK


def _faulted_state(f: float, alpha: int) -> spinstate.TwoSpinDensityMatrix:
    # harness-sanity mode: flip the sign of the f^2 exchange term, which
    # imprints the fermion negativity pattern on a nominally bosonic state
    flipped = np.eye(alpha * alpha) - f * f * spinstate._swap_operator(alpha)
    flipped /= alpha * alpha - alpha * f * f
    return spinstate.TwoSpinDensityMatrix(
        alpha=alpha, statistics=spinstate.Statistics.BOSON, f=f, entries=flipped
    )


def _boson_state(f: float, alpha: int, fault: bool) -> spinstate.TwoSpinDensityMatrix:
    if fault:
        return _faulted_state(f, alpha)
    return spinstate.two_spin_density(f, alpha, spinstate.Statistics.BOSON)


def _check_pt_analytic(fgrid, alpha: int, fault: bool) -> tuple[bool, str]:
    max_dev = 0.0
    max_negativity = 0.0
    min_of_minima = math.inf
    for f in fgrid:
        report = separability.ppt_report(_boson_state(f, alpha, fault))
        if alpha == 2:
            analytic = separability.qubit_pt_min_eig_analytic(
                f, spinstate.Statistics.BOSON
            )
        else:
            analytic = separability.qutrit_pt_min_eig_analytic(f)
        max_dev = max(max_dev, abs(report.min_eigenvalue - analytic))
        max_negativity = max(max_negativity, report.negativity)
        min_of_minima = min(min_of_minima, report.min_eigenvalue)
    ok = max_dev <= 1e-12 and min_of_minima > 0.0
    detail = f"max |numeric - analytic| = {max_dev:.2e}"
    if max_negativity > separability.PPT_TOLERANCE:
        detail += (
            f"; exchange-sign fault pattern detected (negativity up to "
            f"{max_negativity:.3e})"
        )
    return ok, detail


def _check_decomposition(fgrid) -> tuple[bool, str]:
    max_recon = 0.0
    max_weight_sum_dev = 0.0
    min_weight = math.inf
    for f in fgrid:
        decomposition = separability.qutrit_decomposition(f)
        min_weight = min(min_weight, *decomposition.weights)
        max_weight_sum_dev = max(
            max_weight_sum_dev, abs(sum(decomposition.weights) - 1.0)
        )
        max_recon = max(max_recon, separability.verify_decomposition(f))
    ok = min_weight >= 0.0 and max_weight_sum_dev <= 1e-14 and max_recon <= 1e-13
    return ok, (
        f"max reconstruction error = {max_recon:.2e}, "
        f"max |sum(weights) - 1| = {max_weight_sum_dev:.2e}"
    )


def _check_roots_of_unity() -> tuple[bool, str]:
    closed = separability.rho0_closed_form()
    exact_devs = {
        n: float(np.abs(separability.rho0_from_roots_of_unity(n) - closed).max())
        for n in (7, 8, 13, 100)
    }
    aliased_dev = float(
        np.abs(separability.rho0_from_roots_of_unity(6) - closed).max()
    )
    ok = max(exact_devs.values()) <= 1e-14 and aliased_dev > 0.05
    return ok, (
        f"max dev over n in (7,8,13,100) = {max(exact_devs.values()):.2e}; "
        f"n=6 aliasing dev = {aliased_dev:.3f}"
    )


def _check_photon_quadrature() -> tuple[bool, str]:
    grid = np.logspace(-3, math.log10(50.0), 50)
    max_dev = max(
        abs(statmech.photon_exchange(u) - statmech.photon_exchange_quadrature(u))
        for u in grid
    )
    return max_dev <= 1e-8, f"max |series - quadrature| = {max_dev:.2e}"


def _check_classical_limit() -> tuple[bool, str]:
    grid = np.linspace(0.0, 3.0, 31)
    max_dev = max(
        abs(statmech.massive_exchange(s, 1e-8) - math.exp(-math.pi * s * s))
        for s in grid
    )
    return max_dev <= 1e-7, f"max |f(s, z=1e-8) - exp(-pi s^2)| = {max_dev:.2e}"


def _check_fermion_threshold() -> tuple[bool, str]:
    def min_eig(f: float) -> float:
        state = spinstate.two_spin_density(f, 2, spinstate.Statistics.FERMION)
        return separability.ppt_report(state).min_eigenvalue

    lo, hi = 0.5, 0.9  # min_eig(lo) > 0 > min_eig(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if min_eig(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    threshold = 0.5 * (lo + hi)
    threshold_dev = abs(threshold - 1.0 / math.sqrt(2.0))
    negativity = separability.ppt_report(
        spinstate.two_spin_density(1.0, 2, spinstate.Statistics.FERMION)
    ).negativity
    negativity_dev = abs(negativity - 0.5)
    ok = threshold_dev <= 1e-8 and negativity_dev <= 1e-12
    return ok, (
        f"|threshold - 1/sqrt(2)| = {threshold_dev:.2e}, "
        f"|negativity(f=1) - 1/2| = {negativity_dev:.2e}"
    )


def _check_fugacity_round_trip() -> tuple[bool, str]:
    degeneracies = np.linspace(0.0, statmech.ZETA_3_2, 101)[1:]
    max_res = max(
        abs(statmech.polylog_3_2(statmech.fugacity_from_degeneracy(d)) - d)
        for d in degeneracies
    )
    try:
        statmech.fugacity_from_degeneracy(statmech.ZETA_3_2 * 1.000001)
    except statmech.CondensationError:
        condensation_refused = True
    else:
        condensation_refused = False
    ok = max_res <= 1e-9 and condensation_refused
    return ok, (
        f"max |Li_3/2(z(d)) - d| = {max_res:.2e}; condensed regime refused: "
        f"{condensation_refused}"
    )


def _run_verification(grid_points: int, fault: bool) -> list[tuple[str, bool, str]]:
    fgrid = np.linspace(0.0, 1.0, grid_points)
    return [
        ("qubit-pt-analytic", *_check_pt_analytic(fgrid, 2, fault)),
        ("qutrit-pt-analytic", *_check_pt_analytic(fgrid, 3, fault)),
        ("qutrit-decomposition", *_check_decomposition(fgrid)),
        ("rho0-roots-of-unity", *_check_roots_of_unity()),
        ("photon-series-vs-quadrature", *_check_photon_quadrature()),
        ("massive-classical-limit", *_check_classical_limit()),
        ("fermion-negativity-threshold", *_check_fermion_threshold()),
        ("fugacity-round-trip", *_check_fugacity_round_trip()),
    ]


def cmd_verify_paper(args) -> int:
    checks = _run_verification(args.grid, args.inject_sign_fault)
    width = max(len(name) for name, _, _ in checks)
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        print(f"{name:<{width}}  {status}  {detail}")
    failures = [name for name, ok, _ in checks if not ok]
    if failures:
        print(f"verification failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thermospin",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=(
            "physical constants (CODATA, 10 digits):\n"
            f"  hbar = {HBAR_JS} J s\n"
            f"  k_B  = {KB_J_PER_K} J/K\n"
            f"  c    = {C_M_PER_S} m/s\n"
            f"  h    = {H_JS} J s\n"
            f"  amu  = {AMU_KG} kg\n"
            "reductions: u = r k_B T/(hbar c); lambda = h/sqrt(2 pi m k_B T); "
            "s = r/lambda; d = n lambda^3/3"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, systems):
        sp.add_argument("--system", required=True, choices=systems)
        sp.add_argument("--temperature-k", type=float, help="temperature [K]")
        sp.add_argument("--mass-amu", type=float, help="particle mass [amu]")
        sp.add_argument("--density-m3", type=float, help="number density [1/m^3]")
        sp.add_argument(
            "--fugacity", type=float, help="fugacity z in (0, 1] (massive gas)"
        )
        sp.add_argument(
            "--degeneracy",
            type=float,
            help="phase-space density n lambda^3/alpha (massive gas)",
        )
        sp.add_argument("--format", choices=("csv", "json"), default="json")
        sp.add_argument("--out", help="output path (default: stdout)")

    p_exchange = sub.add_parser(
        "exchange", help="sweep the exchange function over reduced separations"
    )
    add_common(p_exchange, ("photon", "massive", "fermion-T0"))
    p_exchange.add_argument(
        "--range",
        required=True,
        type=_parse_range,
        metavar="a:b:n",
        help="reduced-separation sweep: start, stop, point count",
    )
    p_exchange.set_defaults(func=cmd_exchange)

    p_spectrum = sub.add_parser(
        "spectrum", help="partial-transpose spectrum and PPT verdict"
    )
    add_common(
        p_spectrum, ("photon", "massive", "fermion-T0", "abstract-f")
    )
    p_spectrum.add_argument("--f", type=float, help="exchange value, |f| <= 1")
    p_spectrum.add_argument(
        "--sep-reduced", type=float, help="reduced separation (u, s, or k_F r)"
    )
    p_spectrum.add_argument("--separation-m", type=float, help="separation [m]")
    p_spectrum.add_argument("--alpha", type=int, choices=(2, 3))
    p_spectrum.add_argument("--statistics", choices=("boson", "fermion"))
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_decompose = sub.add_parser(
        "decompose",
        help="separable-decomposition weights and reconstruction error",
    )
    p_decompose.add_argument("--f", type=float, required=True)
    p_decompose.add_argument("--format", choices=("csv", "json"), default="json")
    p_decompose.add_argument("--out", help="output path (default: stdout)")
    p_decompose.set_defaults(func=cmd_decompose)

    p_verify = sub.add_parser(
        "verify-paper", help="run the built-in verification suite"
    )
    p_verify.add_argument(
        "--grid", type=int, default=101, help="f-grid size for the eigenvalue checks"
    )
    p_verify.add_argument(
        "--inject-sign-fault", action="store_true", help=argparse.SUPPRESS
    )
    p_verify.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, statmech.QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
