"""Command-line interface.

Subcommands: force, periodic, sweep, optimize, surface. Lengths are
taken in meters, angles in degrees at this boundary (radians are used
everywhere inside). Exit codes: 0 success, 2 invalid input, 3 numerical
failure. All outputs embed the full input parameter set so any file can
be reproduced bit-for-bit from its own metadata.
"""

from __future__ import annotations

import argparse
import math
import sys

from .constants import C_CODATA, HBAR_CODATA, PhysicalConstants
from .errors import CavityModelError, ValidationError
from .geometry import CavityGeometry
from .optimize import DEFAULT_BOX, maximize_q, q_surface
from .periodic import (ASYMPTOTIC, PeriodicStructure, asymptotic_effectiveness,
                       total_force)
from .quadrature import QuadratureSettings
from .sweeps import SweepSpec, run_sweep
from .wing_force import wing_force

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

# Documented sign-convention note attached to optimization reports: the
# closed-form angular integral is implemented as the antiderivative
# difference of the angular integrand (so it equals +1 times the
# integral), while the pressure uses its negation; reported curve and
# surface levels are therefore quoted as absolute values, and optima are
# located on the effectiveness as computed.
SIGN_CONVENTION_NOTE = (
    "angular integral implemented as the antiderivative difference "
    "(positive sign); pressure uses its negation; curve levels are "
    "reported as absolute values")


def _fmt(value) -> str:
    """Serialize one value; floats get >= 17 significant digits."""
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return str(value)


def _json_object(pairs) -> str:
    """Flat snake_case JSON object with full-precision numbers."""
    items = []
    for key, value in pairs:
        if isinstance(value, str):
            items.append(f'"{key}": "{value}"')
        else:
            items.append(f'"{key}": {_fmt(value)}')
    return "{" + ", ".join(items) + "}"


def _text_report(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {_fmt(v)}" for k, v in pairs)


def _emit(pairs, args) -> None:
    text = _json_object(pairs) if args.format == "json" else _text_report(pairs)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _add_shared(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=float, required=True,
                        help="wing-end separation a in meters, e.g. 4e-9")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--r", type=float, help="wing length R in meters")
    group.add_argument("--r-over-a", type=float, default=2.5,
                       help="wing length as a multiple of a (default 2.5)")
    parser.add_argument("--l", type=float, default=1.0,
                        help="cavity width L in meters (default 1)")
    parser.add_argument("--rel-tol", type=float, default=1e-9,
                        help="quadrature relative tolerance")
    parser.add_argument("--abs-tol", type=float, default=0.0,
                        help="quadrature absolute tolerance in N")
    parser.add_argument("--max-subdivisions", type=int, default=2000)
    parser.add_argument("--hbar", type=float, default=HBAR_CODATA,
                        help="reduced Planck constant in J s")
    parser.add_argument("--c", type=float, default=C_CODATA,
                        help="speed of light in m/s")
    parser.add_argument("--out", type=str, default=None,
                        help="output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "text"), default="json")


def _r_of(args) -> float:
    return args.r if args.r is not None else args.r_over_a * args.a


def _constants(args) -> PhysicalConstants:
    return PhysicalConstants(hbar=args.hbar, c=args.c)


def _settings(args) -> QuadratureSettings:
    return QuadratureSettings(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                              max_subdivisions=args.max_subdivisions)


def _parse_n(raw: str):
    if raw.lower() in ("inf", "infinity", "asymptotic"):
        return ASYMPTOTIC
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"n must be a positive integer or 'inf' (got {raw!r})")


def _shared_pairs(args):
    return [("a", args.a), ("r", _r_of(args)), ("l", args.l),
            ("phi_deg", args.phi_deg), ("rel_tol", args.rel_tol),
            ("abs_tol", args.abs_tol), ("hbar", args.hbar), ("c", args.c)]


def cmd_force(args) -> int:
    geom = CavityGeometry(a=args.a, R=_r_of(args), L=args.l,
                          phi=math.radians(args.phi_deg))
    result = wing_force(geom, _constants(args), _settings(args))
    _emit(_shared_pairs(args) + [
        ("force", result.force),
        ("abs_error_estimate", result.abs_error_estimate),
        ("evaluations", result.evaluations)], args)
    return EXIT_OK


def cmd_periodic(args) -> int:
    n = _parse_n(args.n)
    geom = CavityGeometry(a=args.a, R=_r_of(args), L=args.l,
                          phi=math.radians(args.phi_deg))
    structure = PeriodicStructure(geometry=geom, d=args.d_over_a * args.a, n=n)
    pairs = _shared_pairs(args) + [("d_over_a", args.d_over_a),
                                   ("n", "inf" if n == ASYMPTOTIC else int(n))]
    if n == ASYMPTOTIC:
        q = asymptotic_effectiveness(structure, _constants(args), _settings(args))
        pairs.append(("effectiveness", q))
    else:
        result = total_force(structure, _constants(args), _settings(args))
        pairs += [("total_force", result.total_force),
                  ("effectiveness", result.effectiveness),
                  ("per_cavity_force", result.per_cavity_force),
                  ("gap_force", result.gap_force)]
    _emit(pairs, args)
    return EXIT_OK


def _write_csv(path, metadata, header, rows, incomplete: bool) -> None:
    lines = [f"# {key} = {_fmt(value)}" for key, value in metadata]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    if incomplete:
        lines.append("# INCOMPLETE")
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    n = _parse_n(args.n)
    variable = {"d-over-a": "d_over_a", "phi-deg": "phi", "r": "R"}[args.variable]
    observable = args.observable.replace("-", "_")
    start, stop = args.min, args.max
    if variable == "phi":
        start, stop = math.radians(start), math.radians(stop)
    spec = SweepSpec(variable=variable, start=start, stop=stop,
                     steps=args.steps, observable=observable,
                     a=args.a, R_over_a=_r_of(args) / args.a, L=args.l,
                     phi=math.radians(args.phi_deg), d_over_a=args.d_over_a,
                     n=n, settings=_settings(args))
    points = run_sweep(spec, _constants(args))

    column = {"d_over_a": "d_over_a", "phi": "phi_deg", "R": "r"}[variable]
    metadata = [("command", "sweep"), ("variable", args.variable),
                ("observable", args.observable),
                ("min", args.min), ("max", args.max), ("steps", args.steps),
                ("n", "inf" if n == ASYMPTOTIC else int(n)),
                ("d_over_a", args.d_over_a)] + _shared_pairs(args)
    rows, incomplete = [], False
    for point in points:
        value = math.degrees(point.value) if variable == "phi" else point.value
        if point.error is None:
            rows.append((value, point.observable))
        else:
            incomplete = True
    _write_csv(args.out, metadata, (column, observable), rows, incomplete)
    return EXIT_NUMERICAL if incomplete else EXIT_OK


def _box_from(args):
    return ((math.radians(args.phi_min_deg), math.radians(args.phi_max_deg)),
            (args.doa_min, args.doa_max))


def cmd_optimize(args) -> int:
    n = _parse_n(args.n)
    result = maximize_q(a=args.a, R_over_a=_r_of(args) / args.a, n=n,
                        box=_box_from(args), constants=_constants(args),
                        settings=_settings(args),
                        grid_resolution=(args.n_phi, args.n_doa), L=args.l)
    pairs = [("a", args.a), ("r", _r_of(args)), ("l", args.l),
             ("n", "inf" if n == ASYMPTOTIC else int(n)),
             ("phi_min_deg", args.phi_min_deg),
             ("phi_max_deg", args.phi_max_deg),
             ("doa_min", args.doa_min), ("doa_max", args.doa_max),
             ("rel_tol", args.rel_tol), ("abs_tol", args.abs_tol),
             ("hbar", args.hbar), ("c", args.c),
             ("phi_star_deg", math.degrees(result.phi_star)),
             ("d_over_a_star", result.d_over_a_star),
             ("q_star", result.q_star),
             ("grid_n_phi", result.grid_resolution[0]),
             ("grid_n_doa", result.grid_resolution[1]),
             ("refinement_iterations", result.refinement_iterations),
             ("trace_length", len(result.trace)),
             ("boundary_warning", result.boundary_warning),
             ("sign_convention_note", SIGN_CONVENTION_NOTE)]
    _emit(pairs, args)
    return EXIT_OK


def cmd_surface(args) -> int:
    n = _parse_n(args.n)
    surface = q_surface(a=args.a, R_over_a=_r_of(args) / args.a, n=n,
                        box=_box_from(args),
                        resolution=(args.n_phi, args.n_doa),
                        constants=_constants(args), settings=_settings(args),
                        L=args.l)
    metadata = [("command", "surface"),
                ("n", "inf" if n == ASYMPTOTIC else int(n)),
                ("a", args.a), ("r", _r_of(args)), ("l", args.l),
                ("rel_tol", args.rel_tol), ("abs_tol", args.abs_tol),
                ("hbar", args.hbar), ("c", args.c),
                ("phi_min_deg", args.phi_min_deg),
                ("phi_max_deg", args.phi_max_deg),
                ("doa_min", args.doa_min), ("doa_max", args.doa_max),
                ("n_phi", args.n_phi), ("n_doa", args.n_doa),
                ("phi_deg_axis", " ".join(
                    _fmt(math.degrees(v)) for v in surface.phi_values)),
                ("d_over_a_axis", " ".join(
                    _fmt(float(v)) for v in surface.d_over_a_values))]
    rows = []
    for i, phi in enumerate(surface.phi_values):
        for j, doa in enumerate(surface.d_over_a_values):
            value = surface.q[i, j]
            if math.isfinite(value):
                rows.append((math.degrees(float(phi)), float(doa), float(value)))
    _write_csv(args.out, metadata, ("phi_deg", "d_over_a", "effectiveness"),
               rows, incomplete=bool(surface.errors))
    return EXIT_NUMERICAL if surface.errors else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-expulsion",
        description="Expulsion forces of open trapezoid nano-cavities and "
                    "their periodic structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_force = sub.add_parser("force", help="single-cavity expulsion force")
    _add_shared(p_force)
    p_force.add_argument("--phi-deg", type=float, required=True,
                         help="half-opening angle in degrees")
    p_force.set_defaults(func=cmd_force)

    p_periodic = sub.add_parser("periodic",
                                help="periodic-structure force and effectiveness")
    _add_shared(p_periodic)
    p_periodic.add_argument("--phi-deg", type=float, required=True)
    p_periodic.add_argument("--d-over-a", type=float, required=True,
                            help="gap distance as a multiple of a")
    p_periodic.add_argument("--n", type=str, required=True,
                            help="cavity count, or 'inf' for the asymptotic limit")
    p_periodic.set_defaults(func=cmd_periodic)

    p_sweep = sub.add_parser("sweep", help="1-D parameter sweep to CSV")
    _add_shared(p_sweep)
    p_sweep.add_argument("--variable", choices=("d-over-a", "phi-deg", "r"),
                         required=True)
    p_sweep.add_argument("--min", type=float, required=True)
    p_sweep.add_argument("--max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--observable",
                         choices=("abs-total-force", "effectiveness"),
                         required=True)
    p_sweep.add_argument("--phi-deg", type=float, default=5.59,
                         help="fixed angle when not the sweep variable")
    p_sweep.add_argument("--d-over-a", type=float, default=1.58,
                         help="fixed gap ratio when not the sweep variable")
    p_sweep.add_argument("--n", type=str, default="1")
    p_sweep.set_defaults(func=cmd_sweep)

    for name, help_text in (("optimize", "locate the effectiveness maximum"),
                            ("surface", "dense effectiveness grid to CSV")):
        p = sub.add_parser(name, help=help_text)
        _add_shared(p)
        p.add_argument("--n", type=str, required=True)
        p.add_argument("--phi-min-deg", type=float, default=0.01)
        p.add_argument("--phi-max-deg", type=float, default=20.0)
        p.add_argument("--doa-min", type=float, default=1.01)
        p.add_argument("--doa-max", type=float, default=3.0)
        p.add_argument("--n-phi", type=int, default=64)
        p.add_argument("--n-doa", type=int, default=64)
        p.set_defaults(func=cmd_optimize if name == "optimize" else cmd_surface)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CavityModelError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
