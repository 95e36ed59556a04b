#!/usr/bin/env python

"""
Constructs, integrates and verifies surfaces of constant anisotropic mean
curvature for the Dirichlet energy.
"""

__author__ = "camc-kit developers"
__license__ = "MIT"
__version__ = "0.1.0"

import argparse
import math
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from camckit.analysis import (
    Tolerances,
    camc_certificate,
    circular_arc,
    helix,
    oblique_foliation_surface,
    tilted_cyclic_surface,
    tilted_rotational_surface,
)
from camckit.datatypes import FamilyKind, GridSpec, Interval, MeshExport, OdeMode
from camckit.energy import ENERGIES, AxiallySymmetricEnergy, surface_energy_quadrature
from camckit.errors import CamcKitException, DomainError
from camckit.families import (
    CyclicFamilyParams,
    cyclic_surface,
    domain_interval,
    family_profile,
    normalize_by_rotation,
    rotational_solution,
    rotational_surface,
)
from camckit.odes import CyclicOdeState, OdeTrajectory, family_state, integrate
from camckit.surface import ParametricSurface
from camckit.utils.formatter import (  # pylint: disable=unused-import
    Document,
    Table,
    formatter_csv,
    formatter_json,
    formatter_obj,
    formatter_yaml,
)
from camckit.utils.mesh import tessellate
from camckit.utils.presets import expand_preset, load_presets

# List of available/imported formatters.
# Each format is a global variable whose name starts with "formatter_"
# and ends with a suffix indicating the format type.
FORMATS: List[str] = [
    "_".join(symbol.split("_")[1:])
    for symbol in globals()
    if symbol.startswith("formatter_")
]

CYCLIC_FAMILIES = [kind.value for kind in FamilyKind]
ROTATIONAL_FAMILIES = ["rotational", "paraboloid", "log"]
FAMILIES = CYCLIC_FAMILIES + ROTATIONAL_FAMILIES + ["tilted"]

# Fallbacks for options left unset by both the command line and a preset
DEFAULTS: Dict[str, Any] = {
    "family": "type1",
    "lam": 1.0,
    "mu": 0.0,
    "c": 1.0,
    "c1": 0.0,
    "c2": 0.0,
    "ns": 101,
    "ntheta": 64,
    "margin": 0.0,
    "mode": "analytic",
    "fd_step": 1e-4,
    "curve": "arc",
    "radius": None,
    "tilt": 0.0,
    "energy": "dirichlet",
    "tol": 1e-6,
    "mode_tol": None,
    "nu3_floor": None,
    "plane": "y=0",
    "s0": 0.0,
    "shift": 0.0,
    "r0": None,
    "rp0": 0.0,
    "a0": 0.0,
    "b0": 0.0,
    "send": 1.0,
    "step": 1e-3,
    "drift_tol": None,
}

# Preset keys that differ from the argparse destination
PRESET_KEYS = {"lambda": "lam"}


def apply_defaults(args: argparse.Namespace, preset: Optional[Dict[str, Any]]) -> None:
    """Fills options left unset, first from the preset, then from DEFAULTS."""
    for key, value in (preset or {}).items():
        dest = PRESET_KEYS.get(key, key)
        if dest != "name" and getattr(args, dest, None) is None:
            setattr(args, dest, value)
    for dest, value in DEFAULTS.items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)


def family_params(args: argparse.Namespace) -> CyclicFamilyParams:
    """Cyclic family parameters from the options"""
    return CyclicFamilyParams(FamilyKind(args.family), args.lam, args.mu, args.c)


def default_s_range(args: argparse.Namespace) -> Tuple[float, float]:
    """A parameter range on which the chosen surface is well resolved."""
    if args.family in CYCLIC_FAMILIES:
        params = family_params(args)
        interval = domain_interval(params)
        if params.kind is FamilyKind.TYPE_I:
            inner = interval.shrink(0.15)
            return inner.lower, inner.upper
        if params.kind is FamilyKind.TYPE_II:
            return interval.lower + 0.5, interval.lower + 2.0
        return 0.3, 3.0
    if args.family in ROTATIONAL_FAMILIES:
        return 0.5, 2.0
    return -1.0, 1.0


def build_grid(args: argparse.Namespace) -> GridSpec:
    """The sampling grid from --smin/--smax/--ns/--ntheta/--margin"""
    lower, upper = default_s_range(args)
    s_min = lower if args.smin is None else args.smin
    s_max = upper if args.smax is None else args.smax
    return GridSpec(s_min, s_max, args.ns, args.ntheta, margin=args.margin)


def build_surface(args: argparse.Namespace, grid: GridSpec) -> ParametricSurface:
    """The surface named by --family, tilted and switched to FD as asked."""
    surface: ParametricSurface
    if args.family in CYCLIC_FAMILIES:
        params = family_params(args)
        grid.check_within(domain_interval(params))
        surface = (
            oblique_foliation_surface(params, args.tilt) if args.tilt else cyclic_surface(params)
        )
    elif args.family in ROTATIONAL_FAMILIES:
        profile = {
            "rotational": lambda: rotational_solution(args.c1, args.c2, args.lambda0 or 0.0),
            "paraboloid": lambda: rotational_solution(0.0, 0.0, 8.0),
            "log": lambda: rotational_solution(1.0, 0.0, 0.0),
        }[args.family]()
        grid.check_within(Interval(0.0, math.inf))
        surface = (
            tilted_rotational_surface(profile, args.tilt)
            if args.tilt
            else rotational_surface(profile)
        )
    else:
        curve = circular_arc(5.0) if args.curve == "arc" else helix(2.0, 1.0)
        radius = args.radius if args.radius is not None else (0.5 if args.curve == "arc" else 1.0)
        return tilted_cyclic_surface(
            curve, radius, s_range=(grid.s_min, grid.s_max), fd_step=args.fd_step
        )
    if args.mode == "fd":
        surface = surface.with_fd(args.fd_step)
    return surface


def default_lambda0(args: argparse.Namespace) -> float:
    """The declared constant, 8 for the paraboloid and 0 otherwise"""
    if args.lambda0 is not None:
        return float(args.lambda0)
    return 8.0 if args.family == "paraboloid" else 0.0


def cmd_generate(
    surface: ParametricSurface, grid: GridSpec, provenance: Dict[str, Any]
) -> MeshExport:
    """Tessellates the surface on the grid."""
    mesh = tessellate(surface, grid, provenance)
    mesh.check()
    return mesh


def cmd_check(
    surface: ParametricSurface,
    energy: AxiallySymmetricEnergy,
    lambda0: float,
    grid: GridSpec,
    tolerances: Tolerances,
) -> Tuple[Dict[str, Any], int]:
    """Runs the certificate; returns the report and the exit status."""
    report = camc_certificate(surface, energy, grid, lambda0, tolerances)
    return report.as_dict(), 0 if report.passed else 1


def cmd_energy(
    surface: ParametricSurface, energy: AxiallySymmetricEnergy, grid: GridSpec
) -> Dict[str, Any]:
    """Total energy of the surface patch covered by the grid"""
    return {
        "energy_label": energy.label,
        "value": surface_energy_quadrature(surface, energy, grid),
        "grid": grid.as_dict(),
        "surface_descriptor": surface.descriptor,
    }


def cmd_integrate(  # pylint: disable=too-many-arguments
    lam: float,
    mu: float,
    mode: OdeMode,
    initial: CyclicOdeState,
    s_end: float,
    step: float,
    drift_tol: Optional[float] = None,
) -> OdeTrajectory:
    """Integrates the cyclic ODE from initial."""
    return integrate(initial, lam, mu, mode, s_end=s_end, step=step, drift_tol=drift_tol)


def cmd_crosssection(
    params: CyclicFamilyParams, plane: str, s_min: float, s_max: float, count: int, name: str = ""
) -> Table:
    """
    The section of the normalized surface by its symmetry plane y = 0:
    the profiles at theta = 0 and theta = pi and the curve of centres.
    """
    if plane.replace(" ", "") != "y=0":
        raise DomainError(f"Only the symmetry plane y=0 is supported, got {plane!r}")
    normalized, _ = normalize_by_rotation(params)
    rows: List[Tuple[Any, ...]] = []
    prefix = f"{name}:" if name else ""
    heights = [s_min + (s_max - s_min) * k / (count - 1) for k in range(count)]
    profiles = [(s, family_profile(normalized, s)) for s in heights]
    for label, sign in (("theta0", 1.0), ("thetapi", -1.0), ("centers", 0.0)):
        for s, profile in profiles:
            rows.append((prefix + label, s, profile.a + sign * profile.r, s))
    return Table(columns=["polyline", "s", "x", "z"], rows=rows)


def initial_state(args: argparse.Namespace) -> CyclicOdeState:
    """Starting point of an integration, from a family or explicit values"""
    if args.r0 is not None:
        return CyclicOdeState(args.s0, args.r0, args.rp0, args.a0, args.b0)
    if args.family not in CYCLIC_FAMILIES:
        raise DomainError("Give --r0 or a cyclic --family to start the integration")
    return family_state(family_params(args), args.s0, shift=args.shift)


def add_surface_options(parser: argparse.ArgumentParser) -> None:
    """Options selecting a surface and its sampling grid"""
    parser.add_argument("--family", choices=FAMILIES, help="surface to build")
    parser.add_argument("--lambda", dest="lam", type=float, metavar="L", help="lambda")
    parser.add_argument("--mu", type=float, help="mu")
    parser.add_argument("--c", type=float, help="family constant c")
    parser.add_argument("--c1", type=float, help="rotational log coefficient")
    parser.add_argument("--c2", type=float, help="rotational height offset")
    parser.add_argument("--lambda0", type=float, help="declared constant Lambda")
    parser.add_argument("--curve", choices=["arc", "helix"], help="curve of a tilted surface")
    parser.add_argument("--radius", type=float, help="circle radius of a tilted surface")
    parser.add_argument("--tilt", type=float, help="tilt of the foliation planes (radians)")
    parser.add_argument("--mode", choices=["analytic", "fd"], help="jet evaluation mode")
    parser.add_argument("--fd-step", type=float, help="finite difference step")
    parser.add_argument("--smin", type=float, help="lower end of the s range")
    parser.add_argument("--smax", type=float, help="upper end of the s range")
    parser.add_argument("--ns", type=int, help="number of s samples")
    parser.add_argument("--ntheta", type=int, help="number of theta samples")
    parser.add_argument("--margin", type=float, help="inset from open domain ends")


def add_output_options(parser: argparse.ArgumentParser) -> None:
    """Options choosing where and how the result is written"""
    parser.add_argument(
        "-f",
        "--format",
        metavar="FORMAT",
        choices=FORMATS,
        help=f"set output format, one of: [{', '.join(FORMATS)}]",
    )
    parser.add_argument("-o", "--out", metavar="PATH", help="write to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    """The argument parser of the camckit command"""
    parser = argparse.ArgumentParser(
        prog="camckit",
        description="Construct and verify surfaces of constant anisotropic mean curvature",
    )
    parser.add_argument("-v", "--version", action="store_true", help="print version and exit")
    parser.add_argument("--presets", metavar="FILE", help="load presets from a YAML file")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    generate = commands.add_parser("generate", help="export a surface as a mesh")
    check = commands.add_parser("check", help="certify constant anisotropic mean curvature")
    energy = commands.add_parser("energy", help="integrate the surface energy")
    section = commands.add_parser("crosssection", help="dump the symmetry-plane section")
    ode = commands.add_parser("integrate", help="integrate the cyclic ODE")

    for command in (generate, check, energy, section):
        command.add_argument("preset", nargs="?", help="named parameter preset")
        add_surface_options(command)
    for command in (generate, check, energy, section, ode):
        add_output_options(command)
    for command in (check, energy):
        command.add_argument("--energy", choices=sorted(ENERGIES), help="surface energy")
    check.add_argument("--tol", type=float, help="tolerance on |Lambda - lambda0|")
    check.add_argument("--mode-tol", type=float, help="tolerance on the Fourier modes")
    check.add_argument("--nu3-floor", type=float, help="mask nodes with |nu3| below this")
    section.add_argument("--plane", help="section plane, only y=0")

    ode.add_argument("--family", choices=CYCLIC_FAMILIES, help="start on a family member")
    ode.add_argument("--lambda", dest="lam", type=float, metavar="L", help="lambda")
    ode.add_argument("--mu", type=float, help="mu")
    ode.add_argument("--c", type=float, help="family constant c")
    ode.add_argument("--shift", type=float, help="vertical shift of the family member")
    ode.add_argument("--isotropic", action="store_true", help="use the area functional")
    ode.add_argument("--s0", type=float, help="initial s")
    ode.add_argument("--r0", type=float, help="initial radius")
    ode.add_argument("--rp0", type=float, help="initial r'")
    ode.add_argument("--a0", type=float, help="initial a")
    ode.add_argument("--b0", type=float, help="initial b")
    ode.add_argument("--send", type=float, help="final s")
    ode.add_argument("--step", type=float, help="RK4 step")
    ode.add_argument("--drift-tol", type=float, help="per-step first integral drift limit")
    return parser


def run_surface_command(args: argparse.Namespace, header: str) -> Tuple[Document, int]:
    """generate, check and energy for one resolved option set"""
    grid = build_grid(args)
    surface = build_surface(args, grid)
    if args.command == "generate":
        mesh = cmd_generate(surface, grid, surface.descriptor)
        return Document(header, data={"provenance": mesh.provenance}, mesh=mesh), 0
    energy = ENERGIES[args.energy]()
    if args.command == "energy":
        return Document(header, data=cmd_energy(surface, energy, grid)), 0
    tolerances = Tolerances(
        lambda_tol=args.tol,
        mode_tol=args.tol if args.mode_tol is None else args.mode_tol,
        nu3_floor=args.nu3_floor,
    )
    report, status = cmd_check(surface, energy, default_lambda0(args), grid, tolerances)
    return Document(header, data=report), status


def run_crosssection(
    args: argparse.Namespace, sections: List[Dict[str, Any]], header: str
) -> Document:
    """crosssection for every section of the preset"""
    rows: List[Any] = []
    for section in sections:
        options = argparse.Namespace(**vars(args))
        apply_defaults(options, section)
        if options.family not in CYCLIC_FAMILIES:
            raise DomainError("Cross-sections exist for the cyclic families only")
        grid = build_grid(options)
        grid.check_within(domain_interval(family_params(options)))
        table = cmd_crosssection(
            family_params(options),
            options.plane,
            grid.s_min,
            grid.s_max,
            grid.n_s,
            name=section.get("name", "") if len(sections) > 1 else "",
        )
        rows.extend(table.rows)
    return Document(header, table=Table(["polyline", "s", "x", "z"], rows))


def run_integrate(args: argparse.Namespace, header: str) -> Document:
    """integrate with the resolved options"""
    apply_defaults(args, None)
    mode = OdeMode.ISOTROPIC if args.isotropic else OdeMode.ANISOTROPIC
    trajectory = cmd_integrate(
        args.lam, args.mu, mode, initial_state(args), args.send, args.step, args.drift_tol
    )
    records = trajectory.to_records()
    return Document(
        header,
        data={"halt_reason": trajectory.halt_reason, "mode": mode.value, "step": args.step},
        table=Table(["s", "r", "rp", "a", "b", "c1"], records),
    )


DEFAULT_FORMATS = {
    "generate": "obj",
    "check": "json",
    "energy": "json",
    "crosssection": "csv",
    "integrate": "csv",
}


def write_output(text: str, path: Optional[str]) -> None:
    """Writes text to path, or to stdout when path is None"""
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8") as out:
        out.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI function."""
    args: argparse.Namespace
    parser: argparse.ArgumentParser = build_parser()
    flags = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(flags)

    if args.version:
        print(f"camc-kit v{__version__}")
        return 0
    if args.command is None:
        parser.print_help()
        return 2
    if args.command == "integrate" and args.step is not None and not args.step > 0:
        parser.error(f"--step must be positive, got {args.step}")
    if getattr(args, "plane", None) not in (None, "y=0"):
        parser.error(f"only the symmetry plane y=0 is supported, got {args.plane!r}")

    header = f"camc-kit {__version__} {' '.join(flags)}".rstrip()
    status = 0
    try:
        if args.command == "integrate":
            document = run_integrate(args, header)
        else:
            presets = load_presets(args.presets) if args.preset or args.presets else {}
            sections = expand_preset(presets, args.preset) if args.preset else [{}]
            if args.command == "crosssection":
                document = run_crosssection(args, sections, header)
            else:
                if len(sections) != 1:
                    raise DomainError(f"Preset {args.preset!r} holds several surfaces")
                apply_defaults(args, sections[0])
                document, status = run_surface_command(args, header)
        # Get imported formatter object from globals, by its name
        formatter: Callable[[Document], str] = globals()[
            f"formatter_{args.format or DEFAULT_FORMATS[args.command]}"
        ]
        write_output(formatter(document), args.out)
    except CamcKitException as exception:
        print(f"camckit: {exception}", file=sys.stderr)
        return 2
    except OSError as exception:
        print(f"camckit: {exception}", file=sys.stderr)
        return 2
    return status


if __name__ == "__main__":
    sys.exit(main())
