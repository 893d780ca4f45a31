"""Command-line front end.

Subcommands:
    coords     evaluate a coordinate system at a point (JSON to stdout)
    grid       sample the discrepancy norm of two systems on a lattice (CSV)
    enumerate  list all triangulations of the n-gon with CDS and orbit size
    equator    sample the reference quadrilateral's equator (CSV)

System specs follow the grammar
    wachspress | gibbs | areal | chordal:<chords> | cartographic:<chords>
    | mix:<w1>*<spec1>+<w2>*<spec2>
with chords written "j-k,j-k,..." (1-based, standard-ordered).  ``grid``
and ``equator`` can additionally render a figure of the sampled field
next to the delimited output via ``--plot``.

Exit codes: 0 success, 2 invalid input, 3 point outside the polygon,
4 solver non-convergence.  Identical invocations produce byte-identical
output; grid rows are emitted in row-major lattice order no matter how
the evaluation is scheduled internally.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .chordal import (
    ChordalDecomposition,
    InvalidDecomposition,
    cds,
    enumerate_decompositions,
    format_cds,
    orbit_with_multiplicity,
)
from .geometry import (
    GeometryError,
    OutsidePolygon,
    Polygon,
    polygon_from_dict,
    validate_polygon,
)
from .gibbs import NoConvergence
from .systems import (
    ArealSystem,
    CartographicSystem,
    ChordalSystem,
    CoordinateSystem,
    GibbsSystem,
    OutOfRange,
    WachspressSystem,
    convex_combine,
    discrepancy,
    discrepancy_grid,
    equator_b,
)

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_OUTSIDE = 3
EXIT_NO_CONVERGENCE = 4

BUILTIN_POLYGONS = {
    "quad54": [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.5)],
    "hex72": [(2.0, 1.0), (2.0, 2.0), (1.0, 2.0), (0.0, 1.0), (0.0, 0.0), (1.0, 0.0)],
    "unitsquare": [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
}


def parse_system_spec(
    spec: str, n: int, decomposition: str | None = None
) -> CoordinateSystem:
    """Build a coordinate system from its shell spec string.

    ``decomposition`` supplies the chords when the spec is a bare
    "chordal" or "cartographic".
    """
    spec = spec.strip()
    if spec.startswith("mix:"):
        parts = []
        for term in spec[len("mix:") :].split("+"):
            if "*" not in term:
                raise ValueError(f"mixture term {term!r} must look like w*spec")
            weight_text, _, sub = term.partition("*")
            parts.append((parse_system_spec(sub, n), float(weight_text)))
        return convex_combine(parts)

    name, _, inline = spec.partition(":")
    chords = inline or decomposition
    if name == "wachspress":
        return WachspressSystem()
    if name == "gibbs":
        return GibbsSystem()
    if name == "areal":
        return ArealSystem()
    if name == "chordal":
        if chords is None:
            raise ValueError("chordal system needs a decomposition")
        return ChordalSystem(ChordalDecomposition.from_text(n, chords))
    if name == "cartographic":
        if chords is None:
            raise ValueError("cartographic system needs a representative decomposition")
        return CartographicSystem(ChordalDecomposition.from_text(n, chords))
    raise ValueError(f"unknown coordinate system {spec!r}")


def _load_polygon(args) -> Polygon:
    if args.builtin is not None:
        return validate_polygon(BUILTIN_POLYGONS[args.builtin])
    if args.polygon is None:
        raise ValueError("provide --polygon FILE or --builtin NAME")
    with open(args.polygon, encoding="utf-8") as handle:
        return polygon_from_dict(json.load(handle))


def _parse_point(text: str) -> tuple[float, float]:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"bad point {text!r}: expected x,y") from None
    return x, y


def _open_output(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _write_csv(args, header: str, rows) -> None:
    out, close = _open_output(args.output)
    try:
        out.write(header + "\n")
        for row in rows:
            out.write(",".join(f"{value:.17g}" for value in row) + "\n")
    finally:
        if close:
            out.close()


def cmd_coords(args) -> int:
    poly = _load_polygon(args)
    system = parse_system_spec(args.system, poly.n, args.decomposition)
    point = _parse_point(args.point)
    coords = system.evaluate(poly, point)
    payload = {
        "system": args.system
        if args.decomposition is None
        else f"{args.system}:{args.decomposition}",
        "point": [point[0], point[1]],
        "coords": [float(c) for c in coords],
    }
    out, close = _open_output(args.output)
    try:
        out.write(json.dumps(payload) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_grid(args) -> int:
    poly = _load_polygon(args)
    system_a = parse_system_spec(args.a, poly.n)
    system_b = parse_system_spec(args.b, poly.n)
    rows = discrepancy_grid(system_a, system_b, poly, args.res)
    _write_csv(args, "x,y,value", rows)
    if args.plot is not None:
        from .plotting import save_grid_contour

        save_grid_contour(rows, poly, args.plot)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n < 3:
        raise ValueError("polygon size must be at least 3")
    lines = []
    for delta in enumerate_decompositions(args.n):
        orbit = orbit_with_multiplicity(delta)
        text = delta.to_text() or "-"
        lines.append(f"{text}\t{format_cds(cds(delta))}\t{len(orbit)}")
    out, close = _open_output(args.output)
    try:
        out.write("\n".join(lines) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_equator(args) -> int:
    if args.samples < 2:
        raise ValueError("need at least 2 equator samples")
    poly = validate_polygon(BUILTIN_POLYGONS["quad54"])
    g = GibbsSystem()
    w = WachspressSystem()
    rows = []
    for a in np.linspace(-1.0, 1.0, args.samples):
        b = equator_b(float(a))
        norm = float(np.linalg.norm(discrepancy(g, w, poly, (a, b))))
        rows.append((float(a), b, norm))
    _write_csv(args, "a,b,gw_norm", rows)
    if args.plot is not None:
        from .plotting import save_equator_plot

        save_equator_plot(rows, poly, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polybary",
        description="Barycentric coordinate systems on convex polygons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_polygon_flags(p):
        p.add_argument("--polygon", help="polygon JSON file")
        p.add_argument(
            "--builtin",
            choices=sorted(BUILTIN_POLYGONS),
            help="named built-in polygon",
        )

    p = sub.add_parser("coords", help="evaluate a coordinate system at a point")
    p.add_argument("--system", required=True, help="system spec")
    p.add_argument("--decomposition", help="chords j-k,... for chordal/cartographic")
    add_polygon_flags(p)
    p.add_argument("--point", required=True, help="query point x,y")
    p.add_argument("--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("grid", help="discrepancy norms over a lattice, as CSV")
    p.add_argument("--a", required=True, help="first system spec")
    p.add_argument("--b", required=True, help="second system spec")
    add_polygon_flags(p)
    p.add_argument("--res", type=int, required=True, help="lattice resolution")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--plot", help="also render a contour figure to this file")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("enumerate", help="list triangulations of the n-gon")
    p.add_argument("--n", type=int, required=True, help="polygon size")
    p.add_argument("--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("equator", help="sample the reference equator, as CSV")
    p.add_argument("--samples", type=int, required=True, help="sample count")
    p.add_argument("--output", help="output file (default stdout)")
    p.add_argument("--plot", help="also render a figure to this file")
    p.set_defaults(func=cmd_equator)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OutsidePolygon as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OUTSIDE
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (
        GeometryError,
        InvalidDecomposition,
        OutOfRange,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
