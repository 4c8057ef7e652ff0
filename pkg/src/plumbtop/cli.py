"""
plumbtop CLI

A command-line interface for vanishing zones, plumbing graphs and homology.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional

from plumbtop import __version__
from plumbtop.assembly import (
    BoundedPiece,
    GluingData,
    boundary_graph_example_family,
    boundary_graph_lens_family,
    glue_through_collar,
    glue_with_bamboo,
    piece_from_dict,
    piece_to_dict,
)
from plumbtop.constants import EXIT_CLAIM_FAILURE, EXIT_INPUT_ERROR, EXIT_OK, OUTPUT_FORMATS
from plumbtop.errors import InputError, PlumbtopError
from plumbtop.germ import (
    germ_to_dict,
    is_lens_boundary,
    load_germ,
    singular_branches,
    vanishing_zone,
    zone_summary,
    zone_to_dict,
)
from plumbtop.homology import h1_of_plumbed, hirzebruch_h1
from plumbtop.linalg import as_int_matrix, smith_normal_form, to_lists
from plumbtop.plumbing import (
    PlumbingGraph,
    graph_from_dict,
    graph_to_dict,
    graph_to_dot,
    is_connected,
    recognize_generalized_lens,
    shape,
)
from plumbtop.repro import run_repro
from plumbtop.seifert import star_graph


def print_header(title: str) -> None:
    """Print a formatted header."""
    print("=" * 60)
    print(title)
    print("=" * 60)


def emit_json(data: Any) -> None:
    """Print JSON with a stable key order."""
    print(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False))


def read_json(path: str) -> Any:
    """Load a UTF-8 JSON file, reporting problems as InputError."""
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path}: not valid UTF-8: {exc.reason} at byte {exc.start}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc


def _no_dot(args: argparse.Namespace) -> None:
    if args.format == "dot":
        raise InputError(f"'{args.command}' has no DOT output; use json or text")


def _print_graph_text(graph: PlumbingGraph) -> None:
    print(f"  vertices: {len(graph.vertices)}, edges: {len(graph.edges)}, legs: {len(graph.legs)}")
    for v in graph.vertices:
        print(f"    {v.id}: g={v.genus}, e={v.euler_weight}, neighbours={graph.neighbors(v.id)}")
    if graph.is_closed and is_connected(graph):
        lens = recognize_generalized_lens(graph)
        print(f"  shape: {shape(graph).value}")
        print(f"  H_1 = {h1_of_plumbed(graph)}")
        print(f"  generalized lens space: {lens if lens is not None else 'no'}")


def cmd_germ(args: argparse.Namespace) -> int:
    """Report the vanishing zones of a germ file."""
    germ = load_germ(args.file)
    zones = [vanishing_zone(germ, i) for i in singular_branches(germ)]
    verdict = is_lens_boundary(germ)

    if args.format == "json":
        emit_json(
            {
                "germ": germ_to_dict(germ),
                "zones": [zone_to_dict(z) for z in zones],
                "lens": verdict.to_dict(),
            }
        )
    elif args.format == "dot":
        for z in zones:
            print(graph_to_dot(star_graph(z.seifert), name=f"zone{z.branch_index}"), end="")
    else:
        print_header(f"GERM {germ.name or args.file} (m = {germ.m})")
        for z in zones:
            for line in zone_summary(z):
                print(line)
        print(f"lens space: {'yes' if verdict else 'no'} ({verdict.reason})")
    return EXIT_OK


def cmd_h1(args: argparse.Namespace) -> int:
    """Compute H_1 of a closed plumbing graph file."""
    _no_dot(args)
    result = h1_of_plumbed(graph_from_dict(read_json(args.file)))
    if args.format == "json":
        emit_json(result.to_dict())
    else:
        print(result.render())
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    """Build the plumbing graph of a built-in germ family."""
    if args.family == "example":
        graph = boundary_graph_example_family(args.l)
        title = f"z^2 - (x^2 - y^3) y^{args.l}"
    else:
        graph = boundary_graph_lens_family(args.l)
        title = f"z^2 - x y^{args.l}"

    if args.format == "json":
        emit_json(graph_to_dict(graph))
    elif args.format == "dot":
        print(graph_to_dot(graph), end="")
    else:
        print_header(f"PLUMBING GRAPH OF {title}")
        _print_graph_text(graph)
    return EXIT_OK


def cmd_glue(args: argparse.Namespace) -> int:
    """Glue two bounded pieces, or two legs of one piece through a collar."""
    gluing = GluingData(args.alpha, args.beta)
    a = piece_from_dict(read_json(args.a))
    result: Any
    if args.b is None:
        result = glue_through_collar(a, args.leg_a, args.leg_b, gluing)
    else:
        b = piece_from_dict(read_json(args.b))
        result = glue_with_bamboo(a, args.leg_a, b, args.leg_b, gluing)

    graph = result.graph if isinstance(result, BoundedPiece) else result
    if args.format == "json":
        bounded = isinstance(result, BoundedPiece)
        emit_json(piece_to_dict(result) if bounded else graph_to_dict(graph))
    elif args.format == "dot":
        print(graph_to_dot(graph), end="")
    else:
        print_header("GLUED GRAPH")
        _print_graph_text(graph)
    return EXIT_OK


def cmd_lens(args: argparse.Namespace) -> int:
    """Recognise a generalized lens space from a graph file."""
    _no_dot(args)
    lens = recognize_generalized_lens(graph_from_dict(read_json(args.file)))
    if args.format == "json":
        emit_json(
            {
                "lens": lens.to_dict() if lens is not None else None,
                "name": str(lens) if lens is not None else None,
            }
        )
    else:
        print(lens if lens is not None else "not a generalized lens space")
    return EXIT_OK


def cmd_hirzebruch(args: argparse.Namespace) -> int:
    """Closed-form H_1 for z^m - x^k y^l."""
    _no_dot(args)
    result = hirzebruch_h1(args.m, args.k, args.l)
    if args.format == "json":
        emit_json(result.to_dict())
    else:
        print(result.render())
    return EXIT_OK


def cmd_snf(args: argparse.Namespace) -> int:
    """Smith normal form of a matrix file (JSON array of arrays)."""
    _no_dot(args)
    data = read_json(args.file)
    if not isinstance(data, list):
        raise InputError(f"{args.file}: expected an array of arrays")
    snf = smith_normal_form(as_int_matrix(data))
    if args.format == "json":
        emit_json({"d": list(snf.d), "rank": snf.rank, "u": to_lists(snf.u), "v": to_lists(snf.v)})
    else:
        print(f"d = {list(snf.d)}, rank = {snf.rank}")
    return EXIT_OK


def cmd_repro(args: argparse.Namespace) -> int:
    """Run the reproduction suite."""
    _no_dot(args)
    report = run_repro()
    if args.format == "json":
        emit_json(report.to_dict())
    else:
        print(report.render())
    return EXIT_OK if report.passed else EXIT_CLAIM_FAILURE


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=OUTPUT_FORMATS, default="json", help="Output format (default: json)"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="Log pipeline steps to stderr")

    parser = argparse.ArgumentParser(
        prog="plumbtop",
        description="Plumbing graphs and homology of Milnor fiber boundaries of z^m - g(x,y)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  plumbtop germ germ.json              Vanishing zones of a germ
  plumbtop graph --family example --l 5
                                       Graph of z^2 - (x^2 - y^3) y^5
  plumbtop graph --family lens --l 4 --format dot
  plumbtop h1 graph.json --format text H_1 of a closed graph
  plumbtop hirzebruch 3 2 4            Closed-form H_1 of z^3 - x^2 y^4
  plumbtop repro                       Check the family claims
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    germ_parser = subparsers.add_parser("germ", parents=[common], help="Vanishing-zone report")
    germ_parser.add_argument("file", help="Germ file (JSON, or TOML by suffix)")
    germ_parser.set_defaults(func=cmd_germ)

    h1_parser = subparsers.add_parser("h1", parents=[common], help="First homology of a graph")
    h1_parser.add_argument("file", help="Closed plumbing graph (JSON)")
    h1_parser.set_defaults(func=cmd_h1)

    graph_parser = subparsers.add_parser("graph", parents=[common], help="Graph of a germ family")
    graph_parser.add_argument("--family", choices=("example", "lens"), required=True)
    graph_parser.add_argument("--l", type=int, required=True, help="Exponent l of y")
    graph_parser.set_defaults(func=cmd_graph)

    glue_parser = subparsers.add_parser("glue", parents=[common], help="Glue bounded pieces")
    glue_parser.add_argument("--a", required=True, help="First piece (JSON)")
    glue_parser.add_argument("--b", help="Second piece (JSON); omit to close two legs of A")
    glue_parser.add_argument("--alpha", type=int, required=True)
    glue_parser.add_argument("--beta", type=int, required=True)
    glue_parser.add_argument("--leg-a", type=int, default=0, help="Leg index on A")
    glue_parser.add_argument("--leg-b", type=int, default=0, help="Leg index on B (or on A)")
    glue_parser.set_defaults(func=cmd_glue)

    lens_parser = subparsers.add_parser("lens", parents=[common], help="Recognise a lens space")
    lens_parser.add_argument("file", help="Closed plumbing graph (JSON)")
    lens_parser.set_defaults(func=cmd_lens)

    hirz_parser = subparsers.add_parser(
        "hirzebruch", parents=[common], help="Closed-form H_1 of z^m - x^k y^l"
    )
    hirz_parser.add_argument("m", type=int)
    hirz_parser.add_argument("k", type=int)
    hirz_parser.add_argument("l", type=int)
    hirz_parser.set_defaults(func=cmd_hirzebruch)

    snf_parser = subparsers.add_parser("snf", parents=[common], help="Smith normal form")
    snf_parser.add_argument("file", help="Matrix as a JSON array of arrays")
    snf_parser.set_defaults(func=cmd_snf)

    repro_parser = subparsers.add_parser("repro", parents=[common], help="Reproduction suite")
    repro_parser.set_defaults(func=cmd_repro)

    return parser


def main(args: Optional[list] = None) -> int:
    """Main entry point for the CLI."""
    parser = create_parser()
    parsed_args = parser.parse_args(args)

    if parsed_args.command is None:
        parser.print_help()
        return EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if parsed_args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        code: int = parsed_args.func(parsed_args)
        return code
    except PlumbtopError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
