"""Command-line entry point: ``graphtrav <command> ...``.

Results go to stdout as ``element<TAB>count`` lines in rank order;
diagnostics go to stderr. Exit status is 0 on success, 1 on a data
error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, report, textformat
from .counters import OpCounter
from .errors import GraphError
from .fixtures import load_fixture
from .graph import Element, Graph
from .index import index_build
from .notation import parse_traversal
from .recommend import collaborative_recommend, content_recommend
from .spatial import Rect, find_root, quadtree_build, read_points, region_query
from .traversal import Multiset, rank


class DataError(Exception):
    pass


def load_graph_file(path: str | Path) -> Graph:
    """Read a graph file; ``@friends``, ``@rec`` and ``@quad`` name the bundled fixtures."""
    text = str(path)
    if text.startswith("@"):
        try:
            return load_fixture(text[1:])
        except KeyError as exc:
            raise DataError(exc.args[0]) from None
    return textformat.load(path)


def _element_text(item, label_key: str | None = None) -> str:
    if isinstance(item, Element):
        if label_key and label_key in item.properties:
            return str(item.properties[label_key])
        return str(item.id)
    if isinstance(item, bool):
        return "true" if item else "false"
    return str(item)


def _emit(ranked, out, label_key: str | None = None) -> None:
    for item, n in ranked:
        out.write(f"{_element_text(item, label_key)}\t{n}\n")


def _pair(text: str) -> tuple[float, float]:
    try:
        x, y = (float(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    return x, y


def _world(text: str) -> Rect:
    try:
        return Rect(*(float(p) for p in text.split(",")))
    except (TypeError, ValueError):
        raise argparse.ArgumentTypeError(f"expected x0,y0,x1,y1 but got {text!r}") from None


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not sizes or any(s < 1 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _key_value(text: str) -> tuple[str, object]:
    key, sep, raw = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, textformat.parse_value(raw, bare_strings=True)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _vertex(graph: Graph, vid: int):
    try:
        return graph.vertex(vid)
    except KeyError:
        raise DataError(f"no vertex {vid}") from None


# ---------------------------------------------------------------- commands


def cmd_load(args, out) -> None:
    g = load_graph_file(args.file)
    out.write(f"vertices\t{len(g.vertices)}\nedges\t{len(g.edges)}\n")


def cmd_lookup(args, out) -> None:
    g = load_graph_file(args.graph or "@friends")
    value = textformat.parse_value(args.value, bare_strings=True)
    _emit(rank(index_build(g, args.key).lookup(value)), out)


def cmd_traverse(args, out) -> None:
    g = load_graph_file(args.graph or "@friends")
    t = parse_traversal(args.expression, g)
    start = Multiset.vertices(*(_vertex(g, vid) for vid in args.start_id))
    for key, value in args.start:
        start = start + index_build(g, key).lookup(value)
    if not args.start and not args.start_id:
        raise DataError("give a starting point with --start key=value or --start-id N")
    _emit(rank(t(start)), out)


def cmd_rec(args, out) -> None:
    g = load_graph_file(args.graph or "@rec")
    person = _vertex(g, args.person)
    fn = content_recommend if args.kind == "content" else collaborative_recommend
    _emit(fn(person, exclude_liked=args.exclude_liked), out)


def cmd_spatial_build(args, out) -> None:
    with open(args.points, encoding="utf-8") as fh:
        points = read_points(fh, args.points)
    g, _ = quadtree_build(points, args.world, args.capacity)
    if args.out:
        textformat.dump(g, args.out)
    else:
        textformat.write_graph(g, out)


def cmd_spatial_query(args, out) -> None:
    g = load_graph_file(args.graph or "@quad")
    root = _vertex(g, args.root) if args.root is not None else find_root(g)
    try:
        query = Rect(args.bl[0], args.bl[1], args.tr[0], args.tr[1])
    except ValueError as exc:
        raise DataError(str(exc)) from None
    counter = OpCounter()
    result = region_query(g, root, query, args.mode, counter)
    _emit(rank(result), out, label_key="name")
    if args.stats:
        out.write(f"# bbox_comparisons\t{counter.bounding_box_comparisons()}\n")
        out.write(f"# comparisons\t{counter.comparisons}\n")
        out.write(f"# elements_touched\t{counter.touched}\n")


def cmd_bench(args, out) -> None:
    rows = bench.join_vs_traversal(args.sizes, args.degree, args.seed, args.queries)
    if args.out:
        report.write_csv(rows, args.out)
    if args.figure:
        report.plot_costs(rows, args.figure, title=f"degree {args.degree}, seed {args.seed}")
    # wall-clock time is left out of stdout so identical runs print identical bytes
    out.write("n\tengine\tqueries\tmean_comparisons\tmean_elements_touched\n")
    for s in bench.summarize(rows):
        out.write(f"{s['n']}\t{s['engine']}\t{s['queries']}\t{s['comparisons']:.3f}\t{s['elements_touched']:.3f}\n")
    out.write(f"# relational_slope_vs_log2n\t{bench.slope_vs_log2n(rows):.3f}\n" if len(args.sizes) > 1 else "")


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphtrav", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    graph_opt = argparse.ArgumentParser(add_help=False)
    graph_opt.add_argument("--graph", metavar="FILE",
                           help="graph text file, or @friends/@rec/@quad for a bundled fixture")

    s = sub.add_parser("load", help="read a graph file and report its size")
    s.add_argument("file")
    s.set_defaults(func=cmd_load)

    s = sub.add_parser("lookup", parents=[graph_opt], help="vertices whose KEY equals VALUE (default graph @friends)")
    s.add_argument("key")
    s.add_argument("value")
    s.set_defaults(func=cmd_lookup)

    s = sub.add_parser("traverse", parents=[graph_opt], help="evaluate a pipeline expression (default graph @friends)")
    s.add_argument("--start", type=_key_value, action="append", default=[], metavar="KEY=VALUE",
                   help="start from the vertices with this property value")
    s.add_argument("--start-id", type=int, action="append", default=[], metavar="ID")
    s.add_argument("expression")
    s.set_defaults(func=cmd_traverse)

    s = sub.add_parser("rec", help="recommendations (default graph @rec)")
    rec = s.add_subparsers(dest="kind", required=True, metavar="kind")
    for kind, text in (("content", "resources sharing features with what PERSON likes"),
                       ("collab", "resources liked by people with similar likes")):
        r = rec.add_parser(kind, parents=[graph_opt], help=text)
        r.add_argument("--person", type=int, required=True)
        r.add_argument("--exclude-liked", action="store_true", help="drop resources PERSON already likes")
        r.set_defaults(func=cmd_rec)

    s = sub.add_parser("spatial", help="quadtree index")
    sp = s.add_subparsers(dest="action", required=True, metavar="action")
    b = sp.add_parser("build", help="build a quadtree graph from a points file")
    b.add_argument("--capacity", type=int, default=4)
    b.add_argument("--world", type=_world, required=True, metavar="x0,y0,x1,y1")
    b.add_argument("--out", metavar="FILE")
    b.add_argument("points")
    b.set_defaults(func=cmd_spatial_build)
    q = sp.add_parser("query", parents=[graph_opt], help="points of interest in a rectangle (default graph @quad)")
    q.add_argument("--bl", type=_pair, required=True, metavar="x,y")
    q.add_argument("--tr", type=_pair, required=True, metavar="x,y")
    q.add_argument("--mode", choices=("naive", "optimized"), default="optimized")
    q.add_argument("--root", type=int)
    q.add_argument("--stats", action="store_true", help="also print comparison counts")
    q.set_defaults(func=cmd_spatial_query)

    s = sub.add_parser("bench", help="benchmarks")
    bp = s.add_subparsers(dest="bench", required=True, metavar="benchmark")
    j = bp.add_parser("join-vs-traversal", help="relational join vs graph traversal cost")
    j.add_argument("--sizes", type=_sizes, default=[1000, 10000, 100000])
    j.add_argument("--degree", type=int, default=16)
    j.add_argument("--seed", type=int, default=0)
    j.add_argument("--queries", type=int, default=20)
    j.add_argument("--out", metavar="CSV")
    j.add_argument("--figure", metavar="PNG", help="also render the cost curves to this image file")
    j.set_defaults(func=cmd_bench)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except (GraphError, DataError, OSError, ValueError) as exc:
        err.write(f"graphtrav: error: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
