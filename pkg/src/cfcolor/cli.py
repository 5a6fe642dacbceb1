"""``cfcolor`` command line.

Every command prints one result line per output (``YES``/``NO``, ``OK``/``VIOLATION v=<id>``,
``COLORS <k>``, a written file path, ``CHI <value>``).  Exit status: 0 on success,
2 on unreadable or malformed input, 3 when a resource guard trips.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bounds import color_via_fvs, color_via_td, color_via_vc
from .decomposition import heuristic_td, make_nice, parse_td
from .dp import MAX_STATES, ConflictFreeDP
from .errors import FormatError, ResourceLimitError
from .generators import (
    gen_gk,
    gen_oncf_gadget,
    gen_palette,
    gen_subdivided_clique,
    mes_to_extension,
    parse_cnf,
    sat_to_2oncf,
    serialize_labels,
)
from .graph import Graph, min_fvs, min_vertex_cover, parse_graph, parse_vertex_set, serialize_graph
from .kernel import kernelize_2cncf, kernelize_extension, serialize_csp
from .verify import ENUM_LIMIT, Coloring, brute_chi_cn, parse_coloring, serialize_coloring, verify_cncf, verify_oncf

EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _read(path) -> str:
    return Path(path).read_text()


def _write(path, text: str) -> str:
    Path(path).write_text(text)
    return str(path)


def _load_graph(path) -> Graph:
    return parse_graph(_read(path))


def _decomposition(g: Graph, td_path, augment=True):
    if td_path is None:
        return make_nice(g, heuristic_td(g), augment=augment)
    t, n = parse_td(_read(td_path))
    if n != g.n:
        raise FormatError(f"decomposition is for {n} vertices, graph has {g.n}")
    return make_nice(g, t, augment=augment)


# ---------------------------------------------------------------- commands

def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    pre = parse_coloring(_read(args.precolor), g.n, args.q) if args.precolor else None
    solver = ConflictFreeDP(g, _decomposition(g, args.td), args.q, args.mode == "cncf", pre, max_states=args.max_states)
    if not solver.run():
        print("NO")
        return 0
    print("YES")
    if args.witness:
        _write(args.witness, serialize_coloring(solver.witness()))
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    c = parse_coloring(_read(args.coloring), g.n, args.q)
    if args.mode == "oncf" and not c.is_total:
        bad = c.colors.index(0)
    else:
        bad = (verify_oncf if args.mode == "oncf" else verify_cncf)(g, c)
    print("OK" if bad is None else f"VIOLATION v={bad + 1}")
    return 0


def cmd_bound(args) -> int:
    g = _load_graph(args.graph)
    if args.method == "tw":
        c = color_via_td(g, _decomposition(g, args.td, augment=False))
    else:
        if args.set:
            s = parse_vertex_set(_read(args.set), g.n)
        else:
            s = min_vertex_cover(g) if args.method == "vc" else min_fvs(g)
        c = (color_via_vc if args.method == "vc" else color_via_fvs)(g, s)
    print(f"COLORS {len(set(c.colors))}")
    if args.out:
        _write(args.out, serialize_coloring(c))
    return 0


def cmd_kernelize(args) -> int:
    g = _load_graph(args.graph)
    out = Path(args.out)
    if args.problem == "2cncf":
        s = parse_vertex_set(_read(args.set), g.n) if args.set else min_vertex_cover(g)
        print(_write(out, serialize_csp(kernelize_2cncf(g, s))))
        return 0
    if not args.precolor:
        raise FormatError("2cncf-ext needs --precolor with the colours of the cover")
    pre = parse_coloring(_read(args.precolor), g.n, 2)
    mg = kernelize_extension(g, sorted(pre.assigned()), pre)
    if mg is None:
        # a fixed no-instance: the centre sees two red and two blue cover vertices
        kg = Graph.from_edges(5, [(v, 4) for v in range(4)])
        kpre = Coloring.partial(5, 2, {0: 1, 1: 1, 2: 2, 3: 2})
    else:
        kg, kpre = mg.graph, mg.pre
    print(_write(out, serialize_graph(kg)))
    print(_write(out.with_name(out.name + ".precolor"), serialize_coloring(kpre)))
    return 0


def _param(args, kind=int):
    if args.param is None:
        raise FormatError(f"family {args.family} needs --param")
    try:
        return kind(args.param)
    except ValueError:
        raise FormatError(f"bad --param {args.param!r}") from None


def cmd_gen(args) -> int:
    out = Path(args.out)
    labels = pre = None
    family = args.family
    if family == "oncf-gadget":
        lg = gen_oncf_gadget()
    elif family == "gk":
        lg = gen_gk(_param(args))
    elif family == "palette":
        lg = gen_palette(_param(args))
    elif family == "subdiv-clique":
        lg = None
        g = gen_subdivided_clique(_param(args))
    else:
        n, clauses = parse_cnf(_read(_param(args, str)))
        if family == "sat":
            lg = sat_to_2oncf(clauses, n)
        else:
            lg = None
            g, _, pre = mes_to_extension(clauses, n)
    if lg is not None:
        g, labels = lg.graph, lg
    print(_write(out, serialize_graph(g)))
    if labels is not None:
        print(_write(out.with_name(out.name + ".labels"), serialize_labels(labels)))
    if pre is not None:
        print(_write(out.with_name(out.name + ".precolor"), serialize_coloring(pre)))
    return 0


def cmd_chi(args) -> int:
    g = _load_graph(args.graph)
    if args.partial:
        if args.mode != "cncf":
            raise FormatError("--partial applies to cncf only")
        chi = brute_chi_cn(g, args.q_max, partial=True, max_enum=args.max_enum)
    else:
        t = _decomposition(g, args.td)
        closed = args.mode == "cncf"
        chi = next(
            (q for q in range(1, args.q_max + 1) if ConflictFreeDP(g, t, q, closed, max_states=args.max_states).run()),
            None,
        )
    print(f"CHI {chi if chi is not None else 'none'}")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cfcolor", description="Conflict-free graph colouring tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def guards(sp):
        sp.add_argument("--max-states", type=int, default=MAX_STATES, help="DP table size guard")
        sp.add_argument("--max-enum", type=int, default=ENUM_LIMIT, help="brute-force enumeration guard")

    sp = sub.add_parser("solve", help="decide q-colourability with the decomposition DP")
    sp.add_argument("--mode", choices=("oncf", "cncf"), required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--td", help=".td decomposition (computed if absent)")
    sp.add_argument("--precolor", help="colouring file fixing some vertices")
    sp.add_argument("--witness", help="write a colouring here on YES")
    sp.add_argument("graph")
    guards(sp)
    sp.set_defaults(run=cmd_solve)

    sp = sub.add_parser("verify", help="check a colouring file")
    sp.add_argument("--mode", choices=("oncf", "cncf"), required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--coloring", required=True)
    sp.add_argument("graph")
    sp.set_defaults(run=cmd_verify)

    sp = sub.add_parser("bound", help="constructive colouring with a guaranteed colour count")
    sp.add_argument("--method", choices=("vc", "fvs", "tw"), required=True)
    sp.add_argument("--set", help="vertex cover or feedback vertex set (computed if absent)")
    sp.add_argument("--td", help=".td decomposition for --method tw")
    sp.add_argument("--out", help="write the colouring here")
    sp.add_argument("graph")
    sp.set_defaults(run=cmd_bound)

    sp = sub.add_parser("kernelize", help="shrink a two-colour closed-neighbourhood instance")
    sp.add_argument("--problem", choices=("2cncf", "2cncf-ext"), required=True)
    sp.add_argument("--set", help="vertex cover for 2cncf (computed if absent)")
    sp.add_argument("--precolor", help="cover colouring for 2cncf-ext; its coloured vertices form the cover")
    sp.add_argument("--out", required=True)
    sp.add_argument("graph")
    sp.set_defaults(run=cmd_kernelize)

    sp = sub.add_parser("gen", help="write a generated instance")
    sp.add_argument("--family", choices=("oncf-gadget", "gk", "palette", "subdiv-clique", "sat", "mes"), required=True)
    sp.add_argument("--param", help="integer size, or a DIMACS CNF file for sat and mes")
    sp.add_argument("--out", required=True)
    sp.set_defaults(run=cmd_gen)

    sp = sub.add_parser("chi", help="least number of colours")
    sp.add_argument("--mode", choices=("oncf", "cncf"), required=True)
    sp.add_argument("--partial", action="store_true", help="allow uncoloured vertices (cncf)")
    sp.add_argument("--q-max", type=int, default=8)
    sp.add_argument("--td")
    sp.add_argument("graph")
    guards(sp)
    sp.set_defaults(run=cmd_chi)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ResourceLimitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (OSError, ValueError) as e:   # FormatError is a ValueError
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
