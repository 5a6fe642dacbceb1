"""Gadget graphs and reductions between colouring and satisfiability problems."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import FormatError
from .graph import Graph
from .verify import Coloring

RED, BLUE = 1, 2

# Edge set of the ten-vertex gadget, 1-based names g1..g10.
GADGET_EDGES = [(1, 4), (2, 4), (2, 5), (3, 5), (4, 6), (5, 7), (6, 8), (7, 8), (8, 9), (9, 10)]


@dataclass
class LabeledGraph:
    graph: Graph
    labels: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.labels.values())) != len(self.labels):
            raise ValueError("labels must be injective")
        if any(not 0 <= v < self.graph.n for v in self.labels.values()):
            raise ValueError("label points outside the graph")

    def __getitem__(self, name: str) -> int:
        return self.labels[name]


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges = []
        self.labels = {}

    def vertex(self, label=None):
        v = self.n
        self.n += 1
        if label is not None:
            self.labels[label] = v
        return v

    def edge(self, u, v):
        self.edges.append((u, v))

    def paste(self, size, edges, joined_to=()):
        """Add a disjoint copy of a graph and join every new vertex to ``joined_to``."""
        base = self.n
        self.n += size
        self.edges.extend((base + a, base + b) for a, b in edges)
        for v in range(base, base + size):
            for w in joined_to:
                self.edges.append((v, w))
        return base

    def build(self):
        return LabeledGraph(Graph.from_edges(self.n, self.edges), dict(self.labels))


def gen_oncf_gadget() -> LabeledGraph:
    b = _Builder()
    for i in range(1, 11):
        b.vertex(f"g{i}")
    for u, v in GADGET_EDGES:
        b.edge(u - 1, v - 1)
    return b.build()


@lru_cache(maxsize=None)
def _gk(k: int) -> tuple[int, tuple]:
    if k == 1:
        return 1, ()
    if k == 2:
        return 5, ((0, 1), (0, 2), (0, 4), (4, 3))
    b = _Builder()
    clique = [b.vertex() for _ in range(k)]
    for u, v in itertools.combinations(clique, 2):
        b.edge(u, v)
    big, small = _gk(k - 1), _gk(k - 2)
    for v in clique:
        for _ in range(2):
            b.paste(*big, joined_to=(v,))
    for u, v in itertools.combinations(clique, 2):
        for _ in range(2):
            b.paste(*small, joined_to=(u, v))
    return b.n, tuple(b.edges)


def gen_gk(k: int) -> LabeledGraph:
    """The recursively defined graph needing k colours for partial closed-neighbourhood colouring."""
    if k < 1:
        raise ValueError("gen_gk needs k >= 1")
    size, edges = _gk(k)
    if k == 1:
        labels = {"v": 0}
    elif k == 2:
        labels = {"center": 0, "subdivider": 4}
    else:
        labels = {f"k{i + 1}": i for i in range(k)}
    return LabeledGraph(Graph.from_edges(size, edges), labels)


def gen_palette(q: int) -> LabeledGraph:
    """Clique c1..cq, twins c1'..cq', each distinguished edge backed by two G_{q-1} copies."""
    if q < 3:
        raise ValueError("gen_palette needs q >= 3")
    b = _Builder()
    c = [b.vertex(f"c{i + 1}") for i in range(q)]
    cp = [b.vertex(f"c{i + 1}'") for i in range(q)]
    dist_edges = list(itertools.combinations(c, 2))
    dist_edges += [(c[j], cp[i]) for i in range(q) for j in range(q) if i != j]
    copy = _gk(q - 1)
    for u, v in dist_edges:
        b.edge(u, v)
    for u, v in dist_edges:
        for _ in range(2):
            b.paste(*copy, joined_to=(u, v))
    return b.build()


def qcol_to_oncf(g: Graph) -> Graph:
    """Subdivide every edge once; subdivision vertices follow the originals in edge order."""
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        s = g.n + i
        edges += [(u, s), (s, v)]
    return Graph.from_edges(g.n + g.m, edges)


def gen_subdivided_clique(q: int) -> Graph:
    if q < 3:
        raise ValueError("gen_subdivided_clique needs q >= 3")
    return qcol_to_oncf(Graph.from_edges(q, itertools.combinations(range(q), 2)))


def qcol_to_cncf(g: Graph, q: int) -> Graph:
    """Attach two joined G_q copies to every vertex and two G_{q-1} copies to every edge."""
    if q < 3:
        raise ValueError("qcol_to_cncf needs q >= 3")
    b = _Builder()
    for _ in range(g.n):
        b.vertex()
    for u, v in g.edges():
        b.edge(u, v)
    big, small = _gk(q), _gk(q - 1)
    for v in range(g.n):
        for _ in range(2):
            b.paste(*big, joined_to=(v,))
    for u, v in g.edges():
        for _ in range(2):
            b.paste(*small, joined_to=(u, v))
    return b.build().graph


def _check_literals(clauses, width=None):
    n = 0
    for clause in clauses:
        if width is not None and len(clause) != width:
            raise ValueError(f"clause {clause} does not have {width} literals")
        if not clause:
            raise ValueError("empty clause")
        for lit in clause:
            if lit == 0:
                raise ValueError("literal 0 is not allowed")
            n = max(n, abs(lit))
    return n


def sat_to_2oncf(clauses: Sequence[Sequence[int]], n_vars: int | None = None) -> LabeledGraph:
    """3-CNF (DIMACS-style literals) to a graph that is 2-ONCF-colourable iff satisfiable."""
    n = max(_check_literals(clauses, width=3), n_vars or 0)
    b = _Builder()
    r, rp, bl = b.vertex("R"), b.vertex("R'"), b.vertex("B")
    b.edge(r, rp)
    b.edge(rp, bl)
    pos, neg = {}, {}
    for i in range(1, n + 1):
        u, v, w = b.vertex(f"u{i}"), b.vertex(f"v{i}"), b.vertex(f"w{i}")
        b.edge(u, v)
        b.edge(v, w)
        pos[i], neg[i] = u, w
    for j, clause in enumerate(clauses, start=1):
        g = [None] + [b.vertex(f"C{j}.g{t}") for t in range(1, 11)]
        for x, y in GADGET_EDGES:
            b.edge(g[x], g[y])
        b.edge(g[10], r)
        for t, lit in enumerate(clause, start=1):
            s = b.vertex(f"C{j}.s{t}")
            b.edge(s, g[t])
            b.edge(s, pos[lit] if lit > 0 else neg[-lit])
    return b.build()


def mes_to_extension(clauses: Sequence[Sequence[int]], n_vars: int | None = None):
    """Monotone exact-one SAT to a precoloured vertex-cover extension instance.

    Returns ``(graph, cover, precolouring)`` with red = 1 and blue = 2.
    Clause vertices hang off R1 and variable vertices off R2.
    """
    for clause in clauses:
        if any(x <= 0 for x in clause):
            raise ValueError("monotone clauses take positive variable indices only")
    n = max(_check_literals(clauses), n_vars or 0)
    b = _Builder()
    r1, r2, b1 = b.vertex("R1"), b.vertex("R2"), b.vertex("B1")
    b.edge(r1, b1)
    colour = {r1: RED, r2: RED, b1: BLUE}
    us = []
    for i in range(1, len(clauses) + 1):
        u = b.vertex(f"u{i}")
        b.edge(u, r1)
        colour[u] = RED
        us.append(u)
    vs = {}
    for j in range(1, n + 1):
        v = b.vertex(f"v{j}")
        b.edge(v, r2)
        colour[v] = BLUE
        vs[j] = v
    for i, clause in enumerate(clauses, start=1):
        for j in sorted(set(clause)):
            w = b.vertex(f"w{i},{j}")
            b.edge(w, us[i - 1])
            b.edge(w, vs[j])
    lg = b.build()
    cover = sorted(colour)
    return lg.graph, cover, Coloring.partial(lg.graph.n, 2, colour)


# ---------------------------------------------------------------- file formats

def serialize_labels(lg: LabeledGraph) -> str:
    return "".join(f"l {name} {v + 1}\n" for name, v in sorted(lg.labels.items(), key=lambda kv: kv[1]))


def parse_labels(text: str) -> dict[str, int]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) != 3 or parts[0] != "l":
            raise FormatError(f"expected 'l <name> <id>', got {raw!r}", lineno)
        try:
            out[parts[1]] = int(parts[2]) - 1
        except ValueError:
            raise FormatError(f"non-integer vertex id in {raw!r}", lineno) from None
    return out


def parse_cnf(text: str) -> tuple[int, list[tuple[int, ...]]]:
    """DIMACS CNF: ``p cnf <vars> <clauses>`` then zero-terminated clauses."""
    n = None
    clauses, current = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line {line!r}", lineno)
            n = int(parts[2])
            continue
        try:
            lits = [int(x) for x in line.split()]
        except ValueError:
            raise FormatError(f"non-integer literal in {line!r}", lineno) from None
        for lit in lits:
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if n is not None and abs(lit) > n:
                    raise FormatError(f"literal {lit} exceeds variable count", lineno)
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if n is None:
        raise FormatError("missing 'p cnf' line")
    return n, clauses
