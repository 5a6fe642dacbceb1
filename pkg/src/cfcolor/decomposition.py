"""Tree decompositions: validation, a min-fill heuristic, nice form and the .td format."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree, treewidth_min_fill_in

from .errors import FormatError
from .graph import Graph

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class TreeDecomposition:
    bags: list[tuple[int, ...]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: object = None

    def __str__(self):
        if self.kind == "vertex not connected":
            return f"vertex {self.witness} not connected"
        if self.witness is None:
            return self.kind
        return f"{self.kind}: {self.witness}"


def validate_td(g: Graph, t: TreeDecomposition) -> Violation | None:
    """Return ``None`` when ``t`` is a tree decomposition of ``g``, else the first violation."""
    k = len(t.bags)
    if k == 0:
        return Violation("tree is empty") if g.n else None
    tree = [[] for _ in range(k)]
    for i, j in t.edges:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            return Violation("bad tree edge", (i, j))
        tree[i].append(j)
        tree[j].append(i)
    if len(set(map(frozenset, t.edges))) != k - 1 or len(t.edges) != k - 1:
        return Violation("tree is not a tree")
    seen = _bfs(tree, 0, lambda _: True)
    if len(seen) != k:
        return Violation("tree is not connected")
    for b in t.bags:
        for v in b:
            if not 0 <= v < g.n:
                return Violation("bag vertex out of range", v)
    where = [[] for _ in range(g.n)]
    for i, b in enumerate(t.bags):
        for v in b:
            where[v].append(i)
    for v in range(g.n):
        if not where[v]:
            return Violation("vertex not covered", v)
    bagsets = [set(b) for b in t.bags]
    for u, v in g.edges():
        if not any(v in bagsets[i] for i in where[u]):
            return Violation("edge not covered", (u, v))
    for v in range(g.n):
        if len(_bfs(tree, where[v][0], lambda i: v in bagsets[i])) != len(where[v]):
            return Violation("vertex not connected", v)
    return None


def _bfs(tree, start, allowed):
    seen = {start}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for j in tree[i]:
            if j not in seen and allowed(j):
                seen.add(j)
                queue.append(j)
    return seen


def heuristic_td(g: Graph, method: str = "min_fill") -> TreeDecomposition:
    """Decomposition from a greedy elimination ordering (``min_fill`` or ``min_degree``)."""
    if g.n == 0:
        return TreeDecomposition([()], [])
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    algo = {"min_fill": treewidth_min_fill_in, "min_degree": treewidth_min_degree}[method]
    _, dec = algo(h)
    nodes = sorted(dec.nodes(), key=lambda b: (len(b), sorted(b)))
    index = {b: i for i, b in enumerate(nodes)}
    bags = [tuple(sorted(b)) for b in nodes]
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in dec.edges())
    return TreeDecomposition(bags, edges)


@dataclass
class NiceTreeDecomposition:
    """Rooted nice decomposition; nodes are stored children-first, the root is last."""

    kinds: list[str]
    vertex: list[int | None]
    children: list[tuple[int, ...]]
    bags: list[tuple[int, ...]]
    z: int | None

    @property
    def root(self) -> int:
        return len(self.kinds) - 1

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def __len__(self):
        return len(self.kinds)

    def as_td(self) -> TreeDecomposition:
        edges = [(c, i) for i, cs in enumerate(self.children) for c in cs]
        return TreeDecomposition(list(self.bags), edges)


class _NiceBuilder:
    def __init__(self):
        self.kinds, self.vertex, self.children, self.bags = [], [], [], []

    def add(self, kind, bag, children=(), v=None):
        self.kinds.append(kind)
        self.vertex.append(v)
        self.children.append(tuple(children))
        self.bags.append(tuple(sorted(bag)))
        return len(self.kinds) - 1

    def chain(self, top, target):
        """Forget then introduce single vertices until the bag equals ``target``."""
        bag = set(self.bags[top])
        for v in sorted(bag - target):
            bag.discard(v)
            top = self.add(FORGET, bag, (top,), v)
        for v in sorted(target - bag):
            bag.add(v)
            top = self.add(INTRODUCE, bag, (top,), v)
        return top


def make_nice(g: Graph, t: TreeDecomposition, augment: bool = True) -> NiceTreeDecomposition:
    """Convert ``t`` into nice form.

    With ``augment`` (the default) the lowest vertex z is added to every bag, so
    all bags are non-empty and the root and every leaf have bag {z}.  Without it
    the width is kept, leaves hold the lowest vertex of their bag and the root
    chain forgets down to the lowest vertex of the root bag.
    """
    if g.n == 0:
        raise ValueError("make_nice: graph has no vertices")
    z = 0
    bags = [set(b) | {z} if augment else set(b) for b in t.bags]
    if not augment and any(not b for b in bags):
        raise ValueError("make_nice: empty bag without augmentation")
    k = len(bags)
    tree = [[] for _ in range(k)]
    for i, j in t.edges:
        tree[i].append(j)
        tree[j].append(i)
    root = 0
    order, parent = [root], {root: None}
    for i in order:
        for j in sorted(tree[i]):
            if j not in parent:
                parent[j] = i
                order.append(j)
    kids = {i: [j for j in sorted(tree[i]) if parent.get(j) == i] for i in order}

    b = _NiceBuilder()
    top = {}
    for i in reversed(order):
        target = bags[i]
        if not kids[i]:
            start = {z} if augment else {min(target)}
            top[i] = b.chain(b.add(LEAF, start), target)
            continue
        tops = [b.chain(top[j], target) for j in kids[i]]
        acc = tops[0]
        for other in tops[1:]:
            acc = b.add(JOIN, target, (acc, other))
        top[i] = acc
    final = {z} if augment else {min(bags[root])}
    b.chain(top[root], final)
    return NiceTreeDecomposition(b.kinds, b.vertex, b.children, b.bags, z if augment else None)


def check_nice(t: NiceTreeDecomposition) -> str | None:
    """Return a description of the first broken nice-form rule, or ``None``."""
    for i, kind in enumerate(t.kinds):
        bag, ch = set(t.bags[i]), t.children[i]
        if any(c >= i for c in ch):
            return f"node {i}: child stored after parent"
        if kind == LEAF:
            ok = not ch
        elif kind == INTRODUCE:
            ok = len(ch) == 1 and bag == set(t.bags[ch[0]]) | {t.vertex[i]} and t.vertex[i] not in t.bags[ch[0]]
        elif kind == FORGET:
            ok = len(ch) == 1 and bag == set(t.bags[ch[0]]) - {t.vertex[i]} and t.vertex[i] in t.bags[ch[0]]
        elif kind == JOIN:
            ok = len(ch) == 2 and all(set(t.bags[c]) == bag for c in ch)
        else:
            ok = False
        if not ok:
            return f"node {i}: bad {kind} node"
    parents = [0] * len(t.kinds)
    for ch in t.children:
        for c in ch:
            parents[c] += 1
    if any(p != 1 for p in parents[:-1]) or parents[-1] != 0:
        return "not a rooted tree"
    if t.z is not None:
        if any(t.z not in b for b in t.bags):
            return "z missing from a bag"
        leaves = [i for i, k in enumerate(t.kinds) if k == LEAF]
        if any(t.bags[i] != (t.z,) for i in leaves + [t.root]):
            return "leaf or root bag differs from {z}"
    return None


# ---------------------------------------------------------------- .td format

def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse a .td document; returns the decomposition and the vertex count."""
    header = None
    bags: dict[int, tuple[int, ...]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        try:
            if header is None:
                if len(parts) != 5 or parts[:2] != ["s", "td"]:
                    raise FormatError(f"expected header 's td <bags> <width+1> <n>', got {line!r}", lineno)
                header = tuple(int(x) for x in parts[2:])
                continue
            if parts[0] == "b":
                i = int(parts[1])
                if not 1 <= i <= header[0] or i in bags:
                    raise FormatError(f"bad or repeated bag id {i}", lineno)
                vs = tuple(sorted(int(x) - 1 for x in parts[2:]))
                if any(not 0 <= v < header[2] for v in vs):
                    raise FormatError("bag vertex out of range", lineno)
                if len(vs) > header[1]:
                    raise FormatError("bag larger than announced width", lineno)
                bags[i] = vs
            elif len(parts) == 2:
                i, j = int(parts[0]), int(parts[1])
                if not (1 <= i <= header[0] and 1 <= j <= header[0]):
                    raise FormatError("tree edge endpoint out of range", lineno)
                edges.append((i - 1, j - 1))
            else:
                raise FormatError(f"unrecognised line {line!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"non-integer field in {line!r}", lineno) from None
    if header is None:
        raise FormatError("missing 's td' header")
    if len(bags) != header[0]:
        raise FormatError(f"header announces {header[0]} bags, found {len(bags)}")
    return TreeDecomposition([bags[i + 1] for i in range(header[0])], edges), header[2]


def serialize_td(t: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(t.bags)} {t.width + 1} {n}"]
    for i, b in enumerate(t.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in b]))
    lines.extend(f"{i + 1} {j + 1}" for i, j in t.edges)
    return "\n".join(lines) + "\n"
