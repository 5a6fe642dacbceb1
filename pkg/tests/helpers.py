"""Shared instance generators and independent brute-force oracles for the tests."""

import itertools
import random

import networkx as nx

from cfcolor.graph import Graph


def from_nx(h) -> Graph:
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(m):
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def random_graph(rng, n, p):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_connected(rng, n, extra):
    """Random spanning tree plus ``extra`` random additional edges."""
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    pairs = list(itertools.combinations(range(n), 2))
    for _ in range(extra if pairs else 0):
        edges.add(rng.choice(pairs))
    return Graph.from_edges(n, edges)


def random_tree(rng, n):
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_partial_ktree(rng, n, k, keep=0.8):
    """Random partial k-tree on n vertices, with the bags and parent links of a width-k decomposition."""
    base = tuple(range(min(n, k + 1)))
    edges = set(itertools.combinations(base, 2))
    bags = [base]
    parents = [None]
    for v in range(k + 1, n):
        i = rng.randrange(len(bags))
        c = list(bags[i])
        c.pop(rng.randrange(len(c)))
        for u in c:
            edges.add((u, v))
        bags.append(tuple(sorted(c + [v])))
        parents.append(i)
    kept = {e for e in edges if rng.random() < keep}
    # keep the graph connected: every new vertex keeps one edge to its clique
    for b in bags[1:]:
        kept.add((b[0], b[-1]))
    return Graph.from_edges(n, kept), bags, parents


def ktree_td(bags, parents):
    from cfcolor.decomposition import TreeDecomposition

    return TreeDecomposition(list(bags), [(p, i) for i, p in enumerate(parents) if p is not None])


def connected_atlas(max_n):
    """All connected graphs on 1..max_n vertices, one per isomorphism class."""
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield from_nx(h)


def brute_min_vc(g):
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            ss = set(s)
            if all(u in ss or v in ss for u, v in g.edges()):
                return k


def brute_min_fvs(g):
    for k in range(g.n + 1):
        for s in itertools.combinations(range(g.n), k):
            h = nx.Graph()
            keep = [v for v in range(g.n) if v not in s]
            h.add_nodes_from(keep)
            h.add_edges_from((u, v) for u, v in g.edges() if u not in s and v not in s)
            if nx.is_forest(h) if keep else True:
                return k


def plain_oncf_ok(g, colors):
    """Direct restatement of the open-neighbourhood condition (0 = uncoloured)."""
    for v in range(g.n):
        counts = {}
        for w in g.adj[v]:
            if colors[w]:
                counts[colors[w]] = counts.get(colors[w], 0) + 1
        if 1 not in counts.values():
            return False
    return True


def plain_cncf_ok(g, colors):
    for v in range(g.n):
        counts = {}
        for w in (v,) + g.adj[v]:
            if colors[w]:
                counts[colors[w]] = counts.get(colors[w], 0) + 1
        if 1 not in counts.values():
            return False
    return True


def plain_colorable(g, q, closed=False, partial=False, fixed=None):
    """Plain product enumeration, no pruning. Only for very small graphs."""
    check = plain_cncf_ok if closed else plain_oncf_ok
    palette = range(0 if partial else 1, q + 1)
    free = [v for v in range(g.n) if not fixed or v not in fixed]
    for combo in itertools.product(palette, repeat=len(free)):
        colors = [0] * g.n
        for v, c in (fixed or {}).items():
            colors[v] = c
        for v, c in zip(free, combo):
            colors[v] = c
        if check(g, colors):
            return True
    return False


def chromatic_number(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    for k in range(1, g.n + 1):
        for combo in itertools.product(range(k), repeat=g.n):
            if all(combo[u] != combo[v] for u, v in g.edges()):
                return k
    return 0


def rng(seed):
    return random.Random(seed)
