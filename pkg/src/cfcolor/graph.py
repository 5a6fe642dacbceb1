"""Simple undirected graphs, the .gr edge-list format and small exact solvers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FormatError, ResourceLimitError

VC_MAX_N = 64
FVS_MAX_N = 40


@dataclass(frozen=True)
class Graph:
    """Vertices are 0..n-1; ``adj[v]`` is the sorted tuple of neighbours."""

    n: int
    adj: tuple

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def closed(self, v: int) -> tuple:
        return tuple(sorted((v,) + self.adj[v]))

    def isolated(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Subgraph on ``keep`` relabelled 0..k-1 in increasing order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges() if u in new_id and v in new_id]
        return Graph.from_edges(len(old), edges), old

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted lists) of the subgraph induced by ``within``."""
        allowed = set(range(self.n)) if within is None else set(within)
        seen = set()
        comps = []
        for s in sorted(allowed):
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w in allowed and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    cover = set(s)
    return all(u in cover or v in cover for u, v in g.edges())


def is_forest(g: Graph, removed: Iterable[int] = ()) -> bool:
    gone = set(removed)
    alive = [v for v in range(g.n) if v not in gone]
    m = sum(1 for u, v in g.edges() if u not in gone and v not in gone)
    return m == len(alive) - len(g.components(alive))


# ---------------------------------------------------------------- file formats

def parse_graph(text: str) -> Graph:
    """Parse the .gr edge-list format (1-indexed, ``p cf <n> <m>`` header)."""
    n = expected_m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 4 or parts[:2] != ["p", "cf"]:
                raise FormatError(f"expected header 'p cf <n> <m>', got {line!r}", lineno)
            try:
                n, expected_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"non-integer header field in {line!r}", lineno) from None
            if n < 0 or expected_m < 0:
                raise FormatError("negative count in header", lineno)
            continue
        if len(parts) != 2:
            raise FormatError(f"expected '<u> <v>', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex id out of range 1..{n} in {line!r}", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing 'p cf' header")
    if len(edges) != expected_m:
        raise FormatError(f"header announces {expected_m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    edges = g.edges()
    lines.append(f"p cf {g.n} {len(edges)}")
    lines.extend(f"{u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str, n: int | None = None) -> list[int]:
    out = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            v = int(line)
        except ValueError:
            raise FormatError(f"expected a vertex id, got {line!r}", lineno) from None
        if v < 1 or (n is not None and v > n):
            raise FormatError(f"vertex id {v} out of range", lineno)
        out.add(v - 1)
    return sorted(out)


def serialize_vertex_set(s: Iterable[int]) -> str:
    return "".join(f"{v + 1}\n" for v in sorted(s))


# ---------------------------------------------------------------- exact solvers

def min_vertex_cover(g: Graph, max_n: int = VC_MAX_N) -> list[int]:
    """Minimum vertex cover by branch and bound on bitmasks."""
    if g.n > max_n:
        raise ResourceLimitError(f"min_vertex_cover: n={g.n} exceeds guard {max_n}")
    nb = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    best = [bin((1 << g.n) - 1).count("1") + 1, 0]

    def matching_bound(alive):
        # size of a greedy maximal matching is a lower bound
        count = 0
        rest = alive
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= ~(1 << v)
            others = nb[v] & rest
            if others:
                w = (others & -others).bit_length() - 1
                rest &= ~(1 << w)
                count += 1
        return count

    def solve(alive, chosen, size):
        # drop vertices without live neighbours, take forced neighbours of degree-1 vertices
        changed = True
        while changed:
            changed = False
            rest = alive
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if not alive >> v & 1:
                    continue
                live = nb[v] & alive
                if not live:
                    alive &= ~(1 << v)
                    changed = True
                elif live & (live - 1) == 0:
                    w = live.bit_length() - 1
                    alive &= ~(1 << v) & ~(1 << w)
                    chosen |= 1 << w
                    size += 1
                    changed = True
        if size >= best[0]:
            return
        if not alive:
            best[0], best[1] = size, chosen
            return
        if size + matching_bound(alive) >= best[0]:
            return
        v = max(_bits(alive), key=lambda x: (bin(nb[x] & alive).count("1"), -x))
        live = nb[v] & alive
        solve(alive & ~(1 << v), chosen | 1 << v, size + 1)
        solve(alive & ~live & ~(1 << v), chosen | live, size + bin(live).count("1"))

    solve((1 << g.n) - 1, 0, 0)
    return _bits(best[1])


def min_fvs(g: Graph, max_n: int = FVS_MAX_N) -> list[int]:
    """Minimum feedback vertex set by iterative deepening over the solution size."""
    if g.n > max_n:
        raise ResourceLimitError(f"min_fvs: n={g.n} exceeds guard {max_n}")
    for k in range(g.n + 1):
        found = _fvs_at_most(g, frozenset(range(g.n)), k)
        if found is not None:
            assert is_forest(g, found)
            return sorted(found)
    raise AssertionError("unreachable")


def _fvs_at_most(g: Graph, alive: frozenset, k: int):
    """Return a FVS of g[alive] with at most k vertices, or None."""
    alive = set(alive)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in alive}
    queue = [v for v in alive if deg[v] <= 1]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    if not alive:
        return set()
    if k == 0:
        return None
    # a forest on the remaining vertices has fewer than |alive| edges
    if k >= len(alive):
        return set(alive)
    m = sum(deg[v] for v in alive) // 2
    top = sorted((deg[v] for v in alive), reverse=True)
    if m - sum(top[:k]) > len(alive) - k - 1:
        return None
    cycle = _short_cycle(g, alive)
    for v in cycle:
        sub = _fvs_at_most(g, frozenset(alive - {v}), k - 1)
        if sub is not None:
            return sub | {v}
    return None


def _short_cycle(g: Graph, alive: set) -> list[int]:
    """A shortest cycle through some vertex, found by BFS from each vertex."""
    best = None
    for s in sorted(alive):
        parent = {s: None}
        dist = {s: 0}
        queue = deque([s])
        hit = None
        while queue and hit is None:
            u = queue.popleft()
            for w in g.adj[u]:
                if w not in alive or w == parent[u]:
                    continue
                if w in dist:
                    hit = (u, w)
                    break
                parent[w] = u
                dist[w] = dist[u] + 1
                queue.append(w)
        if hit is None:
            continue
        u, w = hit
        pu, pw = [u], [w]
        while pu[-1] != s:
            pu.append(parent[pu[-1]])
        while pw[-1] != s:
            pw.append(parent[pw[-1]])
        common = set(pu) & set(pw)
        cyc = [x for x in pu if x not in common] + [x for x in pw if x not in common]
        meet = next(x for x in pu if x in common)
        cyc.append(meet)
        if best is None or len(cyc) < len(best):
            best = cyc
            if len(best) == 3:
                break
    assert best is not None, "graph with minimum degree 2 must contain a cycle"
    return best


def classify_star(g: Graph) -> str:
    """Return ``"star"``, ``"edge-star"`` or ``"neither"``.

    K_2 counts as a star (either endpoint is a centre).
    """
    if g.n < 2:
        raise ValueError("classify_star needs at least two vertices")
    if not g.is_connected():
        raise ValueError("classify_star needs a connected graph")
    m = g.m
    for c in range(g.n):
        if g.degree(c) == g.n - 1 and m == g.n - 1:
            return "star"
    for u, v in g.edges():
        if all(set(g.adj[w]) == {u, v} for w in range(g.n) if w not in (u, v)):
            return "edge-star"
    return "neither"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
