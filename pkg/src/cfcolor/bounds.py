"""Constructive open-neighbourhood conflict-free colourings with guaranteed colour counts.

* ``color_via_td``: at most 2w+1 colours from a nice decomposition of width w.
* ``color_via_fvs``: at most |X|+3 colours from a feedback vertex set X.
* ``color_via_vc``: at most |S|+1 colours from a vertex cover S, and at most
  |S| unless the graph is a star or an edge-star.

Every result is checked with :func:`verify_oncf` before it is returned; a
failure raises ``AssertionError`` rather than handing back a bad colouring.
"""

from __future__ import annotations

from .decomposition import NiceTreeDecomposition, check_nice, heuristic_td, make_nice
from .dp import extract_witness
from .graph import Graph, classify_star, is_forest, is_vertex_cover
from .verify import Coloring, verify_oncf


def _require_no_isolated(g: Graph):
    if g.n == 0:
        raise ValueError("graph has no vertices")
    iso = g.isolated()
    if iso:
        raise ValueError(f"vertex {iso[0]} is isolated, so no open-neighbourhood colouring exists")


def _checked(g: Graph, colors, q: int) -> Coloring:
    c = Coloring(q, colors)
    bad = verify_oncf(g, c)
    if bad is not None:
        raise AssertionError(f"constructed colouring fails at vertex {bad}")
    return c


def _compact(colors) -> tuple[list[int], int]:
    """Renumber the used colours to 1..k in order of their first use."""
    mp = {}
    out = []
    for c in colors:
        if c not in mp:
            mp[c] = len(mp) + 1
        out.append(mp[c])
    return out, len(mp)


# ---------------------------------------------------------------- tree decomposition

def color_via_td(g: Graph, t: NiceTreeDecomposition) -> Coloring:
    """Proper conflict-free colouring with at most 2*width(t)+1 colours.

    Walks the decomposition from the root.  A vertex is coloured when it
    first shows up, avoiding the colours of the bag it joins and the colours
    already promised as unique witnesses to that bag's vertices.
    """
    _require_no_isolated(g)
    broken = check_nice(t)
    if broken:
        raise ValueError(f"decomposition is not nice: {broken}")
    palette = 2 * t.width + 1
    color = [0] * g.n
    witness = [0] * g.n     # colour promised to appear exactly once around v; 0 = none yet

    root_bag = sorted(t.bags[t.root])
    for i, v in enumerate(root_bag):
        color[v] = i + 1
    for v in root_bag:
        nb = [u for u in root_bag if g.has_edge(u, v)]
        if nb:
            witness[v] = color[nb[0]]

    for i in reversed(range(len(t.kinds))):
        parent_bag = sorted(t.bags[i])
        for c in t.children[i]:
            for v in sorted(t.bags[c]):
                if color[v]:
                    continue
                taken = {color[u] for u in parent_bag} | {witness[u] for u in parent_bag}
                color[v] = min(x for x in range(1, palette + 1) if x not in taken)
                nb = [u for u in parent_bag if g.has_edge(u, v)]
                for u in nb:
                    if not witness[u]:
                        witness[u] = color[v]
                if nb:
                    witness[v] = color[nb[0]]
    if not all(color):
        raise ValueError("decomposition does not cover every vertex")
    return _checked(g, color, palette)


def color_via_td_auto(g: Graph) -> Coloring:
    """``color_via_td`` on a min-fill decomposition kept at its own width."""
    return color_via_td(g, make_nice(g, heuristic_td(g), augment=False))


# ---------------------------------------------------------------- feedback vertex set

def _two_colour_tree(g: Graph, part: list[int]) -> dict[int, int]:
    sub, ids = g.induced(part)
    t = make_nice(sub, heuristic_td(sub))
    w = extract_witness(sub, t, 2)
    if w is None:
        raise AssertionError(f"tree component {ids} has no 2-colouring of the required kind")
    return {ids[i]: c for i, c in enumerate(w.colors)}


def color_via_fvs(g: Graph, x) -> Coloring:
    """Conflict-free colouring with at most |x|+3 colours.

    Colour numbering: the vertices of x in increasing order get 1..|x|, then
    come the three shared colours r, g and b.
    """
    _require_no_isolated(g)
    xs = sorted(set(x))
    if any(not 0 <= v < g.n for v in xs):
        raise ValueError("feedback vertex set mentions a vertex outside the graph")
    if not is_forest(g, xs):
        raise ValueError("the given set is not a feedback vertex set")
    own = {v: i + 1 for i, v in enumerate(xs)}
    R, G, B = len(xs) + 1, len(xs) + 2, len(xs) + 3
    in_x = set(xs)
    color = [0] * g.n

    lonely = {v for v in xs if not any(u in in_x for u in g.adj[v])}
    left = set(lonely)
    for v in xs:
        if v not in left:
            color[v] = own[v]

    for comp in g.components(within=[v for v in range(g.n) if v not in in_x]):
        if len(comp) == 1:
            color[comp[0]] = G
        else:
            for v, c in _two_colour_tree(g, comp).items():
                color[v] = G if c == 1 else B

    # a vertex whose whole neighbourhood is still unsettled takes over one of their colours
    while True:
        u = next((u for u in range(g.n) if u not in in_x and set(g.adj[u]) <= left), None)
        if u is None:
            break
        for v in g.adj[u]:
            color[v] = own[v]
        left -= set(g.adj[u])
        color[u] = own[min(g.adj[u])]

    marked = {own[v] for v in left}
    for v in sorted(left):
        color[v] = R
        if not any(color[u] in marked for u in g.adj[v]):
            color[min(g.adj[v])] = own[v]
    return _checked(g, color, len(xs) + 3)


# ---------------------------------------------------------------- vertex cover

def color_via_vc(g: Graph, s) -> Coloring:
    """Conflict-free colouring from a vertex cover s.

    Uses at most |s| colours, or |s|+1 for stars and edge-stars.  Colour
    numbering follows the cover in increasing vertex order.
    """
    _require_no_isolated(g)
    cover = sorted(set(s))
    if any(not 0 <= v < g.n for v in cover) or not is_vertex_cover(g, cover):
        raise ValueError("the given set is not a vertex cover")
    if not g.is_connected():
        raise ValueError("color_via_vc needs a connected graph")

    kind = classify_star(g)
    if kind == "star":
        centre = max(range(g.n), key=lambda v: (g.degree(v), -v))
        colors = [1] * g.n
        colors[min(g.adj[centre])] = 2
        return _checked(g, colors, 2)
    if kind == "edge-star":
        u, v = next((a, b) for a, b in g.edges() if all(set(g.adj[w]) == {a, b} for w in range(g.n) if w not in (a, b)))
        colors = [3] * g.n
        colors[u], colors[v] = 1, 2
        return _checked(g, colors, 3)

    colors = _cover_colouring(g, cover)
    compact, used = _compact(colors)
    if used > len(cover):
        raise AssertionError("cover colouring used more colours than the cover size")
    return _checked(g, compact, len(cover))


def _cover_colouring(g: Graph, cover: list[int]) -> list[int]:
    own = {v: i + 1 for i, v in enumerate(cover)}
    in_s = set(cover)
    comps = g.components(within=cover)
    big = [c for c in comps if len(c) >= 3]
    pairs = [sorted(c) for c in comps if len(c) == 2]
    singles = sorted(c[0] for c in comps if len(c) == 1)
    colors = [0] * g.n

    def pick_for_singles(prefer=None):
        # each isolated cover vertex marks one outside neighbour with its own colour
        for u in singles:
            options = g.adj[u]
            if prefer and u in prefer:
                options = prefer[u]
            colors[min(options)] = own[u]

    if len(cover) == 2 and len(pairs) == 1:
        u, v = cover
        # one endpoint has a private degree-1 neighbour
        for a, b in ((u, v), (v, u)):
            private = [w for w in g.adj[a] if w not in in_s and g.degree(w) == 1]
            if private:
                red, blue = 1, 2
                colors = [blue] * g.n
                colors[a] = colors[private[0]] = red
                return colors
        raise AssertionError("a two-vertex cover edge without a private leaf is an edge-star")

    for v in cover:
        colors[v] = own[v]

    if big:
        comp = min(big, key=min)
        v_star = _removable_vertex(g, comp)
        pick_for_singles()
        bulk = own[v_star]

    elif not pairs:
        hub = next(x for x in range(g.n) if x not in in_s and g.degree(x) >= 2)
        u_star, w_star = sorted(g.adj[hub])[:2]
        colors[hub] = own[u_star]
        singles = [u for u in singles if u not in (u_star, w_star)]
        pick_for_singles()
        bulk = own[w_star]

    else:
        exact = {tuple(p): [x for x in range(g.n) if x not in in_s and sorted(g.adj[x]) == p] for p in pairs}
        lacking = [p for p in pairs if not exact[tuple(p)]]
        if lacking:
            # both ends share one colour; they witness each other
            u_star, v_star = lacking[0]
            colors[v_star] = own[u_star]
            pick_for_singles()
            bulk = own[v_star]
        else:
            u_star, v_star = pairs[0]
            x = exact[(u_star, v_star)][0]
            bulk = own[u_star]
            if len(pairs) > 1:
                colors[x] = own[pairs[1][0]]
                pick_for_singles()
            else:
                # the extra colour comes from an isolated cover vertex whose own mark
                # must stay away from v*, or else x falls back to the bulk colour
                w_star = singles[0]
                away = [y for y in g.adj[w_star] if not g.has_edge(y, v_star)]
                if away:
                    colors[x] = own[w_star]
                    pick_for_singles({w_star: away})
                else:
                    pick_for_singles()
    return [c or bulk for c in colors]


def _removable_vertex(g: Graph, comp: list[int]) -> int:
    """A vertex of the connected set ``comp`` whose removal keeps it connected (last in BFS order)."""
    inside = set(comp)
    start = min(comp)
    order, seen = [start], {start}
    for v in order:
        for w in g.adj[v]:
            if w in inside and w not in seen:
                seen.add(w)
                order.append(w)
    return order[-1]
