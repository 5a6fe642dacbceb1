"""Dynamic programming over nice tree decompositions for conflict-free colouring.

A state on a bag X assigns every x in X a colour ``c1[x]``, a target colour
``c2[x]`` that must occur exactly once in the neighbourhood of x, and a flag
``f[x]`` recording whether a vertex of colour ``c2[x]`` has already been
forgotten below.  Tables map ``(c1, c2)`` (tuples in bag order) to the set of
flag bitmasks (bit i belongs to the i-th bag vertex).

Edges between two bag vertices are charged when the first endpoint is
forgotten, so every edge is counted exactly once even below join nodes.
Introduce nodes only reject states that already see ``c2[x]`` twice; forget
nodes demand that the forgotten vertex saw it exactly once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

from .convolution import NEG_INF, subset_convolution_maxsum
from .decomposition import FORGET, INTRODUCE, LEAF, NiceTreeDecomposition
from .errors import ResourceLimitError
from .graph import Graph
from .verify import Coloring

log = logging.getLogger(__name__)

MAX_STATES = 2_000_000
JOIN_CUTOFF = 8


def _insert(t, p, x):
    return t[:p] + (x,) + t[p:]


def _drop(t, p):
    return t[:p] + t[p + 1:]


def _insert_bit(mask, p, bit=0):
    low = mask & ((1 << p) - 1)
    return low | (bit << p) | ((mask >> p) << (p + 1))


def _drop_bit(mask, p):
    low = mask & ((1 << p) - 1)
    return low | ((mask >> (p + 1)) << p)


@lru_cache(maxsize=1 << 18)
def _canon(c1, c2):
    """Rename colours in order of first appearance along (c1[0], c2[0], c1[1], ...)."""
    mp = {}
    renamed = False
    for a, b in zip(c1, c2):
        if a not in mp:
            mp[a] = len(mp) + 1
            renamed |= mp[a] != a
        if b not in mp:
            mp[b] = len(mp) + 1
            renamed |= mp[b] != b
    if not renamed:
        return c1, c2
    return tuple(mp[a] for a in c1), tuple(mp[b] for b in c2)


@dataclass
class _Node:
    kind: str
    bag: tuple
    children: tuple
    vertex: int | None
    pos: int | None                  # position of the introduced/forgotten vertex
    badj: list                       # per bag position: neighbour positions inside the bag
    newly_complete: list = field(default_factory=list)


class ConflictFreeDP:
    """One run of the decision procedure; keeps its tables for witness extraction."""

    def __init__(
        self,
        g: Graph,
        t: NiceTreeDecomposition,
        q: int,
        closed: bool,
        pre: Coloring | dict | None = None,
        max_states: int = MAX_STATES,
        join_cutoff: int = JOIN_CUTOFF,
        check_joins: bool = False,
        symmetry: bool = True,
    ):
        if q < 1:
            raise ValueError("q must be positive")
        self.g, self.t, self.q, self.closed = g, t, q, closed
        self.max_states = max_states
        self.join_cutoff = join_cutoff
        self.check_joins = check_joins
        fixed = pre.assigned() if isinstance(pre, Coloring) else dict(pre or {})
        for v, c in fixed.items():
            if not 1 <= c <= q:
                raise ValueError(f"precoloured vertex {v} has colour {c} outside 1..{q}")
        self.allowed = [(fixed[v],) if fixed.get(v) else tuple(range(1, q + 1)) for v in range(g.n)]
        # without precolouring, colour permutations map solutions to solutions, so
        # tables keep one representative per permutation class
        self.symmetric = symmetry and not any(fixed.values())
        self.options = dict(max_states=max_states, join_cutoff=join_cutoff, check_joins=check_joins)
        self.pre = fixed
        self.tables: list[dict] | None = None
        self.table_sizes: list[int] = []
        self.join_checks = 0
        self.reason = None
        self.accepted = None
        self._prepare()

    # ---------------------------------------------------------------- setup

    def _prepare(self):
        g, t = self.g, self.t
        nbr = [set(a) for a in g.adj]
        nbrmask = [sum(1 << w for w in a) for a in g.adj]
        below = []
        complete = []
        self.nodes = []
        for i, kind in enumerate(t.kinds):
            bag = t.bags[i]
            ch = t.children[i]
            v = t.vertex[i]
            if kind == LEAF:
                seen = sum(1 << x for x in bag)
            elif kind == INTRODUCE:
                seen = below[ch[0]] | (1 << v)
            elif kind == FORGET:
                seen = below[ch[0]]
            else:
                seen = below[ch[0]] | below[ch[1]]
            below.append(seen)
            done = {x for x in bag if nbrmask[x] & ~seen == 0}
            complete.append(done)
            before = set().union(*(complete[c] for c in ch)) if ch else set()
            if kind == INTRODUCE:
                pos = bag.index(v)
            elif kind == FORGET:
                pos = t.bags[ch[0]].index(v)
            else:
                pos = None
            badj = [[j for j, y in enumerate(bag) if y in nbr[x]] for x in bag]
            fresh = [bag.index(x) for x in sorted(done - before)] if kind != FORGET else []
            self.nodes.append(_Node(kind, bag, ch, v, pos, badj, fresh))

    # ---------------------------------------------------------------- helpers

    def _pending_at(self, c1, c2, badj, x):
        """How often bag vertex x already sees its target colour inside the bag."""
        want = c2[x]
        k = 1 if self.closed and c1[x] == want else 0
        for y in badj[x]:
            if c1[y] == want:
                k += 1
        return k

    def _prune_complete(self, table, node):
        """Drop states in which a vertex with no unseen neighbours can never be satisfied."""
        if not node.newly_complete:
            return table
        out = {}
        badj = node.badj
        for key, masks in table.items():
            c1, c2 = key
            need = 0
            for x in node.newly_complete:
                if not self._pending_at(c1, c2, badj, x):
                    need |= 1 << x
            kept = {m for m in masks if m & need == need} if need else masks
            if kept:
                out[key] = kept
        return out

    # ---------------------------------------------------------------- node rules

    def _leaf(self, node):
        (z,) = node.bag if len(node.bag) == 1 else (None,)
        if z is None:
            raise ValueError("leaf bags must hold exactly one vertex")
        if self.symmetric:
            return {((1,), (b,)): {0} for b in range(1, min(2, self.q) + 1)}
        return {((a,), (b,)): {0} for a in self.allowed[z] for b in range(1, self.q + 1)}

    def _introduce(self, node, child):
        p = node.pos
        v = node.vertex
        nbrs = node.badj[p]
        # neighbour positions of v expressed in the child's bag order
        child_nbrs = [j if j < p else j - 1 for j in nbrs]
        child_badj = [
            [(y if y < p else y - 1) for y in nb if y != p] for x, nb in enumerate(node.badj) if x != p
        ]
        closed = self.closed
        q = self.q
        symmetric = self.symmetric
        pending_at = self._pending_at
        out = {}
        for (c1, c2), masks in child.items():
            if symmetric:
                used = max(max(c1), max(c2))
                colours_a = range(1, min(used + 1, q) + 1)
            else:
                colours_a = self.allowed[v]
            for a in colours_a:
                # neighbours whose target colour is a gain a second sighting unless untouched so far
                hit = 0
                ok = True
                for w in child_nbrs:
                    if c2[w] == a:
                        if pending_at(c1, c2, child_badj, w):
                            ok = False
                            break
                        hit |= 1 << w
                if not ok:
                    continue
                good = [m for m in masks if m & hit == 0] if hit else masks
                if not good:
                    continue
                nc1 = _insert(c1, p, a)
                new_masks = {_insert_bit(m, p) for m in good}
                top = min(max(used, a) + 1, q) if symmetric else q
                for b in range(1, top + 1):
                    seen = 1 if closed and a == b else 0
                    for w in child_nbrs:
                        if c1[w] == b:
                            seen += 1
                    if seen > 1:
                        continue
                    key = (nc1, _insert(c2, p, b))
                    if symmetric:
                        key = _canon(*key)
                        if key in out:
                            out[key] = out[key] | new_masks
                            continue
                    out[key] = new_masks
        return out

    def _forget(self, node, child_node, child):
        p = node.pos
        nbrs = child_node.badj[p]
        closed = self.closed
        out = {}
        for (c1, c2), masks in child.items():
            a, b = c1[p], c2[p]
            seen = 1 if closed and a == b else 0
            promo = 0
            for w in nbrs:
                if c1[w] == b:
                    seen += 1
                if c2[w] == a:
                    promo |= 1 << w
            key = (_drop(c1, p), _drop(c2, p))
            if self.symmetric:
                key = _canon(*key)
            bit = 1 << p
            for m in masks:
                if seen + (1 if m & bit else 0) != 1 or m & promo:
                    continue
                out.setdefault(key, set()).add(_drop_bit(m | promo, p))
        return out

    def _join(self, node, left, right):
        out = {}
        width = len(node.bag)
        fast = width > self.join_cutoff
        for key, lm in left.items():
            rm = right.get(key)
            if not rm:
                continue
            merged = self._merge_fast(lm, rm, width) if fast else self._merge_naive(lm, rm)
            if self.check_joins:
                other = self._merge_naive(lm, rm) if fast else self._merge_fast(lm, rm, width)
                if other != merged:
                    raise AssertionError(f"join merge mismatch at key {key}")
                self.join_checks += 1
            if merged:
                out[key] = merged
        return out

    @staticmethod
    def _merge_naive(lm, rm):
        return {a | b for a in lm for b in rm if a & b == 0}

    @staticmethod
    def _merge_fast(lm, rm, width):
        size = 1 << width
        f = [NEG_INF] * size
        h = [NEG_INF] * size
        for m in lm:
            f[m] = 1
        for m in rm:
            h[m] = 1
        conv = subset_convolution_maxsum(f, h, width)
        return {y for y, val in enumerate(conv) if val == 2}

    # ---------------------------------------------------------------- driver

    def run(self) -> bool:
        g = self.g
        if g.n == 0:
            self.reason = "empty graph"
            return True
        if not self.closed and g.isolated():
            self.reason = "isolated vertex"
            log.info("no open-neighbourhood colouring: vertex %d is isolated", g.isolated()[0])
            return False
        tables = []
        for i, node in enumerate(self.nodes):
            if node.kind == LEAF:
                table = self._leaf(node)
            elif node.kind == INTRODUCE:
                table = self._introduce(node, tables[node.children[0]])
            elif node.kind == FORGET:
                c = node.children[0]
                table = self._forget(node, self.nodes[c], tables[c])
            else:
                table = self._join(node, tables[node.children[0]], tables[node.children[1]])
            table = self._prune_complete(table, node)
            size = sum(len(s) for s in table.values())
            if size > self.max_states:
                raise ResourceLimitError(f"node {i} holds {size} states, above the limit {self.max_states}")
            self.table_sizes.append(size)
            tables.append(table)
        self.tables = tables
        root = self.nodes[-1]
        if len(root.bag) != 1:
            raise ValueError("the root bag must hold a single vertex")
        for key in sorted(tables[-1]):
            c1, c2 = key
            own = 1 if self.closed and c1[0] == c2[0] else 0
            for m in sorted(tables[-1][key]):
                if (m & 1) + own == 1:
                    self.accepted = (key, m)
                    return True
        self.reason = "no accepting root state"
        return False

    # ---------------------------------------------------------------- traceback

    def witness(self) -> Coloring | None:
        if self.symmetric:
            # the traceback works on the plain tables
            plain = ConflictFreeDP(self.g, self.t, self.q, self.closed, self.pre, symmetry=False, **self.options)
            return plain.witness()
        if self.tables is None and not self.run():
            return None
        if self.accepted is None:
            return None
        colors = [0] * self.g.n
        stack = [(len(self.nodes) - 1, self.accepted)]
        while stack:
            i, (key, m) = stack.pop()
            node = self.nodes[i]
            for x, c in zip(node.bag, key[0]):
                colors[x] = c
            if node.kind == LEAF:
                continue
            if node.kind == INTRODUCE:
                p = node.pos
                state = ((_drop(key[0], p), _drop(key[1], p)), _drop_bit(m, p))
                assert state[1] in self.tables[node.children[0]][state[0]]
                stack.append((node.children[0], state))
            elif node.kind == FORGET:
                stack.append((node.children[0], self._forget_source(node, key, m)))
            else:
                left, right = (self.tables[c][key] for c in node.children)
                a = min(x for x in left if x & ~m == 0 and (m ^ x) in right)
                stack.append((node.children[0], (key, a)))
                stack.append((node.children[1], (key, m ^ a)))
        return Coloring(self.q, colors)

    def _forget_source(self, node, key, m):
        c = node.children[0]
        child_node, child = self.nodes[c], self.tables[c]
        p = node.pos
        for a in range(1, self.q + 1):
            for b in range(1, self.q + 1):
                ckey = (_insert(key[0], p, a), _insert(key[1], p, b))
                masks = child.get(ckey)
                if not masks:
                    continue
                for g in sorted(masks):
                    produced = self._forget(node, child_node, {ckey: {g}})
                    if produced.get(key) == {m}:
                        return ckey, g
        raise AssertionError("traceback lost its predecessor")


def dp_oncf(g: Graph, t: NiceTreeDecomposition, q: int, pre=None, **options) -> bool:
    """Whether ``g`` has a q-colouring where every open neighbourhood has a unique colour."""
    return ConflictFreeDP(g, t, q, closed=False, pre=pre, **options).run()


def dp_cncf(g: Graph, t: NiceTreeDecomposition, q: int, pre=None, **options) -> bool:
    """Closed-neighbourhood counterpart of :func:`dp_oncf`."""
    return ConflictFreeDP(g, t, q, closed=True, pre=pre, **options).run()


def extract_witness(g: Graph, t: NiceTreeDecomposition, q: int, pre=None, mode: str = "oncf", **options):
    """A verifying total colouring, or None on a no-instance."""
    if mode not in ("oncf", "cncf"):
        raise ValueError("mode must be 'oncf' or 'cncf'")
    solver = ConflictFreeDP(g, t, q, closed=(mode == "cncf"), pre=pre, **options)
    if not solver.run():
        return None
    return solver.witness()
