"""Colourings, conflict-free verifiers and exhaustive reference solvers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import FormatError, ResourceLimitError
from .graph import Graph, is_vertex_cover

#: Upper bound on the size of the enumeration space the brute solvers accept.
ENUM_LIMIT = 10**8


@dataclass(frozen=True)
class Coloring:
    """``colors[v]`` is in 1..q, or 0 when v is uncoloured."""

    q: int
    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        for c in self.colors:
            if not 0 <= c <= self.q:
                raise ValueError(f"colour {c} outside 0..{self.q}")

    @property
    def is_total(self) -> bool:
        return all(self.colors)

    def __len__(self):
        return len(self.colors)

    def assigned(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.colors) if c}

    @classmethod
    def partial(cls, n: int, q: int, fixed: Mapping[int, int]) -> "Coloring":
        colors = [0] * n
        for v, c in fixed.items():
            colors[v] = c
        return cls(q, colors)


def _first_bad(g: Graph, colors, closed: bool):
    for v in range(g.n):
        counts = {}
        hood = (v,) + g.adj[v] if closed else g.adj[v]
        for w in hood:
            c = colors[w]
            if c:
                counts[c] = counts.get(c, 0) + 1
        if 1 not in counts.values():
            return v
    return None


def verify_oncf(g: Graph, c: Coloring) -> int | None:
    """First vertex whose open neighbourhood has no uniquely coloured vertex, or None."""
    if len(c) != g.n:
        raise ValueError("colouring length differs from vertex count")
    if not c.is_total:
        raise ValueError("open-neighbourhood verification needs a total colouring")
    return _first_bad(g, c.colors, closed=False)


def verify_cncf(g: Graph, c: Coloring) -> int | None:
    """Like :func:`verify_oncf` on closed neighbourhoods; uncoloured vertices are ignored."""
    if len(c) != g.n:
        raise ValueError("colouring length differs from vertex count")
    return _first_bad(g, c.colors, closed=True)


def is_proper(g: Graph, c: Coloring) -> bool:
    return all(c.colors[u] != c.colors[v] for u, v in g.edges())


# ---------------------------------------------------------------- brute force

def search_coloring(
    g: Graph,
    q: int,
    closed: bool,
    partial: bool = False,
    fixed: Mapping[int, int] | None = None,
) -> tuple | None:
    """Lexicographically first colouring satisfying the conflict-free condition.

    Vertices are assigned in index order with colours tried in increasing
    order (0 first when ``partial``).  A vertex is checked as soon as its whole
    neighbourhood is assigned, so the first hit equals the first hit of plain
    product enumeration.
    """
    n = g.n
    fixed = fixed or {}
    check_at = [[] for _ in range(n)]
    for v in range(n):
        hood = ((v,) if closed else ()) + g.adj[v]
        if not hood:
            return None
        check_at[max(hood)].append(hood)
    palette = tuple(range(0 if partial else 1, q + 1))
    domains = [(fixed[v],) if v in fixed else palette for v in range(n)]
    colors = [0] * n

    def ok(hood):
        seen = once = 0
        for w in hood:
            c = colors[w]
            if c:
                bit = 1 << c
                if seen & bit:
                    once &= ~bit
                else:
                    seen |= bit
                    once |= bit
        return once != 0

    def go(i):
        if i == n:
            return True
        for c in domains[i]:
            colors[i] = c
            if all(ok(h) for h in check_at[i]) and go(i + 1):
                return True
        colors[i] = 0
        return False

    return tuple(colors) if go(0) else None


def _guard(space: int, max_enum: int):
    if space > max_enum:
        raise ResourceLimitError(f"enumeration space {space} exceeds guard {max_enum}")


def brute_chi_on(g: Graph, q_max: int, max_enum: int = ENUM_LIMIT) -> int | None:
    """Least q <= q_max admitting a total q-ONCF-colouring, or None."""
    if g.isolated():
        return None
    _guard(q_max**g.n, max_enum)
    for q in range(1, q_max + 1):
        if search_coloring(g, q, closed=False) is not None:
            return q
    return None


def brute_chi_cn(g: Graph, q_max: int, partial: bool = False, max_enum: int = ENUM_LIMIT) -> int | None:
    """Least q <= q_max admitting a (partial, if flagged) q-CNCF-colouring, or None."""
    _guard((q_max + 1 if partial else q_max) ** g.n, max_enum)
    for q in range(1, q_max + 1):
        if search_coloring(g, q, closed=True, partial=partial) is not None:
            return q
    return None


def brute_extension_cncf(
    g: Graph, s: Iterable[int], pre: Coloring | Mapping[int, int], q: int, max_enum: int = ENUM_LIMIT
) -> bool:
    """Whether the colouring ``pre`` of the cover ``s`` extends to a total q-CNCF-colouring."""
    return extension_witness(g, s, pre, q, max_enum) is not None


def extension_witness(g, s, pre, q, max_enum=ENUM_LIMIT):
    s = sorted(set(s))
    if not is_vertex_cover(g, s):
        raise ValueError("the given set is not a vertex cover")
    given = pre.assigned() if isinstance(pre, Coloring) else dict(pre)
    fixed = {v: given[v] for v in s if given.get(v)}
    if len(fixed) != len(s):
        raise ValueError("the precolouring must colour every cover vertex")
    _guard(q ** (g.n - len(s)), max_enum)
    found = search_coloring(g, q, closed=True, fixed=fixed)
    return None if found is None else Coloring(q, found)


# ---------------------------------------------------------------- file format

def parse_coloring(text: str, n: int, q: int | None = None) -> Coloring:
    """Parse ``<v> <color>`` lines (1-indexed, colour 0 = uncoloured).

    Vertices not listed are uncoloured.  ``q`` defaults to the largest colour.
    """
    colors = [0] * n
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected '<v> <color>', got {line!r}", lineno)
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"non-integer field in {line!r}", lineno) from None
        if not 1 <= v <= n:
            raise FormatError(f"vertex id {v} out of range 1..{n}", lineno)
        if v in seen:
            raise FormatError(f"vertex {v} listed twice", lineno)
        if c < 0 or (q is not None and c > q):
            raise FormatError(f"colour {c} out of range", lineno)
        seen.add(v)
        colors[v - 1] = c
    return Coloring(max(colors, default=0) if q is None else q, colors)


def serialize_coloring(c: Coloring) -> str:
    return "".join(f"{v + 1} {col}\n" for v, col in enumerate(c.colors))
