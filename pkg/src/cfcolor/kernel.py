"""Kernels for two-colour closed-neighbourhood colouring, parameterised by a vertex cover.

``kernelize_2cncf`` compresses a graph into a boolean polynomial-root CSP over
O(k^2) variables with O(k^6) constraints.  ``kernelize_extension`` shrinks a
precoloured-cover extension instance to O(k^2) vertices.

Polynomials are multilinear (x*x = x, exact over {0,1}) with ``Fraction``
coefficients.  No floating point is used anywhere in this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import FormatError, ResourceLimitError
from .graph import Graph, is_vertex_cover
from .verify import Coloring

CSP_MAX_VARS = 24
RED, BLUE = 1, 2


# ---------------------------------------------------------------- polynomials

def _monomial_key(m):
    return (len(m), sorted(m))


class Polynomial:
    """Multilinear polynomial: ``terms`` maps frozenset of variable names to a nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[frozenset(mono)] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({frozenset(): c})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({frozenset([name]): 1})

    @staticmethod
    def _lift(other):
        return other if isinstance(other, Polynomial) else Polynomial.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 | m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            parts.append(f"{c}" + "".join(f"*{v}" for v in sorted(m)))
        return " + ".join(parts)

    def sorted_terms(self):
        """Terms in graded lexicographic order of their monomials."""
        return sorted(self.terms.items(), key=lambda t: _monomial_key(t[0]))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def variables(self) -> set[str]:
        return set().union(*self.terms) if self.terms else set()

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, assignment) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            if all(assignment[v] for v in m):
                total += c
        return total

    def substitute(self, mapping) -> "Polynomial":
        """Replace variables by polynomials (names missing from ``mapping`` stay)."""
        out = Polynomial()
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for v in m:
                if v in mapping:
                    term = term * mapping[v]
                else:
                    rest.append(v)
            out = out + term * Polynomial({frozenset(rest): 1})
        return out


def _sum_vars(names) -> Polynomial:
    return Polynomial({frozenset([n]): 1 for n in names})


# ---------------------------------------------------------------- instances

@dataclass
class CspInstance:
    """Constraints ``p = 0`` over boolean variables.

    ``tags`` (parallel to ``constraints``) record which rule created each
    constraint as ``(rule, input vertex id)``; they steer the partition before reduction.
    """

    variables: list[str]
    constraints: list[Polynomial]
    tags: list = field(default_factory=list)

    def __post_init__(self):
        if not self.tags:
            self.tags = [None] * len(self.constraints)
        if len(self.tags) != len(self.constraints):
            raise ValueError("tags must run parallel to constraints")
        known = set(self.variables)
        for p in self.constraints:
            extra = p.variables() - known
            if extra:
                raise ValueError(f"constraint mentions unknown variables {sorted(extra)}")


@dataclass
class MarkedGraph:
    """Kernel graph with its cover, marked vertices and (for extensions) a cover precolouring.

    Vertex ids are local to ``graph``; ``origin[i]`` is the input id of local vertex i.
    """

    graph: Graph
    cover: list[int]
    marked: list[int]
    origin: list[int]
    pre: Coloring | None = None


def _r(v):
    return f"r_{v}"


def _b(v):
    return f"b_{v}"


# ---------------------------------------------------------------- generalized kernel

def preprocess_mark(g: Graph, s) -> MarkedGraph:
    """Keep at most three outside vertices per neighbourhood of size 1 or 2; drop the other low-degree ones."""
    cover = sorted(set(s))
    if not is_vertex_cover(g, cover):
        raise ValueError("the given set is not a vertex cover")
    in_s = set(cover)
    groups: dict[tuple, list[int]] = {}
    for v in range(g.n):
        # isolated vertices satisfy themselves and touch nobody, so they go
        if v not in in_s and 1 <= g.degree(v) <= 2:
            groups.setdefault(tuple(sorted(g.adj[v])), []).append(v)
    marked = sorted(v for members in groups.values() for v in members[:3])
    keep = sorted(in_s | set(marked) | {v for v in range(g.n) if v not in in_s and g.degree(v) >= 3})
    sub, origin = g.induced(keep)
    local = {v: i for i, v in enumerate(origin)}
    return MarkedGraph(sub, [local[v] for v in cover], [local[v] for v in marked], origin)


def build_csp(mg: MarkedGraph) -> CspInstance:
    g, name = mg.graph, mg.origin
    special = set(mg.cover) | set(mg.marked)
    variables = [x for v in range(g.n) for x in (_r(name[v]), _b(name[v]))]
    constraints, tags = [], []
    for v in range(g.n):
        constraints.append(Polynomial.var(_r(name[v])) + Polynomial.var(_b(name[v])) - 1)
        tags.append(("colour", name[v]))
    for v in range(g.n):
        hood = g.closed(v)
        reds = _sum_vars(_r(name[u]) for u in hood)
        blues = _sum_vars(_b(name[u]) for u in hood)
        constraints.append((reds - 1) * (blues - 1))
        tags.append(("unique", name[v]))
    for v in range(g.n):
        if v in special:
            continue
        d = g.degree(v)
        x = _sum_vars(_r(name[u]) for u in g.adj[v])
        constraints.append(x * (x - 1) * (x - (d - 1)) * (x - d))
        tags.append(("balance", name[v]))
    return CspInstance(variables, constraints, tags)


def g_eval(x, n: int) -> Fraction:
    """-(n - x)(x - 1)(n - 2(x + 1)) / (n (n - 2)): 1 at x = 0 and n-1, 0 at x = 1 and n."""
    if n in (0, 2):
        raise ZeroDivisionError(f"g is undefined for N = {n}")
    x = Fraction(x)
    return -(n - x) * (x - 1) * (n - 2 * (x + 1)) / (n * (n - 2))


def _g_poly(x: Polynomial, n: int) -> Polynomial:
    if n in (0, 2):
        raise ZeroDivisionError(f"g is undefined for N = {n}")
    return (n - x) * (x - 1) * (n - 2 * (x + 1)) * Fraction(-1, n * (n - 2))


def substitute_outside_vars(csp: CspInstance, mg: MarkedGraph) -> CspInstance:
    """Eliminate the variables of unmarked outside vertices via their neighbourhood colour counts."""
    g, name = mg.graph, mg.origin
    cover = set(mg.cover)
    special = cover | set(mg.marked)
    mapping = {}
    for v in range(g.n):
        if v in special:
            continue
        if any(u not in cover for u in g.adj[v]):
            raise AssertionError(f"vertex {name[v]} has a neighbour outside the cover")
        if g.degree(v) < 3:
            raise AssertionError(f"unmarked vertex {name[v]} has degree below three")
        f = _g_poly(_sum_vars(_r(name[u]) for u in g.adj[v]), g.degree(v))
        mapping[_r(name[v])] = f
        mapping[_b(name[v])] = 1 - f
    if not mapping:
        return csp
    kept = [x for v in sorted(special) for x in (_r(name[v]), _b(name[v]))]
    constraints, tags = [], []
    for p, tag in zip(csp.constraints, csp.tags):
        q = p.substitute(mapping)
        if not q.is_zero():
            constraints.append(q)
            tags.append(tag)
    return CspInstance(kept, constraints, tags)


def reduce_constraints(csp: CspInstance, d: int) -> CspInstance:
    """Keep a subset of constraints whose coefficient vectors span all of them.

    Every boolean assignment zeroing the kept polynomials zeroes the dropped
    ones, since those are rational combinations of the kept.
    """
    for p in csp.constraints:
        if p.degree > d:
            raise ValueError(f"constraint of degree {p.degree} exceeds {d}")
    basis: list[tuple[frozenset, dict]] = []     # (pivot monomial, integer row)
    keep = []
    for i, p in enumerate(csp.constraints):
        row = _integer_row(p)
        for pivot, b in basis:
            c = row.get(pivot)
            if c:
                a = b[pivot]
                row = _combine(row, a, b, -c)
        if row:
            pivot = max(row, key=_monomial_key)
            basis.append((pivot, row))
            keep.append(i)
    n = len(csp.variables)
    if len(keep) > n**d + 1:
        raise AssertionError("basis larger than the monomial space")
    return CspInstance(list(csp.variables), [csp.constraints[i] for i in keep], [csp.tags[i] for i in keep])


def _integer_row(p: Polynomial) -> dict:
    den = lcm(*(c.denominator for c in p.terms.values())) if p.terms else 1
    return {m: int(c * den) for m, c in p.terms.items()}


def _combine(row, a, other, c):
    """a*row + c*other, divided by the gcd of the result."""
    out = {m: a * v for m, v in row.items()}
    for m, v in other.items():
        out[m] = out.get(m, 0) + c * v
    out = {m: v for m, v in out.items() if v}
    common = 0
    for v in out.values():
        common = gcd(common, v)
    if common > 1:
        out = {m: v // common for m, v in out.items()}
    return out


def kernelize_2cncf(g: Graph, s) -> CspInstance:
    """Graph plus vertex cover to an equivalent boolean polynomial CSP over the cover and marked vertices."""
    mg = preprocess_mark(g, s)
    csp = substitute_outside_vars(build_csp(mg), mg)
    marked_vars = {x for v in mg.marked for x in (_r(mg.origin[v]), _b(mg.origin[v]))}
    cover_vars = [x for v in mg.cover for x in (_r(mg.origin[v]), _b(mg.origin[v]))]
    cover = {mg.origin[v] for v in mg.cover}
    by_cover, touching, rest = [], [], []
    for p, tag in zip(csp.constraints, csp.tags):
        if tag[0] == "unique" and tag[1] in cover:
            by_cover.append((p, tag))
        elif p.variables() & marked_vars:
            touching.append((p, tag))
        else:
            rest.append((p, tag))

    def part(items, variables):
        return CspInstance(variables, [p for p, _ in items], [t for _, t in items])

    low = reduce_constraints(part(touching, csp.variables), 2)
    high = reduce_constraints(part(rest, cover_vars), 6)
    out = by_cover + list(zip(low.constraints, low.tags)) + list(zip(high.constraints, high.tags))
    return part(out, csp.variables)


def kernel_size_bound(csp: CspInstance, k: int) -> int:
    """Constraint budget for a kernel over cover size k: |V'|^2 + 1 + (2k)^6 + 1 + k."""
    return len(csp.variables) ** 2 + 1 + (2 * k) ** 6 + 1 + k


def find_csp_assignment(csp: CspInstance, max_vars: int = CSP_MAX_VARS) -> dict | None:
    """First satisfying 0/1 assignment in lexicographic order of ``csp.variables``, or None."""
    names = list(csp.variables)
    if len(names) > max_vars:
        raise ResourceLimitError(f"{len(names)} variables exceed the brute-force guard of {max_vars}")
    pos = {v: i for i, v in enumerate(names)}
    check_at = [[] for _ in range(len(names) + 1)]
    for p in csp.constraints:
        last = max((pos[v] + 1 for v in p.variables()), default=0)
        check_at[last].append(p)
    if any(not p.is_zero() for p in check_at[0]):
        return None
    value = {}

    def go(i):
        if i == len(names):
            return True
        for bit in (0, 1):
            value[names[i]] = bit
            if all(p.evaluate(value) == 0 for p in check_at[i + 1]) and go(i + 1):
                return True
        del value[names[i]]
        return False

    return dict(value) if go(0) else None


def solve_csp_brute(csp: CspInstance, max_vars: int = CSP_MAX_VARS) -> bool:
    return find_csp_assignment(csp, max_vars) is not None


# ---------------------------------------------------------------- extension kernel

def kernelize_extension(g: Graph, s, pre) -> MarkedGraph | None:
    """Shrink a two-colour extension instance; ``None`` means a certain no-instance.

    Outside vertices of degree >= 3 have a forced colour.  Each cover vertex
    keeps up to two coloured neighbours of each colour, and at most three
    outside vertices survive per neighbourhood of size <= 2.
    """
    cover = sorted(set(s))
    if not is_vertex_cover(g, cover):
        raise ValueError("the given set is not a vertex cover")
    given = pre.assigned() if isinstance(pre, Coloring) else dict(pre)
    colour = {}
    for v in cover:
        if given.get(v) not in (RED, BLUE):
            raise ValueError(f"cover vertex {v} needs colour 1 or 2")
        colour[v] = given[v]
    in_s = set(cover)
    outside = [v for v in range(g.n) if v not in in_s]

    for v in outside:
        if g.degree(v) < 3:
            continue
        reds = sum(colour[u] == RED for u in g.adj[v])
        blues = g.degree(v) - reds
        if reds >= 2 and blues >= 2:
            return None
        # the vertex's own colour must leave exactly one vertex of some colour in N[v]
        if blues == 1 and reds >= 2:
            colour[v] = RED
        elif reds == 1 and blues >= 2:
            colour[v] = BLUE
        elif reds == 0:
            colour[v] = RED
        else:
            colour[v] = BLUE
    for v in range(g.n):
        seen = [colour[u] for u in g.adj[v] if u in colour]
        if seen.count(RED) >= 2 and seen.count(BLUE) >= 2:
            return None

    keep_forced = set()
    for u in cover:
        for c in (RED, BLUE):
            have = sum(1 for w in g.adj[u] if w in in_s and colour[w] == c)
            need = max(0, 2 - have)
            for w in g.adj[u]:
                if need == 0:
                    break
                if w in colour and w not in in_s and colour[w] == c:
                    keep_forced.add(w)
                    need -= 1
    new_cover = sorted(in_s | keep_forced)

    groups: dict[tuple, list[int]] = {}
    for v in outside:
        if v not in colour and g.degree(v):
            groups.setdefault(tuple(sorted(g.adj[v])), []).append(v)
    kept_low = sorted(v for members in groups.values() for v in members[:3])

    keep = sorted(set(new_cover) | set(kept_low))
    sub, origin = g.induced(keep)
    local = {v: i for i, v in enumerate(origin)}
    fixed = {local[v]: colour[v] for v in new_cover}
    return MarkedGraph(
        sub,
        [local[v] for v in new_cover],
        [local[v] for v in kept_low],
        origin,
        Coloring.partial(sub.n, 2, fixed),
    )


def extension_bound(k: int, s_size: int) -> int:
    """Vertex budget for the extension kernel of a cover of size k."""
    return 9 * k * k + 3 * k + s_size


# ---------------------------------------------------------------- file format

def serialize_csp(csp: CspInstance) -> str:
    doc = {
        "variables": list(csp.variables),
        "constraints": [
            [{"coeff": f"{c.numerator}/{c.denominator}", "vars": sorted(m)} for m, c in p.sorted_terms()]
            for p in csp.constraints
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_csp(text: str) -> CspInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e.msg}", e.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("variables"), list) or not isinstance(doc.get("constraints"), list):
        raise FormatError("expected an object with 'variables' and 'constraints' arrays")
    constraints = []
    for i, raw in enumerate(doc["constraints"]):
        if not isinstance(raw, list):
            raise FormatError(f"constraint {i} is not an array of terms")
        terms = {}
        for term in raw:
            try:
                coeff = Fraction(term["coeff"])
                mono = frozenset(term["vars"])
            except (KeyError, TypeError, ValueError, ZeroDivisionError):
                raise FormatError(f"bad term {term!r} in constraint {i}") from None
            terms[mono] = terms.get(mono, 0) + coeff
        constraints.append(Polynomial(terms))
    try:
        return CspInstance([str(v) for v in doc["variables"]], constraints)
    except ValueError as e:
        raise FormatError(str(e)) from None
