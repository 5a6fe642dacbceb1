"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact (zero tolerance).  Wall-clock limits are pinned below.
Run with ``pytest -s tests/test_acceptance.py`` to see the report lines.
"""

import itertools
import time

from cfcolor.bounds import color_via_fvs, color_via_td, color_via_vc
from cfcolor.convolution import (
    NEG_INF,
    naive_subset_convolution_maxsum,
    naive_subset_convolution_ring,
    subset_convolution_maxsum,
    subset_convolution_ring,
)
from cfcolor.decomposition import heuristic_td, make_nice
from cfcolor.dp import ConflictFreeDP, dp_cncf, dp_oncf, extract_witness
from cfcolor.generators import (
    BLUE,
    RED,
    gen_gk,
    gen_oncf_gadget,
    gen_palette,
    gen_subdivided_clique,
    mes_to_extension,
    qcol_to_cncf,
    qcol_to_oncf,
    sat_to_2oncf,
)
from cfcolor.graph import classify_star, min_fvs, min_vertex_cover
from cfcolor.kernel import (
    extension_bound,
    kernelize_2cncf,
    kernelize_extension,
    solve_csp_brute,
)
from cfcolor.verify import (
    Coloring,
    brute_chi_cn,
    brute_chi_on,
    brute_extension_cncf,
    search_coloring,
    verify_cncf,
    verify_oncf,
)

from helpers import (
    chromatic_number,
    connected_atlas,
    ktree_td,
    random_connected,
    random_graph,
    random_partial_ktree,
    random_tree,
    rng,
)
from test_generators import exactly_one_sat, random_3cnf, satisfiable
from test_kernel import cover_heavy

DP_SWEEP_SECONDS = 600
GADGET_SECONDS = 1.0
PALETTE_SECONDS = 300
LARGE_DP_SECONDS = 30


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    assert ok, detail


def nice(g):
    return make_nice(g, heuristic_td(g))


# ---------------------------------------------------------------- 1

def test_criterion_1_dp_matches_brute_force():
    start = time.perf_counter()
    graphs = list(connected_atlas(7))
    r = rng(1001)
    graphs += [random_graph(r, r.randint(1, 12), r.choice([0.15, 0.25, 0.4])) for _ in range(500)]
    mismatches = checks = 0
    for g in graphs:
        t = nice(g)
        for q in (2, 3):
            for closed in (False, True):
                got = ConflictFreeDP(g, t, q, closed).run()
                want = search_coloring(g, q, closed) is not None
                mismatches += got != want
                checks += 1
    # the minimum-colour form on the small graphs, against the brute enumerators
    for g in graphs[:200]:
        t = nice(g)
        chi_on = brute_chi_on(g, 3)
        chi_cn = brute_chi_cn(g, 3)
        for q in (2, 3):
            mismatches += dp_oncf(g, t, q) != (chi_on is not None and chi_on <= q)
            mismatches += dp_cncf(g, t, q) != (chi_cn is not None and chi_cn <= q)
            checks += 2
    elapsed = time.perf_counter() - start
    report(
        1,
        mismatches == 0 and elapsed < DP_SWEEP_SECONDS,
        f"{checks} DP answers over {len(graphs)} graphs, {mismatches} mismatches, {elapsed:.0f}s (limit {DP_SWEEP_SECONDS}s)",
    )


# ---------------------------------------------------------------- 2

def test_criterion_2_subset_convolution():
    r = rng(1002)
    bad = 0
    for _ in range(100):
        n = r.randint(0, 12)
        f = [NEG_INF if r.random() < 0.3 else r.randint(-9, 9) for _ in range(1 << n)]
        g = [NEG_INF if r.random() < 0.3 else r.randint(-9, 9) for _ in range(1 << n)]
        bad += subset_convolution_maxsum(f, g, n) != naive_subset_convolution_maxsum(f, g, n)
    for _ in range(100):
        n = r.randint(0, 12)
        f = [r.randint(-20, 20) for _ in range(1 << n)]
        g = [r.randint(-20, 20) for _ in range(1 << n)]
        bad += subset_convolution_ring(f, g, n) != naive_subset_convolution_ring(f, g, n)
    report(2, bad == 0, f"200 random instances (100 max-sum, 100 ring), |U| <= 12, {bad} mismatches")


# ---------------------------------------------------------------- 3

def test_criterion_3_gadget_forcing_and_extension():
    start = time.perf_counter()
    g = gen_oncf_gadget().graph
    inner = range(3, 9)

    def inner_ok(c):
        for v in inner:
            hood = [c[w] for w in g.adj[v]]
            if hood.count(RED) != 1 and hood.count(BLUE) != 1:
                return False
        return True

    all_red = counterexamples = 0
    extendable = set()
    for c in itertools.product((RED, BLUE), repeat=10):
        if not inner_ok(c):
            continue
        boundary = c[:3]
        if boundary == (RED, RED, RED):
            all_red += 1
            counterexamples += c[8] != RED
        elif c[3] == c[4] == c[9] == BLUE and c[7] == RED and c[8] == BLUE:
            extendable.add(boundary)
    elapsed = time.perf_counter() - start
    ok = counterexamples == 0 and all_red > 0 and len(extendable) == 7 and elapsed < GADGET_SECONDS
    report(
        3,
        ok,
        f"all-red: {all_red} valid colourings, {counterexamples} counterexamples; "
        f"not-all-red: {len(extendable)}/7 boundaries extend; {elapsed:.2f}s (limit {GADGET_SECONDS}s)",
    )


# ---------------------------------------------------------------- 4

def test_criterion_4_tight_instances():
    start = time.perf_counter()
    results = []
    for q in (3, 4):
        g = gen_subdivided_clique(q)
        t = nice(g)
        results.append(not dp_oncf(g, t, q - 1) and dp_oncf(g, t, q))
    results.append(brute_chi_on(gen_subdivided_clique(3), 4) == 3)
    for k in (1, 2):
        results.append(brute_chi_cn(gen_gk(k).graph, 3, partial=True) == k)

    lg = gen_palette(3)
    g = lg.graph
    t = nice(g)
    c = [lg[f"c{i}"] for i in (1, 2, 3)]
    cp = [lg[f"c{i}'"] for i in (1, 2, 3)]
    for i, j in itertools.combinations(range(3), 2):
        results.append(not dp_cncf(g, t, 3, pre={c[i]: 1, c[j]: 1}))
    w = extract_witness(g, t, 3, pre=Coloring.partial(g.n, 3, {c[i]: i + 1 for i in range(3)}), mode="cncf")
    results.append(w is not None and verify_cncf(g, w) is None and [w.colors[v] for v in cp] == [1, 2, 3])
    elapsed = time.perf_counter() - start
    report(
        4,
        all(results) and elapsed < PALETTE_SECONDS,
        f"{sum(results)}/{len(results)} tight-instance checks hold, {elapsed:.1f}s (limit {PALETTE_SECONDS}s)",
    )


# ---------------------------------------------------------------- 5

def bound_graphs(r):
    kinds = ["tree", "partial-2-tree", "sparse", "subdivided-clique"]
    out = []
    while len(out) < 500:
        kind = kinds[len(out) % 4]
        n = r.randint(2, 40)
        if kind == "tree":
            g = random_tree(r, n)
        elif kind == "partial-2-tree":
            g = random_partial_ktree(r, max(n, 3), 2)[0]
        elif kind == "sparse":
            g = random_connected(r, n, r.randint(0, n // 2))
        else:
            g = gen_subdivided_clique(r.randint(3, 8))
        if g.is_connected() and not g.isolated():
            out.append(g)
    return out


def test_criterion_5_constructive_bounds():
    r = rng(1005)
    violations = 0
    graphs = bound_graphs(r)
    for g in graphs:
        t = make_nice(g, heuristic_td(g), augment=False)
        c = color_via_td(g, t)
        violations += verify_oncf(g, c) is not None or len(set(c.colors)) > 2 * t.width + 1
        x = min_fvs(g)
        c = color_via_fvs(g, x)
        violations += verify_oncf(g, c) is not None or len(set(c.colors)) > len(x) + 3
        s = min_vertex_cover(g)
        c = color_via_vc(g, s)
        limit = len(s) + (classify_star(g) != "neither")
        violations += verify_oncf(g, c) is not None or len(set(c.colors)) > limit
    report(5, violations == 0, f"{len(graphs)} graphs x 3 constructions, {violations} violations")


# ---------------------------------------------------------------- 6

def test_criterion_6_kernel_equivalence():
    r = rng(1006)
    instances = [(g, min_vertex_cover(g)) for g in connected_atlas(6)]
    target = len(instances) + 200
    while len(instances) < target:
        k = r.randint(1, 5)
        if r.random() < 0.5:
            g, s = cover_heavy(r, k, r.randint(k + 1, 12))
        else:
            g = random_graph(r, r.randint(2, 12), r.choice([0.2, 0.35]))
            s = min_vertex_cover(g)
            if len(s) > 5:
                continue
        instances.append((g, s))
    mismatches = over = 0
    for g, s in instances:
        csp = kernelize_2cncf(g, s)
        mismatches += solve_csp_brute(csp) != (search_coloring(g, 2, closed=True) is not None)
        k = len(s)
        cover_vars = {f"{c}_{v}" for v in s for c in "rb"}
        marked_vars = set(csp.variables) - cover_vars
        by_cover = touching = rest = 0
        for p, tag in zip(csp.constraints, csp.tags):
            if tag[0] == "unique" and tag[1] in s:
                by_cover += 1
            elif p.variables() & marked_vars:
                touching += 1
            else:
                rest += 1
        over += by_cover > k or touching > len(csp.variables) ** 2 + 1 or rest > (2 * k) ** 6 + 1
    report(
        6,
        mismatches == 0 and over == 0,
        f"{len(instances)} kernels, {mismatches} answer mismatches, {over} part-size violations",
    )


# ---------------------------------------------------------------- 7

def test_criterion_7_extension_kernel():
    r = rng(1007)
    instances = []
    while len(instances) < 100:
        k = r.randint(1, 6)
        if len(instances) % 2:
            g, s = cover_heavy(r, k, r.randint(k + 1, 14))
        else:
            g = random_graph(r, r.randint(2, 14), r.choice([0.2, 0.35]))
            s = min_vertex_cover(g)
            if not 1 <= len(s) <= 6:
                continue
        instances.append((g, s, {v: r.randint(1, 2) for v in s}))
    mismatches = over = trivial = 0
    for g, s, pre in instances:
        before = brute_extension_cncf(g, s, pre, 2)
        mg = kernelize_extension(g, s, pre)
        if mg is None:
            trivial += 1
            mismatches += before
            continue
        mismatches += brute_extension_cncf(mg.graph, mg.cover, mg.pre, 2) != before
        over += mg.graph.n > extension_bound(len(s), len(s))
    report(
        7,
        mismatches == 0 and over == 0,
        f"{len(instances)} instances ({trivial} rejected outright), {mismatches} mismatches, "
        f"{over} outputs above 9k^2+4k vertices",
    )


# ---------------------------------------------------------------- 8

def test_criterion_8_reductions():
    r = rng(1008)
    counts, bad = {}, {}

    def tally(name, ok):
        counts[name] = counts.get(name, 0) + 1
        bad[name] = bad.get(name, 0) + (not ok)

    for _ in range(50):
        n, clauses = random_3cnf(r)
        g = sat_to_2oncf(clauses, n).graph
        tally("sat_to_2oncf", dp_oncf(g, nice(g), 2) == satisfiable(clauses, n))

    atlas = [g for g in connected_atlas(5) if g.n >= 2]
    for g in atlas + [random_connected(r, r.randint(2, 7), r.randint(0, 8)) for _ in range(60 - len(atlas))]:
        h = qcol_to_oncf(g)
        chi = chromatic_number(g)
        for q in (2, 3):
            tally("qcol_to_oncf", (search_coloring(h, q, closed=False) is not None) == (chi <= q))

    for _ in range(50):
        g = random_connected(r, r.randint(1, 5), r.randint(0, 5))
        h = qcol_to_cncf(g, 3)
        tally("qcol_to_cncf", dp_cncf(h, nice(h), 3) == (chromatic_number(g) <= 3))

    for _ in range(60):
        n = r.randint(1, 8)
        clauses = [tuple(r.sample(range(1, n + 1), r.randint(1, min(3, n)))) for _ in range(r.randint(1, 6))]
        g, cover, pre = mes_to_extension(clauses, n)
        tally("mes_to_extension", brute_extension_cncf(g, cover, pre, 2) == exactly_one_sat(clauses, n))

    ok = all(counts[k] >= 50 and bad[k] == 0 for k in counts) and len(counts) == 4
    report(8, ok, ", ".join(f"{k}: {counts[k]} instances, {bad[k]} mismatches" for k in sorted(counts)))


# ---------------------------------------------------------------- 9

def test_criterion_9_large_partial_two_trees():
    r = rng(1009)
    runs = []
    for keep in (0.0, 0.0, 0.8, 0.8):
        g, bags, parents = random_partial_ktree(r, 1000, 2, keep)
        t = make_nice(g, ktree_td(bags, parents))
        start = time.perf_counter()
        solver = ConflictFreeDP(g, t, 2, closed=False)
        answer = solver.run()
        elapsed = time.perf_counter() - start
        within = all(size <= 8 ** len(nd.bag) for size, nd in zip(solver.table_sizes, solver.nodes))
        witnessed = not answer or verify_oncf(g, solver.witness()) is None
        runs.append((answer, elapsed, t.width, within and witnessed))
    ok = all(e < LARGE_DP_SECONDS and w <= 3 and fine for _, e, w, fine in runs)
    detail = "; ".join(f"{'yes' if a else 'no'} in {e:.1f}s, width {w}" for a, e, w, _ in runs)
    report(9, ok, f"n=1000, q=2: {detail} (limit {LARGE_DP_SECONDS}s each, tables within (2q^2)^|bag|)")
