import pytest

from cfcolor.bounds import color_via_fvs, color_via_td, color_via_td_auto, color_via_vc
from cfcolor.decomposition import TreeDecomposition, heuristic_td, make_nice
from cfcolor.generators import gen_gk, gen_subdivided_clique
from cfcolor.graph import Graph, classify_star, min_fvs, min_vertex_cover
from cfcolor.verify import brute_chi_on, verify_oncf

from helpers import (
    complete,
    cycle,
    ktree_td,
    path,
    random_connected,
    random_partial_ktree,
    random_tree,
    rng,
    star,
)


def used(c):
    return len(set(c.colors))


def proper(g, c):
    return all(c.colors[u] != c.colors[v] for u, v in g.edges())


def test_td_path():
    g = path(3)
    t = make_nice(g, TreeDecomposition([(0, 1), (1, 2)], [(0, 1)]), augment=False)
    c = color_via_td(g, t)
    assert used(c) <= 3 and proper(g, c) and verify_oncf(g, c) is None


def test_td_gk():
    g = gen_gk(3).graph
    t = make_nice(g, heuristic_td(g), augment=False)
    assert t.width == 2
    assert used(color_via_td(g, t)) <= 5


def test_td_partial_two_trees():
    r = rng(60)
    for _ in range(100):
        g, bags, parents = random_partial_ktree(r, r.randint(3, 40), 2)
        if g.isolated():
            continue
        t = make_nice(g, ktree_td(bags, parents), augment=False)
        c = color_via_td(g, t)
        assert max(c.colors) <= 5 and proper(g, c)


def test_td_rejects_isolated():
    g = Graph.from_edges(3, [(0, 1)])
    with pytest.raises(ValueError):
        color_via_td_auto(g)


def test_fvs_examples():
    g = cycle(6)
    assert used(color_via_fvs(g, [0])) <= 4
    k4 = gen_subdivided_clique(4)
    x = min_fvs(k4)
    assert len(x) == 2
    assert 4 <= used(color_via_fvs(k4, x)) <= 5
    with pytest.raises(ValueError):
        color_via_fvs(g, [])


def test_fvs_random():
    r = rng(61)
    for _ in range(100):
        g = random_connected(r, r.randint(2, 30), r.randint(0, 12))
        x = min_fvs(g)
        assert used(color_via_fvs(g, x)) <= len(x) + 3
        assert used(color_via_fvs(g, range(g.n))) <= g.n + 3


def test_vc_examples():
    assert used(color_via_vc(star(3), [0])) == 2
    assert used(color_via_vc(complete(3), [0, 1])) == 3
    k4 = gen_subdivided_clique(4)
    assert used(color_via_vc(k4, [0, 1, 2, 3])) == 4
    with pytest.raises(ValueError):
        color_via_vc(path(4), [0])


def test_vc_pair_with_common_neighbour_and_hemmed_in_single():
    # cover {0, 1, 2}: edge 0-1 with exact common neighbour 3, isolated 2 whose
    # only neighbour 4 also touches 1
    g = Graph.from_edges(6, [(0, 1), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5)])
    assert classify_star(g) == "neither"
    assert used(color_via_vc(g, [0, 1, 2])) <= 3


def test_vc_random_covers():
    r = rng(62)
    for _ in range(200):
        kind = r.choice(["tree", "sparse"])
        n = r.randint(2, 25)
        g = random_tree(r, n) if kind == "tree" else random_connected(r, n, r.randint(0, n))
        s = min_vertex_cover(g)
        extra = 0 if classify_star(g) == "neither" else 1
        assert used(color_via_vc(g, s)) <= len(s) + extra
        bigger = sorted(set(s) | set(r.sample(range(n), min(n, 2))))
        assert used(color_via_vc(g, bigger)) <= len(bigger) + extra


def test_never_below_optimum():
    r = rng(63)
    for _ in range(60):
        g = random_connected(r, r.randint(2, 9), r.randint(0, 6))
        chi = brute_chi_on(g, 4) or 5
        for c in (color_via_td_auto(g), color_via_fvs(g, min_fvs(g)), color_via_vc(g, min_vertex_cover(g))):
            assert verify_oncf(g, c) is None and used(c) >= chi
