import itertools
from math import factorial


from conftest import E, F, T
from decotrees import grafting as gr
from decotrees import plugging as pg
from decotrees.lincomb import Accumulator, LinComb
from decotrees.trees import (
    EMPTY,
    Edge,
    Tree,
    enumerate_trees,
    node,
    replace_at,
    subtree,
    symmetry_factor,
    tree,
    uparrow,
    vertices,
)

SMALL = enumerate_trees(2, (1,), ("t",), (1,))
TINY = enumerate_trees(1, (1,), ("t",), (1,))


def naive_plug(sigma, tau):
    acc = Accumulator()
    for v in vertices(tau):
        acc.add(replace_at(tau, v, lambda s: Tree((s.index[0] + sigma.index[0],), s.children + sigma.children)))
    return acc.result()


def naive_deformed_plug(sigma, tau):
    # sum_v sum_l C(n_v; l_1..l_n) with l_i <= a_i moved from n_v onto sigma's root edges
    acc = Accumulator()
    kids = sigma.children
    for v in vertices(tau):
        n = subtree(tau, v).index[0]
        for ls in itertools.product(*(range(e.index[0] + 1) for e, _ in kids)):
            rest = n - sum(ls)
            if rest < 0:
                continue
            c = factorial(n) // factorial(rest)
            for x in ls:
                c //= factorial(x)
            new = tuple((Edge(e.kind, (e.index[0] - l,)), ch) for (e, ch), l in zip(kids, ls))
            acc.add(replace_at(tau, v, lambda s: Tree((rest + sigma.index[0],), s.children + new)), c)
    return acc.result()


def test_plug_matches_naive():
    for s, t in itertools.product(SMALL, SMALL):
        assert pg.plug(s, t) == naive_plug(s, t)


def test_deformed_plug_matches_naive():
    for s, t in itertools.product(SMALL, SMALL):
        assert pg.deformed_plug(s, t) == naive_deformed_plug(s, t)


def test_plug_unit():
    for t in SMALL:
        for v in vertices(t):
            assert pg.plug(node(0), t, v) == LinComb.of(t)


def test_plug_modes_partition():
    for s, t in itertools.product(TINY, SMALL):
        assert pg.plug(s, t) == pg.plug(s, t, "root") + pg.plug(s, t, "nonroot")
        assert pg.deformed_plug(s, t) == pg.deformed_plug(s, t, "root") + pg.deformed_plug(s, t, "nonroot")


def test_deformed_plug_reduces_to_plug():
    for s, t in itertools.product(SMALL, SMALL):
        if t.index == (0,):
            assert pg.deformed_plug(s, t, "root") == pg.plug(s, t, "root")
        if all(e.index == (0,) for e, _ in s.children):
            assert pg.deformed_plug(s, t) == pg.plug(s, t)


def test_root_plug_symmetric():
    for s, t in itertools.combinations(SMALL, 2):
        assert pg.plug(s, t, "root") == pg.plug(t, s, "root")
        assert pg.tilde_plug(s, t, "root") == pg.tilde_plug(t, s, "root")


def test_deformed_root_plug_asymmetric_witness():
    s, t = node(1), T("X^(0)[(t,(1))->•0]")
    assert pg.deformed_plug(s, t, "root") != pg.deformed_plug(t, s, "root")


def test_tilde_plug_zero_indices_is_plug():
    s, t = T("X^(0)[(t,(0))->•0]"), T("X^(0)[(t,(0))->X^(0)[(t,(0))->•0]]")
    assert pg.tilde_plug(s, t, "root") == pg.plug(s, t, "root")


def test_tilde_plug_is_theta_transport():
    for s, t in itertools.product(SMALL, SMALL):
        want = gr.theta(pg.plug(gr.theta_inverse(s), gr.theta_inverse(t), "root"))
        assert pg.tilde_plug(s, t, "root") == want


def test_plug_via_uparrow():
    assert pg.plug_via_uparrow(node(2), node(3), ()) == LinComb.of(node(5))
    for s, t in itertools.product(TINY, SMALL):
        for v in vertices(t):
            assert pg.plug_via_uparrow(s, t, v) == pg.deformed_plug(s, t, v)


def test_plug_via_uparrow_zero_root_is_tilde():
    s = T("X^(0)[(t,(1))->•1]")
    for t in SMALL:
        assert pg.deformed_plug(s, t, "root") == pg.tilde_plug(s, t, "root")


def test_merge_roots():
    assert pg.merge_roots(EMPTY) == node(0)
    assert pg.merge_roots(F(node(1), node(2))) == node(3)
    x = T("X^(1)[(a,(0))->•0]")
    assert pg.merge_roots(F(x, node(1))) == T("X^(2)[(a,(0))->•0]")


def test_split_blocks_examples():
    assert pg.split_blocks(node(0)) == LinComb.of(EMPTY)
    assert pg.split_blocks(node(1)) == LinComb.of(F(node(1)))
    x = T("X^(1)[(a,(0))->•0]")
    assert pg.split_blocks(x) == LinComb([(F(x), 1), (F(node(1), T("X^(0)[(a,(0))->•0]")), 1)])


def test_split_blocks_multiplicities():
    # two identical branches: the split into two identical blocks has S(τ)/S(f) = 2/(1·1·2!) = 1
    x = T("X^(0)[(a,(0))->•0, (a,(0))->•0]")
    b = T("X^(0)[(a,(0))->•0]")
    got = pg.split_blocks(x)
    assert got.coeff(F(b, b)) == symmetry_factor(x) / symmetry_factor(F(b, b))
    assert got.coeff(F(x)) == 1


def test_split_blocks_are_sections_of_merge():
    for t in enumerate_trees(3, (1,), ("t",), (1,)):
        for f, c in pg.split_blocks(t).items():
            assert pg.merge_roots(f) == t and c > 0


def test_star_plug_examples():
    assert pg.star_plug(node(1), node(1)) == LinComb.of(node(2))
    for t in SMALL:
        assert pg.star_plug(node(0), t) == LinComb.of(t)


def test_star_plug_associative_small():
    for x, y, z in itertools.product(TINY, repeat=3):
        for deformed in (True, False):
            left = pg.star_plug(pg.star_plug(x, y, deformed), z, deformed)
            right = pg.star_plug(x, pg.star_plug(y, z, deformed), deformed)
            assert left == right


def test_link_identity():
    assert pg.link_identity_check(node(1), node(0), E())
    lhs, rhs = pg.link_sides(node(1), node(0), E())
    assert lhs == rhs and len(lhs) == 1
    for s, t in itertools.product(TINY, TINY):
        assert pg.link_identity_check(s, t, E("t", 1))


def test_subtree_trunk():
    t = T("X^(1)[(t,(0))->X^(2)[(t,(1))->•1]]")
    assert pg.subtree_trunk(t, ()) == (t, node(0))
    leaf = [v for v in vertices(t) if len(v) == 2][0]
    assert pg.subtree_trunk(t, leaf) == (node(1), T("X^(1)[(t,(0))->X^(2)[(t,(1))->•0]]"))


def test_subtree_trunk_display():
    # rho --d-- delta, with gamma (via c) and beta (via b) above delta
    t = tree(1, ("d", 0, tree(1, ("c", 0, node(0)), ("b", 0, node(1)))))
    v = (0,)
    P, Tr = pg.subtree_trunk(t, v)
    assert P == tree(1, ("c", 0, node(0)), ("b", 0, node(1)))
    assert Tr == tree(1, ("d", 0, node(0)))
    assert pg.plug(P, Tr, v) == LinComb.of(t)


def test_insert_vertex():
    for m in (0, 1, 2):
        for t in SMALL:
            assert pg.insert(node(m), t, deformed=False) == uparrow(t, (m,))


def test_deformed_insert_vertex_on_single_node():
    for m, n in itertools.product(range(3), repeat=2):
        assert pg.insert(node(m), node(n), deformed=True) == LinComb.of(node(m + n))


def test_insert_unit_per_vertex():
    for t in SMALL:
        for v in vertices(t):
            assert pg.insert(node(0), t, True, v) == LinComb.of(t)


def test_insert_modes():
    for s, t in itertools.product(TINY, SMALL):
        assert pg.insert(s, t) == pg.insert(s, t, True, ()) + pg.insert(s, t, True, "nonroot")


def test_star1_units_and_leading_term():
    x, y = T("X^(0)[(t,(1))->•0]"), T("X^(1)[(t,(0))->•0]")
    assert pg.star1(EMPTY, F(y)) == LinComb.of(F(y))
    assert pg.star1(F(x), EMPTY) == LinComb.of(F(x))
    want = pg.insert(x, y).map(lambda u: F(u)) + LinComb.of(F(x, y))
    assert pg.star1(F(x), F(y)) == want


def test_forest_insert_single_tree():
    for s, t in itertools.product(TINY, TINY):
        if s == node(0):
            continue
        assert pg.forest_insert(F(s), t) == pg.insert(s, t)
        assert pg.forest_insert_nonroot(F(s), t) == pg.insert(s, t, True, "nonroot")


def test_forest_insert_empty():
    t = T("X^(0)[(t,(0))->•1]")
    assert pg.forest_insert(EMPTY, t) == LinComb.of(t)
    assert pg.forest_insert_nonroot(EMPTY, t) == LinComb.of(t)
