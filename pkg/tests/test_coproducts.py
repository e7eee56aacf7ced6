from fractions import Fraction

import pytest

from conftest import F, T, tensor_lc
from decotrees import coproducts as co
from decotrees.lincomb import Accumulator, LinComb
from decotrees.trees import (
    EMPTY,
    DistinguishedForest,
    Edge,
    Planted,
    enumerate_trees,
    node,
    node_mass,
    symmetry_factor,
)

X = node
I0 = Planted(Edge("t", (0,)), node(0))
SMALL = enumerate_trees(2, (1,), ("t",), (1,))


def counit_left(x):
    acc = Accumulator()
    for (l, r), c in x.items():
        acc.add(r, c * co.counit(l))
    return acc.result()


def counit_right(x):
    acc = Accumulator()
    for (l, r), c in x.items():
        acc.add(l, c * co.counit(r))
    return acc.result()


def test_unshuffle_primitive_and_product():
    a, b = T("X^(1)"), T("X^(0)[(t,(0))->•0]")
    assert co.delta_unshuffle(F(a)) == tensor_lc((1, F(a), EMPTY), (1, EMPTY, F(a)))
    assert len(co.delta_unshuffle(F(a, b))) == 4


def test_polysplit_binomial():
    got = co.delta_polysplit(DistinguishedForest(X(2), EMPTY))
    want = LinComb(
        ((DistinguishedForest(X(i), EMPTY), DistinguishedForest(X(2 - i), EMPTY)), c)
        for i, c in ((2, 1), (1, 2), (0, 1))
    )
    assert got == want
    unit = DistinguishedForest(X(0), EMPTY)
    assert co.delta_polysplit(unit) == LinComb.of((unit, unit))


def test_polysplit_coassociative():
    for k in range(4):
        x = LinComb.of(DistinguishedForest(X(k), EMPTY))
        d = co.delta_polysplit(x)
        left = Accumulator()
        right = Accumulator()
        for (a, b), c in d.items():
            for (a1, a2), c1 in co.delta_polysplit(a).items():
                left.add((a1, a2, b), c * c1)
            for (b1, b2), c2 in co.delta_polysplit(b).items():
                right.add((a, b1, b2), c * c2)
        assert left.result() == right.result()


@pytest.mark.parametrize("budget", [0, 1, 3])
def test_dck_primitive(budget):
    got = co.delta_dck(F(I0), "full", budget)
    assert got == tensor_lc((1, F(I0), EMPTY), (1, EMPTY, F(I0)))


def test_dck_bar_planted_leaf():
    got = co.delta_dck(I0.as_tree(), "bar", 1)
    I1 = Planted(Edge("t", (1,)), node(0))
    want = tensor_lc(
        (1, EMPTY, I0.as_tree()),
        (1, F(I0), X(0)),
        (1, F(I1), X(1)),
    )
    assert got == want


def test_dck_bar_monomial():
    for k in range(3):
        assert co.delta_dck(X(k), "bar", 2) == tensor_lc((1, EMPTY, X(k)))


def test_dck_inverse_factorials():
    got = co.delta_dck(I0.as_tree(), "bar", 3)
    assert got.coeff((F(Planted(Edge("t", (3,)), node(0))), X(3))) == Fraction(1, 6)


def test_delta2_examples():
    assert co.delta2(X(1), 2) == tensor_lc((1, X(1), X(0)), (1, X(0), X(1)))
    assert co.delta2(X(2), 2) == tensor_lc((1, X(2), X(0)), (2, X(1), X(1)), (1, X(0), X(2)))
    got = co.delta2(T("X^(0)[(t,(0))->X^(1)]"), 1)
    want = tensor_lc(
        (1, X(1), T("X^(0)[(t,(0))->•0]")),
        (1, X(0), T("X^(0)[(t,(0))->X^(1)]")),
        (1, T("X^(0)[(t,(0))->X^(1)]"), X(0)),
        (1, T("X^(0)[(t,(1))->X^(1)]"), X(1)),
    )
    assert got == want


def test_delta1_examples():
    assert co.delta1(X(1), "full", 2) == tensor_lc((1, F(X(1)), X(0)), (1, EMPTY, X(1)))
    for k in range(3):
        assert co.delta1(X(k), "circ", 2) == tensor_lc((1, EMPTY, X(k)))


def test_counit_laws():
    for t in SMALL:
        for d in (co.delta2(t, 2), co.delta1(t, "full", 2)):
            assert counit_right(d) == LinComb.of(t) or counit_left(d) == LinComb.of(t)
        d = co.delta2(t, 2)
        assert counit_left(d) == LinComb.of(t)
        assert counit_right(d) == LinComb.of(t)
        assert counit_left(co.delta1(t, "full", 2)) == LinComb.of(t)
    for t in SMALL:
        if t.index == (0,):
            pf = co._planted_forest(t)
            d = co.delta_dck(pf, "full", 2)
            assert counit_left(d) == LinComb.of(pf)
            assert counit_right(d) == LinComb.of(pf)


def test_truncation_monotone():
    # coefficients are final on terms whose right leg has node mass within the budget
    for t in SMALL:
        for b in (0, 1):
            lo, hi = co.delta2(t, b), co.delta2(t, b + 1)
            assert set(lo.support()) <= set(hi.support())
            for (l, r), c in hi.items():
                if node_mass(r) <= b:
                    assert lo.coeff((l, r)) == c


def test_duality_examples():
    c = X(1)
    assert co.duality_sides("d2", c, X(1), X(2)) == (2, 2)
    assert co.duality_check("d2", c, X(1), X(2))
    for t in SMALL:
        if t.index == (0,) and t.children:
            p = co._planted_forest(t)
            lhs, rhs = co.duality_sides("dck", EMPTY, p, p)
            assert lhs == rhs == symmetry_factor(p)


def test_duality_detects_wrong_target():
    c = X(1)
    lhs, rhs = co.duality_sides("d2", c, X(1), X(1))
    assert lhs == rhs == 0


def _coassoc(delta, t, bound):
    d = delta(t)
    left, right = Accumulator(), Accumulator()
    for (a, b), c in d.items():
        for (a1, a2), c1 in delta(a).items():
            left.add((a1, a2, b), c * c1)
        for (b1, b2), c2 in delta(b).items():
            right.add((a, b1, b2), c * c2)
    return co.truncate(left.result(), bound), co.truncate(right.result(), bound)


def test_delta2_coassociative_small():
    for t in enumerate_trees(1, (1,), ("t",), (1,)):
        lhs, rhs = _coassoc(lambda x: co.delta2(x, 2), t, 2)
        assert lhs == rhs


def test_polynomial_coassociative():
    for k in range(4):
        lhs, rhs = _coassoc(lambda x: co.delta2(x, 3), X(k), 3)
        assert lhs == rhs


def test_weight_and_truncate():
    t = T("X^(1)[(t,(1))->•0]")
    assert co.weight(t) == 2
    x = LinComb([(t, 1), (X(0), 3)])
    assert co.truncate(x, 1) == LinComb.of(X(0), 3)


def test_budget_validation():
    with pytest.raises((ValueError, TypeError)):
        co.delta2(X(1), -1)


def test_rejects_root_monomial_in_full_dck():
    with pytest.raises(ValueError):
        co.delta_dck(T("X^(1)[(t,(0))->•0]"), "full", 1)


def test_unknown_variant():
    with pytest.raises(ValueError):
        co.delta_dck(X(0), "sideways", 1)
