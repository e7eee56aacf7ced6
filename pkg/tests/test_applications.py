from fractions import Fraction

import pytest

from conftest import F, I, T, tensor_lc
from decotrees import applications as ap
from decotrees import coproducts as co
from decotrees.lincomb import LinComb
from decotrees.trees import EMPTY, Edge, Planted, enumerate_trees, node

X = node
SMALL = enumerate_trees(2, (1,), ("t",), (1,))
PLANTED_FORESTS = [co._planted_forest(t) for t in SMALL if t.index == (0,)]


def test_flip():
    x = tensor_lc((2, X(1), X(0)), (1, X(0), X(2)))
    assert ap.flip(x) == tensor_lc((2, X(0), X(1)), (1, X(2), X(0)))
    assert ap.flip(ap.flip(x)) == x


def test_delta_na_is_flipped_dck():
    for f in PLANTED_FORESTS:
        assert ap.delta_na(f, 2) == ap.flip(co.delta_dck(f, "full", 2))


def test_delta_na_bar_monomial():
    for k in range(3):
        assert ap.delta_na(X(k), 2, variant="bar") == tensor_lc((1, X(k), EMPTY))


def test_delta_na_order_cap_zero():
    deg = ap.DegreeAssignment({"t": Fraction(2)}, (1,), 0, frozenset({"t"}))
    t = I("t", 0, "•0").as_tree()
    got = ap.delta_na(t, 2, deg, "bar")
    assert all(ap.order_size(r, deg) == 0 for (l, r) in got.support())
    # X^n/n! ⊗ I_n for n >= 1 and X^0 ⊗ I are dropped, I ⊗ 1 survives
    assert got == tensor_lc((1, t, EMPTY))
    full = ap.delta_na(t, 2, None, "bar")
    assert len(full) == 4


def test_delta_rc_examples():
    assert ap.delta_rc(X(1), 2) == tensor_lc((1, X(1), X(0)), (1, X(0), X(1)))
    i0 = I("t", 0, "•0").as_tree()
    i1 = I("t", 1, "•0").as_tree()
    want = tensor_lc((1, i0, X(0)), (1, X(0), i0), (1, X(1), i1))
    assert ap.delta_rc(i0, 1) == want
    assert ap.delta_rc(i0, 1, "recursive") == want


def test_delta_rc_routes_agree():
    for t in SMALL:
        assert ap.delta_rc(t, 2, "flip") == ap.delta_rc(t, 2, "recursive")


def test_delta_rn_examples():
    assert ap.delta_rn(X(1), 2) == tensor_lc((1, F(X(1)), X(0)), (1, EMPTY, X(1)))
    for k in range(3):
        assert ap.delta_rn(X(k), 2, "nonroot") == tensor_lc((1, EMPTY, X(k)))


def test_delta_rn_is_delta1():
    for t in SMALL:
        assert ap.delta_rn(t, 2) == co.delta1(t, "full", 2)


def test_degree():
    deg = ap.DegreeAssignment({"t": Fraction(2)}, (1,))
    assert ap.degree(X(3), deg) == 3
    assert ap.degree(I("t", 1, "•0").as_tree(), deg) == 1
    s, t = X(1), T("X^(0)[(t,(0))->•0]")
    e = Edge("t", (1,))
    for u in ap.graft(s, e, t).support():
        assert ap.degree(u, deg) == ap.degree(t, deg) + 2 - 1 + ap.degree(s, deg)
    with pytest.raises(KeyError):
        ap.degree(T("X^(0)[(xi,(0))->•0]"), deg)


def test_coaction_plus_on_polynomial():
    deg = ap.DegreeAssignment({"t": Fraction(2)}, (1,))
    assert ap.coaction_plus(X(1), 2, deg) == tensor_lc((1, X(1), X(0)), (1, X(0), X(1)))


def test_coaction_minus_positive_degrees_extracts_nothing():
    deg = ap.DegreeAssignment({"t": Fraction(2)}, (1,))
    for t in SMALL:
        got = ap.coaction_minus(t, 2, deg)
        assert got == tensor_lc((1, EMPTY, t))


def test_coaction_minus_noise():
    deg = ap.DegreeAssignment({"xi": Fraction(-3, 2)}, (1,))
    t = T("X^(0)[(xi,(0))->•0]")
    got = ap.coaction_minus(t, 2, deg)
    assert got.coeff((F(t), X(0))) == 1
    assert got.coeff((EMPTY, t)) == 1


def test_antipode_primitive():
    x = F(I("t", 0, "X^(1)"))
    assert ap.antipode(x, 2) == LinComb.of(x, -1)
    assert ap.antipode(F(I("t", 0, "•0")), 2) == LinComb.of(F(I("t", 0, "•0")), -1)
    assert ap.antipode(EMPTY, 2) == LinComb.of(EMPTY)


def test_antipode_identity():
    for f in PLANTED_FORESTS:
        for which in ("na", "dck"):
            got = ap.antipode_identity(f, 2, which)
            assert got == LinComb(), (f, which, got)


def test_antipode_unknown():
    with pytest.raises(ValueError):
        ap.antipode(EMPTY, 2, "other")


def test_birkhoff_twist_zero_projector():
    t = I("t", 0, "•0").as_tree()

    def Pi(u):
        return 7 if u == t else 1

    got = ap.birkhoff_twist(Pi, lambda v: 0 * v, t, 1)
    # only the term with an empty right leg survives the zero projector
    assert got == Pi(t)


def test_birkhoff_twist_linear():
    def Pi(t):
        return Fraction(1, 2) if isinstance(t, Planted) else 3

    a, b = X(1), I("t", 0, "•0").as_tree()
    Q = lambda v: v  # noqa: E731
    lhs = ap.birkhoff_twist(Pi, Q, LinComb([(a, 2), (b, 5)]), 1)
    rhs = 2 * ap.birkhoff_twist(Pi, Q, a, 1) + 5 * ap.birkhoff_twist(Pi, Q, b, 1)
    assert lhs == rhs


def test_renorm_map_identity():
    for t in SMALL:
        assert ap.renorm_map(lambda u: u, t) == LinComb.of(t)


def test_renorm_map_kills_generator():
    leaf = T("X^(0)[(t,(1))->•0]")

    def R(u):
        return LinComb() if u == leaf else LinComb.of(u)

    assert ap.renorm_map(R, leaf) == LinComb()
    deeper = T("X^(0)[(t,(0))->X^(0)[(t,(1))->•0]]")
    assert ap.renorm_map(R, deeper) == LinComb()
    other = T("X^(0)[(t,(0))->•1]")
    assert ap.renorm_map(R, other) == LinComb.of(other)


def test_R_compat_identity():
    assert ap.check_R_compat(lambda u: u, SMALL) == []
    assert ap.check_M_counterpart(lambda u: u, SMALL) == []


def test_R_compat_detects_bad_map():
    def R(u):
        return LinComb.of(u, 2) if u.children else LinComb.of(u)

    assert ap.check_R_compat(R, SMALL)


def test_cointeraction_empty_forest():
    t1 = T("X^(0)[(t,(0))->•0]")
    t2 = T("X^(0)[(t,(1))->•0]")
    for deformed in (True, False):
        lhs, rhs = ap.cointeraction_sides(EMPTY, t1, t2, "plug", deformed)
        assert lhs == rhs == ap.star_plug(t1, t2, deformed)


def test_cointeraction_vertex_one():
    t1 = T("X^(0)[(t,(0))->•0]")
    t2 = T("X^(0)[(t,(1))->•0]")
    for which in ("plug", "graft"):
        for deformed in (True, False):
            assert ap.cointeraction_check(X(1), t1, t2, which, deformed)


def test_cointeraction_unknown():
    with pytest.raises(ValueError):
        ap.cointeraction_sides(X(1), X(0), X(0), "other")


def test_rc_rn_cointeraction():
    for t in enumerate_trees(1, (1,), ("t",), (1,)):
        assert ap.rc_rn_cointeraction_check(t, 2)
