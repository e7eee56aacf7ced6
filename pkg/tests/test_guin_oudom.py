import itertools

from conftest import E, F, I
from decotrees import grafting as gr
from decotrees import plugging as pg
from decotrees.guin_oudom import PreLieStructure, check_prelie, delta_unshuffle, unshuffle
from decotrees.lincomb import LinComb
from decotrees.trees import EMPTY, Planted, enumerate_planted, enumerate_trees, node

GRAFT = PreLieStructure(lambda p, q: gr.planted_graft(p, q, False), "planted grafting")
DGRAFT = PreLieStructure(lambda p, q: gr.planted_graft(p, q, True), "deformed planted grafting")
PLANTED = enumerate_planted(2)


def test_unshuffle_single_and_pair():
    p, q = I("t", 0, "•0"), I("t", 1, "•0")
    assert delta_unshuffle(F(p)) == LinComb([((F(p), EMPTY), 1), ((EMPTY, F(p)), 1)])
    assert len(delta_unshuffle(F(p, q))) == 4
    # repeated items carry binomial multiplicities
    assert sorted(m for *_, m in unshuffle(F(p, p))) == [1, 1, 2]


def test_unshuffle_counit():
    for f in [F(), F(PLANTED[0]), F(PLANTED[0], PLANTED[3]), F(PLANTED[1], PLANTED[1])]:
        left = LinComb(((b, c) for (a, b), c in delta_unshuffle(f).items() if not a.items))
        assert left == LinComb.of(f)


def test_extend_to_forest():
    x, y = PLANTED[0], PLANTED[1]
    assert DGRAFT.extend_to_forest(x, F(y)) == DGRAFT.prod(x, y).map(lambda b: F(b))
    assert DGRAFT.extend_to_forest(x, EMPTY) == LinComb()
    # Leibniz on y·y when x ▷ y has a single term
    prod = GRAFT.prod(x, y)
    assert len(prod) == 1
    ((z, c),) = prod.items()
    assert GRAFT.extend_to_forest(x, F(y, y)) == LinComb.of(F(z, y), 2 * c)


def test_bullet_unit_and_counit():
    w = F(PLANTED[0], PLANTED[2])
    assert DGRAFT.bullet(EMPTY, w) == LinComb.of(w)
    assert DGRAFT.bullet(F(PLANTED[0]), EMPTY) == LinComb()
    assert DGRAFT.bullet(EMPTY, EMPTY) == LinComb.of(EMPTY)


def test_bullet_vanishes_with_too_many_trees():
    P = pg.plugging_structure(False)
    assert P.bullet(F(node(1), node(1)), F(node(0))) == LinComb()


def test_star_units():
    for w in [F(PLANTED[0]), F(PLANTED[1], PLANTED[2])]:
        assert DGRAFT.star(EMPTY, w) == LinComb.of(w)
        assert DGRAFT.star(w, EMPTY) == LinComb.of(w)


def test_star_associative():
    forests = [EMPTY] + [F(p) for p in PLANTED[:8]] + [F(p, q) for p, q in itertools.combinations(PLANTED[:4], 2)]
    for x, y, z in itertools.product(forests[:9], repeat=3):
        assert DGRAFT.star(DGRAFT.star(x, y), z) == DGRAFT.star(x, DGRAFT.star(y, z))


def test_star_planted_example():
    a, b = E("t", 1), E("u", 0)
    x, y = Planted(a, node(0)), Planted(b, node(1))
    got = DGRAFT.star(F(x), F(y))
    want = DGRAFT.prod(x, y).map(lambda p: F(p)) + LinComb.of(F(x, y))
    assert got == want and len(got) == 3


def test_check_prelie():
    trees = enumerate_trees(1, (1,), ("t",), (1,))
    assert check_prelie(lambda x, y: gr.graft(x, E(), y), trees) == []
    assert check_prelie(lambda x, y: gr.graft(x, E(), y), [node(0)]) == []


def test_check_prelie_detects_broken_product():
    def broken(x, y):
        # grafting with the non-root terms dropped
        return gr.graft(x, E(), y, ())

    trees = enumerate_trees(1, (1,), ("t",), (1,))
    bad = check_prelie(broken, trees, limit=1)
    assert len(bad) == 1 and len(bad[0]) == 3
