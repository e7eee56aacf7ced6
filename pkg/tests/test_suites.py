from decotrees import grafting as gr
from decotrees import suites
from decotrees.guin_oudom import PreLieStructure
from conftest import T
from decotrees.trees import Edge, node


SMALL = suites.Scale(max_edges=1)


def test_suite_result_line_and_json():
    r = suites.SuiteResult("x", "title", checked=3)
    assert r.passed and r.line() == "[PASS] x: title (3 checks, 0 failures)"
    r.fail("boom")
    assert not r.passed and r.line().startswith("[FAIL]")
    assert r.to_json()["failures"] == ["boom"]


def test_bounded_tuples():
    basis = [node(0), node(1)]
    assert len(list(suites.bounded_tuples(basis, 2, 0))) == 4


def test_mpl_detects_non_pre_lie():
    # grafting only at the root is not multi-pre-Lie
    def root_only(x, a, y):
        return gr.graft(x, a, y, ())

    a = Edge("t", (0,))
    x, y, z = node(0), node(1), T("X^(0)[(t,(0))->•0]")
    assert suites._mpl(gr.graft, a, a, x, y, z)
    assert not suites._mpl(root_only, a, a, x, y, z)


def test_prelie_detects_broken_product():
    P = PreLieStructure(lambda x, y: gr.graft(x, Edge("t", (0,)), y, ()), "root grafting")
    x, y = node(1), node(0)
    z = T("X^(0)[(t,(0))->•0]")
    assert not suites._prelie(P, x, y, z)


def test_small_scale_suites_pass():
    for name in ("prelie", "theta", "commute", "insertion-poly", "cointeraction"):
        r = suites.run_suite(name, SMALL, 1)
        assert r.passed, r.failures[:3]
        assert r.checked > 0


def test_duality_small():
    r = suites.run_suite("duality", suites.Scale(max_edges=2), 2)
    assert r.passed and r.checked > 0


def test_duality_matrix_small():
    trees = SMALL.trees(1)
    pairs = [(s, t) for s in trees for t in trees]
    count, bad = suites.duality_matrix("d2", pairs, trees)
    assert count > 0 and not bad


def test_find_asymmetry():
    w = suites.find_asymmetry(suites.Scale(), 1)
    assert w is not None


def test_criteria_registry():
    assert len(suites.CRITERIA) == 10
    assert set(suites.CRITERIA) == set(suites.SUITES)
