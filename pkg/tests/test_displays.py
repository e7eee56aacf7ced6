import pytest

from decotrees import displays
from decotrees.trees import Edge, Tree


@pytest.mark.parametrize("name", list(displays.EXAMPLES))
def test_display_matches_hand_expansion(name):
    got, want = displays.EXAMPLES[name]()
    assert got == want


def test_builder():
    assert displays.T(-1) is None
    assert displays.T(1, ("t", -1, displays.T(0))) is None
    assert displays.T(1, ("t", 0, None)) is None
    assert displays.T(2, ("t", 1, displays.T(0))) == Tree((2,), [(Edge("t", (1,)), Tree((0,)))])


def test_multinomial():
    assert displays.multinomial(4, 1, 2) == 12
    assert displays.multinomial(2, 2, 1) == 0
    assert displays.multinomial(3) == 1


def test_planted_deformed_family_sizes():
    for beta in range(3):
        for a in range(3):
            got, want = displays.planted_deformed_example(beta, a)
            assert got == want
            assert len(got) == 1 + min(beta, a)
