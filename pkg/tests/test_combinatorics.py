import math

import pytest

from decotrees import combinatorics as cb


def test_binom_multi_index():
    assert cb.binom((3, 2), (1, 1)) == 3 * 2
    assert cb.binom((1,), (2,)) == 0


def test_multinomial():
    # 4!/(1! 2! 1!) with remainder 1
    assert cb.multinomial((4,), [(1,), (2,)]) == math.factorial(4) // (1 * 2 * 1)
    assert cb.multinomial((1,), [(1,), (1,)]) == 0


def test_sub_and_signed_add():
    assert cb.sub((2, 1), (1, 1)) == (1, 0)
    assert cb.sub((0,), (1,)) is None
    assert cb.signed_add((1,), (-2,)) is None


def test_norm_with_scaling():
    assert cb.norm((1, 2), (2, 1)) == 4


def test_box():
    assert sorted(cb.box((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


BELL = [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("n", range(6))
def test_set_partitions_bell_numbers(n):
    parts = list(cb.set_partitions(list(range(n))))
    assert len(parts) == BELL[n]


def test_compositions_cover_box():
    comps = list(cb.compositions((2,), 2))
    assert sorted(comps) == [((0,), (2,)), ((1,), (1,)), ((2,), (0,))]


def test_vector_partitions():
    parts = {tuple(sorted(p)) for p in cb.vector_partitions((3,))}
    assert len(parts) == 3  # 3, 2+1, 1+1+1


def test_graded_ball():
    assert set(cb.graded_ball(2, 1)) == {(0, 0), (1, 0), (0, 1)}


def test_chu_vandermonde_small():
    assert cb.chu_vandermonde_check(2, 2) == []
