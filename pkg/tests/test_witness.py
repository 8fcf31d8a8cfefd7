import pytest

from maxcomplex.bounds import general_bound
from maxcomplex.minauto import state_complexity, states_by_depth
from maxcomplex.witness import (
    NoWitnessError,
    construct_maximal,
    crossover,
    nonzero_functions,
)


def test_crossover_examples():
    assert (crossover(2, 2, 3).i, crossover(2, 2, 3).k) == (2, 1)
    assert crossover(2, 2, 4).i == 3
    assert crossover(2, 3, 1).i == 1


def test_crossover_is_least_index():
    for b in (2, 3):
        for c in (2, 3):
            for n in range(7):
                try:
                    i = crossover(b, c, n).i
                except NoWitnessError:
                    assert b**n < c - 1  # colors outnumber words: no switch
                    continue
                assert b**i >= c ** (b ** (n - i)) - 1
                for smaller in range(i):
                    assert b**smaller < c ** (b ** (n - smaller)) - 1


def test_crossover_requires_colors():
    with pytest.raises(NoWitnessError):
        crossover(2, 1, 3)


def test_nonzero_functions_examples():
    only = nonzero_functions(2, 2, 0)
    assert len(only) == 1 and only[0].table == bytes([1])
    three = nonzero_functions(2, 2, 1)
    assert [f.support() for f in three] == [[(1,)], [(0,)], [(0,), (1,)]]
    assert len(nonzero_functions(2, 3, 1)) == 8


def test_nonzero_functions_are_distinct_and_ordered():
    fs = nonzero_functions(2, 3, 2)
    codes = [sum(v * 3 ** (len(f.table) - 1 - i) for i, v in enumerate(f.table))
             for f in fs]
    assert codes == list(range(1, 3**4))


@pytest.mark.parametrize("b,c", [(2, 2), (2, 3), (3, 2)])
def test_construct_attains_bound(b, c):
    for n in range(7):
        f = construct_maximal(b, c, n)
        assert state_complexity(f) == general_bound(b, c, n), (b, c, n)


def test_construct_profile_is_termwise_maximal():
    f = construct_maximal(2, 2, 4)
    assert states_by_depth(f) == [min(2**d, 2 ** (2 ** (4 - d)) - 1) for d in range(5)]


def test_construct_known_small_values():
    assert state_complexity(construct_maximal(2, 2, 3)) == 7
    assert state_complexity(construct_maximal(3, 2, 2)) == general_bound(3, 2, 2) == 5
    for n, expected in ((4, 11), (5, 19), (6, 34)):
        assert state_complexity(construct_maximal(2, 2, n)) == expected


def test_construct_single_letter_alphabet():
    f = construct_maximal(1, 3, 4)
    assert f.table == bytes([2])
    assert state_complexity(f) == general_bound(1, 3, 4) == 5


def test_construct_when_colors_outnumber_words():
    f = construct_maximal(2, 10, 1)
    assert sorted(f.table) == [1, 2]
    assert state_complexity(f) == general_bound(2, 10, 1) == 3


def test_construct_rejects_c1():
    with pytest.raises(NoWitnessError):
        construct_maximal(2, 1, 3)


def test_construct_deterministic():
    assert construct_maximal(2, 2, 5) == construct_maximal(2, 2, 5)


def test_constructed_witness_is_table1_member():
    f = construct_maximal(2, 2, 3)
    words = {"".join(map(str, w)) for w in f.support()}
    assert words == {"001", "010", "100", "101", "111"}
