import pytest

from maxcomplex.core import ColoredFunction, InputError
from maxcomplex.bounds import (
    CSG_COUNTS,
    DEDEKIND,
    NeedCsgCountError,
    NeedDedekindError,
    complete_dfa_bound,
    cp_family,
    csg_bound,
    family_bound,
    general_bound,
    monotone_bound,
    power_capped,
)

MONOTONE_STATES = (1, 2, 4, 6, 10, 15, 23, 39, 58, 90, 154)


def test_power_capped():
    assert power_capped(2, 10, 5000) == 1024
    assert power_capped(2, 100, 5000) == 5000
    assert power_capped(1, 10**9, 7) == 1
    assert power_capped(3, 0, 7) == 1


def test_general_bound_examples():
    assert general_bound(2, 2, 3) == 7
    # direct summation oracle
    assert general_bound(2, 2, 4) == sum(min(2**i, 2 ** (2 ** (4 - i)) - 1) for i in range(5)) == 11
    assert general_bound(3, 1, 5) == 0


def test_general_bound_equals_binary_formula():
    for n in range(9):
        direct = sum(min(2**i, 2 ** (2 ** (n - i)) - 1) for i in range(n + 1))
        assert general_bound(2, 2, n) == direct


def test_general_bound_values_small():
    assert [general_bound(2, 2, n) for n in range(7)] == [1, 2, 4, 7, 11, 19, 34]


def test_complete_dfa_bound_examples():
    assert complete_dfa_bound(2, 3) == (2, 8)
    assert complete_dfa_bound(2, 0) == (0, 2)
    with pytest.raises(InputError):
        complete_dfa_bound(1, 3)


def test_complete_dfa_bound_r_is_minimal():
    for k in range(2, 5):
        for n in range(7):
            r, _ = complete_dfa_bound(k, n)
            assert k**r >= 2 ** (k ** (n - r)) - 1
            if r > 0:
                assert k ** (r - 1) < 2 ** (k ** (n - r + 1)) - 1


def test_complete_equals_partial_plus_one():
    for k in range(2, 5):
        for n in range(7):
            assert complete_dfa_bound(k, n)[1] == general_bound(k, 2, n) + 1


def test_family_bound_examples():
    n = 3
    sizes = [2 ** (2 ** (n - i)) - 1 for i in range(n + 1)]
    assert family_bound(2, sizes) == general_bound(2, 2, n)
    assert family_bound(2, (19, 5, 2, 1)) == 6
    assert family_bound(2, (0, 0, 0)) == 0


def test_cp_family_monotone_n3():
    from maxcomplex.lattice import monotone_nonzero

    seed = [ColoredFunction.from_mask(3, m) for m in monotone_nonzero(3)]
    assert cp_family(seed) == [19, 5, 2, 1]


def test_cp_family_singleton():
    f = ColoredFunction.from_language(3, ["011"])
    assert cp_family([f])[0] == 1


def test_cp_family_all_binary_n2():
    seed = [ColoredFunction.from_mask(2, m) for m in range(1, 16)]
    assert cp_family(seed) == [15, 3, 1]


def test_cp_family_rejects_mixed_signatures():
    with pytest.raises(InputError):
        cp_family([ColoredFunction.from_mask(2, 1), ColoredFunction.from_mask(3, 1)])


def test_monotone_bound_table():
    assert [monotone_bound(n) for n in range(11)] == list(MONOTONE_STATES)


def test_monotone_bound_needs_dedekind_eventually():
    with pytest.raises(NeedDedekindError):
        monotone_bound(42)
    # supplying the missing count unblocks the term
    m7 = 2414682040998
    value = monotone_bound(42, dedekind={7: m7})
    assert value > monotone_bound(10)


def test_matches_family_bound_via_enumeration():
    from maxcomplex.lattice import monotone_nonzero

    for n in range(6):
        seed = [ColoredFunction.from_mask(n, m) for m in monotone_nonzero(n)]
        assert family_bound(2, cp_family(seed)) == monotone_bound(n)


def test_csg_bound_values():
    assert csg_bound(8) == 47
    assert csg_bound(3) == 1 + 2 + 2 + 1 == 6
    assert csg_bound(0) == 1


def test_csg_bound_needs_counts_eventually():
    with pytest.raises(NeedCsgCountError):
        csg_bound(18)
    assert csg_bound(18, csg_counts={k: 10**9 for k in range(7, 19)}) > 0


def test_bounds_nondecreasing_in_n():
    for fn in (lambda n: general_bound(2, 2, n),
               lambda n: general_bound(3, 2, n),
               monotone_bound,
               csg_bound):
        values = [fn(n) for n in range(10)]
        assert values == sorted(values)


def test_bound_kind_enum_is_exhaustive():
    from maxcomplex.bounds import BoundKind

    assert {k.value for k in BoundKind} == {
        "general", "complete", "family", "monotone", "csg"
    }


def test_builtin_tables_match_enumerations():
    from maxcomplex.lattice import enumerate_monotone
    from maxcomplex.csg import enumerate_csg

    for n in range(6):
        assert DEDEKIND[n] == len(enumerate_monotone(n))
        assert CSG_COUNTS[n] == len(enumerate_csg(n))
