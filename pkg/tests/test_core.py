import random

import pytest

from maxcomplex.core import (
    ColoredFunction,
    InputError,
    MonotoneFunction,
    _mask_is_early,
    _mask_is_monotone,
    as_word,
    is_early,
    is_monotone,
    is_zero,
    rank,
    residual,
    unrank,
    upward_closure_mask,
)

ASIAN = ColoredFunction.from_language(3, ["011", "100", "101", "110", "111"])
MAJORITY = ColoredFunction.from_language(3, ["011", "101", "110", "111"])


def test_rank_examples():
    assert rank("", 2) == 0
    assert rank("101", 2) == 5
    assert rank("12", 3) == 5


def test_rank_rejects_bad_digits():
    with pytest.raises(InputError):
        rank("2", 2)
    with pytest.raises(InputError):
        rank((0, 3), 3)


@pytest.mark.parametrize("b,length", [(2, 0), (2, 3), (3, 2), (4, 3)])
def test_rank_unrank_round_trip(b, length):
    for index in range(b**length):
        word = unrank(index, length, b)
        assert rank(word, b) == index


def test_rank_is_lexicographic():
    for b, length in ((2, 4), (3, 3)):
        words = sorted(unrank(i, length, b) for i in range(b**length))
        assert [rank(w, b) for w in words] == list(range(b**length))


def test_residual_asian_prefix0():
    g = residual(ASIAN, "0")
    assert g.n == 2
    assert g.support() == [as_word("11")]


def test_residual_empty_prefix_is_identity():
    assert residual(ASIAN, "") == ASIAN


def test_residual_majority_prefix11_constant_one():
    g = residual(MAJORITY, "11")
    # oracle: enumerate both completions of the prefix
    assert g.n == 1
    assert [g.value((x,)) for x in (0, 1)] == [MAJORITY.value((1, 1, x)) for x in (0, 1)]
    assert g.table == bytes([1, 1])


def test_residual_matches_table_lookup():
    for prefix_len in range(4):
        for p in range(2**prefix_len):
            prefix = unrank(p, prefix_len, 2)
            g = residual(ASIAN, prefix)
            for r in range(2 ** (3 - prefix_len)):
                suffix = unrank(r, 3 - prefix_len, 2)
                assert g.value(suffix) == ASIAN.value(prefix + suffix)


def test_residual_rejects_long_prefix():
    with pytest.raises(InputError):
        residual(ASIAN, "0000")


def test_residual_composition_exhaustive_n3():
    for mask in range(256):
        f = ColoredFunction.from_mask(3, mask)
        for k in range(4):
            for l in range(4 - k):
                for u_ix in range(2**k):
                    for v_ix in range(2**l):
                        u, v = unrank(u_ix, k, 2), unrank(v_ix, l, 2)
                        assert residual(residual(f, u), v) == residual(f, u + v)


def test_residual_composition_random_n4():
    rng = random.Random(7)
    for _ in range(300):
        f = ColoredFunction.from_mask(4, rng.getrandbits(16))
        k, l = rng.randint(0, 4), 0
        l = rng.randint(0, 4 - k)
        u = unrank(rng.randrange(2**k), k, 2)
        v = unrank(rng.randrange(2**l), l, 2)
        assert residual(residual(f, u), v) == residual(f, u + v)


def test_is_zero():
    assert is_zero(ColoredFunction.from_language(3, []))
    assert not is_zero(ASIAN)
    assert not is_zero(ColoredFunction(2, 1, 3, bytes([2, 2])))


def test_is_monotone_examples():
    assert is_monotone(MAJORITY)
    assert not is_monotone(ColoredFunction.from_language(3, ["001"]))
    assert is_monotone(ColoredFunction.from_mask(3, 0xFF))


def test_is_monotone_requires_binary():
    with pytest.raises(InputError):
        is_monotone(ColoredFunction(3, 1, 2, bytes([0, 1, 1])))


def test_is_early_examples():
    assert not is_early(ColoredFunction.from_language(2, ["01"]))
    assert is_early(ColoredFunction.from_language(2, ["10"]))


def test_early_count_n2():
    count = sum(1 for m in range(16) if _mask_is_early(2, m))
    assert count == 12


def test_upward_closure():
    closed = upward_closure_mask(3, 1 << rank("001", 2))
    members = {r for r in range(8) if (closed >> r) & 1}
    assert members == {rank(w, 2) for w in ("001", "011", "101", "111")}


def test_monotone_function_validates():
    MonotoneFunction(3, MAJORITY.mask)
    with pytest.raises(InputError):
        MonotoneFunction(3, 1 << rank("001", 2))


def test_monotone_substitution_and_leq():
    maj = MonotoneFunction(3, MAJORITY.mask)
    low, high = maj.substituted(0), maj.substituted(1)
    # majority with first bit 0 is AND, with first bit 1 is OR
    assert low.mask == ColoredFunction.from_language(2, ["11"]).mask
    assert high.mask == ColoredFunction.from_language(2, ["01", "10", "11"]).mask
    assert low.leq(high)
    assert not high.leq(low)


def test_residual_preserves_monotone_n5():
    from maxcomplex.lattice import enumerate_monotone

    half = 1 << 4
    for mask in enumerate_monotone(5):
        assert _mask_is_monotone(4, mask & ((1 << half) - 1))
        assert _mask_is_monotone(4, mask >> half)


def test_residual_preserves_early_monotone_n5():
    from maxcomplex.csg import enumerate_csg, is_csg_mask

    half = 1 << 4
    for mask in enumerate_csg(5):
        for sub in (mask & ((1 << half) - 1), mask >> half):
            assert _mask_is_monotone(4, sub) and _mask_is_early(4, sub)
            if sub:
                assert is_csg_mask(4, sub)


def test_n0_language_is_legal():
    f = ColoredFunction.from_words(2, 0, 2, {(): 1})
    assert f.value(()) == 1
    assert residual(f, ()) == f
