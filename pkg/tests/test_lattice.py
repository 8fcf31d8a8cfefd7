import pytest

from maxcomplex.core import (
    CapacityError,
    ColoredFunction,
    InputError,
    MonotoneFunction,
    _mask_is_monotone,
    var_mask,
)
from maxcomplex.bounds import monotone_bound
from maxcomplex.minauto import state_complexity
from maxcomplex.lattice import (
    EMBEDDING_NAMES,
    AdequacyError,
    LatticeMap,
    Poset,
    boolean_cube,
    build_witness_language,
    check_relation,
    embedding_shape,
    enumerate_monotone,
    format_certificate,
    is_adequate,
    is_injective,
    is_isotone,
    lemma_les_check,
    monotone_nonzero,
    monotone_nonzero_poset,
    named_embedding,
    parse_certificate,
    search_relation,
    sub_masks,
    verify_certificate,
    witness_chain,
)

P2, Q2 = var_mask(2, 0), var_mask(2, 1)


def mono(n, mask):
    return MonotoneFunction(n, mask)


def test_enumeration_counts_small():
    assert [len(enumerate_monotone(n)) for n in range(6)] == [2, 3, 6, 20, 168, 7581]


def test_enumeration_is_ascending_and_monotone():
    for n in range(5):
        masks = list(enumerate_monotone(n))
        assert masks == sorted(masks)
        assert all(_mask_is_monotone(n, m) for m in masks)


def test_enumeration_n2_explicit():
    assert list(enumerate_monotone(2)) == sorted(
        [0, P2 & Q2, P2, Q2, P2 | Q2, 0b1111]
    )


def test_enumeration_capacity():
    with pytest.raises(CapacityError):
        enumerate_monotone(7)


def test_poset_axioms_enforced():
    with pytest.raises(InputError):
        Poset([0, 1, 2], lambda a, b: (a, b) in {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)})


def test_poset_covers_chain():
    chain = Poset([0, 1, 2, 3], lambda a, b: a <= b)
    assert chain.covers() == [(0, 1), (1, 2), (2, 3)]


def test_is_isotone_identity_and_reversal():
    f3 = monotone_nonzero_poset(3)
    identity = LatticeMap(f3, f3, tuple(range(len(f3))))
    assert is_isotone(identity)
    cube = boolean_cube(1)
    top, bottom = len(f3) - 1, 0
    assert not is_isotone(LatticeMap(cube, f3, (top, bottom)))
    assert is_isotone(LatticeMap(cube, f3, (bottom, top)))


def test_is_adequate_examples():
    assert is_adequate([mono(2, P2 & Q2), mono(2, P2 | Q2)])
    assert is_adequate([mono(2, P2 & Q2), mono(2, 0b1111)])
    assert not is_adequate([mono(2, P2 & Q2)])


def test_strong_adequacy_items():
    one1 = mono(1, 0b11)
    p1 = mono(1, var_mask(1, 0))
    # 2^0 -> 2 -> 1 and 2^1 -> 2 -> 1
    assert is_adequate([p1], strong=True)
    assert is_adequate([p1, one1], strong=True)
    # 2^0 -> 5 => 2 holds weakly but not strongly for the meet alone
    assert not is_adequate([mono(2, P2 & Q2)], strong=True)
    # 2^1 -> 5 -> 2 and 2^2 -> 5 -> 2
    assert is_adequate([mono(2, P2 & Q2), mono(2, P2 | Q2)], strong=True)
    assert is_adequate(
        [mono(2, P2 & Q2), mono(2, P2), mono(2, Q2), mono(2, P2 | Q2)], strong=True
    )


@pytest.mark.parametrize("name,i,j", [
    ("post_alh", 2, 3),
    ("fig39", 4, 3),
    ("both_restricted", 3, 3),
    ("alh", 4, 4),
    ("small", 5, 4),
    ("friday", 6, 4),
])
def test_embeddings_certify(name, i, j):
    assert embedding_shape(name) == (i, j)
    cert = check_relation(i, j, named_embedding(name))
    assert cert.covered == frozenset(monotone_nonzero(j - 1))
    assert is_injective(cert.map) and is_isotone(cert.map)


def test_fig39_needs_a_zero_substitution():
    cert = check_relation(4, 3, named_embedding("fig39"))
    assert cert.uses_zero
    cert = check_relation(4, 4, named_embedding("alh"))
    assert not cert.uses_zero


def test_check_relation_rejects_non_injective():
    f3 = monotone_nonzero_poset(3)
    const = LatticeMap(boolean_cube(1), f3, (0, 0))
    with pytest.raises(AdequacyError):
        check_relation(1, 3, const)


def test_check_relation_rejects_poor_cover():
    # an isotone injective chain into tiny functions cannot cover F_2^-
    f3 = monotone_nonzero_poset(3)
    bot = f3.index(min(monotone_nonzero(3)))
    nxt = bot + 1
    m = LatticeMap(boolean_cube(1), f3, (bot, nxt))
    with pytest.raises(AdequacyError):
        check_relation(1, 3, m)


def test_unknown_embedding_name():
    assert set(EMBEDDING_NAMES) == {
        "post_alh", "fig39", "both_restricted", "alh", "small", "friday"
    }
    with pytest.raises(InputError):
        named_embedding("nonesuch")


def test_lemma_les_check():
    assert lemma_les_check()


@pytest.mark.parametrize("i,j", [(0, 1), (1, 1), (2, 2), (2, 3), (3, 3)])
def test_search_small_shapes(i, j):
    out = search_relation(i, j, budget=10**6)
    assert out.status == "found"
    check_relation(i, j, out.map)


def test_search_finds_4_4():
    out = search_relation(4, 4, budget=10**6)
    assert out.status == "found"
    cert = check_relation(4, 4, out.map)
    assert len(cert.covered) == 19


def test_search_pigeonhole_refutation():
    out = search_relation(3, 1, budget=10**6)
    assert out.status == "none"


def test_search_budget_exhaustion():
    out = search_relation(4, 4, budget=10)
    assert out.status == "exhausted"
    assert out.map is None


def test_search_deterministic():
    a = search_relation(3, 3, budget=10**6)
    b = search_relation(3, 3, budget=10**6)
    assert a.map.image == b.map.image


def test_witness_languages_attain_monotone_bound():
    for n in range(11):
        w = build_witness_language(n)
        f = w.as_colored()
        assert state_complexity(f) == monotone_bound(n), n


def test_witness_n3_is_the_asian_set():
    f = build_witness_language(3).as_colored()
    assert {"".join(map(str, w)) for w in f.support()} == {"011", "100", "101", "110", "111"}


def test_witness_chain_shapes():
    assert witness_chain(8)[:2] == (4, 4)
    assert witness_chain(10)[:2] == (6, 4)
    with pytest.raises(InputError):
        witness_chain(11)


def test_monotone_substitution_closure():
    for n in range(1, 6):
        half = 1 << (n - 1)
        for mask in enumerate_monotone(n):
            assert _mask_is_monotone(n - 1, mask & ((1 << half) - 1))
            assert _mask_is_monotone(n - 1, mask >> half)


def test_certificate_round_trip():
    cert = check_relation(4, 4, named_embedding("alh"))
    text = format_certificate(cert)
    again = verify_certificate(parse_certificate(text))
    assert again.covered == cert.covered
    assert again.map.image == cert.map.image


def test_certificate_tampering_detected():
    cert = check_relation(2, 3, named_embedding("post_alh"))
    lines = format_certificate(cert).splitlines()
    swapped = []
    for line in lines:
        if "->" in line and line.startswith("00"):
            src, _, bits = line.partition("->")
            # knock the image down to the zero function
            line = f"{src}-> {'0' * len(bits.strip())}"
        swapped.append(line)
    with pytest.raises(AdequacyError):
        verify_certificate(parse_certificate("\n".join(swapped)))


def test_sub_masks_match_monotone_function():
    maj = ColoredFunction.from_language(3, ["011", "101", "110", "111"]).mask
    low, high = sub_masks(3, maj)
    assert low == (P2 & Q2) and high == (P2 | Q2)
