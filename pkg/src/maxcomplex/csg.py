"""Majorization order, early functions, and complete simple games.

A binary function is early when moving a single 1 to an earlier free
position never destroys acceptance; early-plus-monotone functions are the
complete simple games, equivalently the up-sets of the binary majorization
lattice (prefix-sum domination).  Earliness constrains words of equal
weight only, so early functions factor over weight classes.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .core import (
    CapacityError,
    InputError,
    MonotoneFunction,
    WordLike,
    _mask_is_early,
    _mask_is_monotone,
    as_word,
    var_mask,
)
from . import lattice
from .lattice import (
    AdequacyCertificate,
    LatticeMap,
    Poset,
    SearchOutcome,
    _certify,
    _search_embedding,
    assemble_from_chain,
    enumerate_monotone,
    sub_masks,
)
from .bounds import CSG_COUNTS

MAX_EARLY_ARITY = 5
MAX_CSG_ARITY = 6


def majorization_leq(x: WordLike, y: WordLike) -> bool:
    """Prefix-sum domination: every prefix of y holds at least as many 1s."""
    xw, yw = as_word(x), as_word(y)
    if len(xw) != len(yw):
        raise InputError("majorization compares words of equal length")
    if any(d not in (0, 1) for d in xw + yw):
        raise InputError("majorization is defined on binary words")
    sx = sy = 0
    for dx, dy in zip(xw, yw):
        sx += dx
        sy += dy
        if sx > sy:
            return False
    return True


def _rank_leq(n: int, rx: int, ry: int) -> bool:
    sx = sy = 0
    for pos in range(n - 1, -1, -1):
        sx += (rx >> pos) & 1
        sy += (ry >> pos) & 1
        if sx > sy:
            return False
    return True


@lru_cache(maxsize=None)
def majorization_poset(n: int) -> Poset:
    """{0,1}^n under prefix-sum domination, elements labeled by rank."""
    return Poset(range(1 << n), lambda a, b: _rank_leq(n, a, b))


def _dominance_up_sets(n: int, weight: int) -> list[int]:
    """All up-closed subsets of one weight class, as language masks."""
    members = [r for r in range(1 << n) if bin(r).count("1") == weight]
    k = len(members)
    ups = []  # per member, the within-class indices of its upper bounds
    for a in range(k):
        ups.append([b for b in range(k) if _rank_leq(n, members[a], members[b])])
    out = []
    for subset in range(1 << k):
        if all(
            all((subset >> b) & 1 for b in ups[a])
            for a in range(k)
            if (subset >> a) & 1
        ):
            mask = 0
            for a in range(k):
                if (subset >> a) & 1:
                    mask |= 1 << members[a]
            out.append(mask)
    return out


def enumerate_early(n: int) -> list[int]:
    """All early functions of n variables as ascending masks.

    Earliness binds words of equal weight only, so the functions are exactly
    the products of independent up-set choices per weight class.
    """
    if n < 0:
        raise InputError("n must be >= 0")
    if n > MAX_EARLY_ARITY:
        raise CapacityError(f"early enumeration beyond n={MAX_EARLY_ARITY} is not desk-feasible")
    combos = [0]
    for weight in range(n + 1):
        class_masks = _dominance_up_sets(n, weight)
        combos = [base | extra for base in combos for extra in class_masks]
    return sorted(combos)


def is_csg_mask(n: int, mask: int) -> bool:
    return _mask_is_monotone(n, mask) and _mask_is_early(n, mask)


def is_majorization_up_set(n: int, mask: int) -> bool:
    """Language closed upward in the majorization order."""
    poset = majorization_poset(n)
    for r in range(1 << n):
        if (mask >> r) & 1 and poset.rows[r] & ~mask:
            return False
    return True


_CSG_CACHE: dict[int, tuple] = {}


def enumerate_csg(n: int) -> tuple:
    """All complete simple games (early-monotone functions), ascending masks."""
    if n < 0:
        raise InputError("n must be >= 0")
    if n > MAX_CSG_ARITY:
        raise CapacityError(f"game enumeration beyond n={MAX_CSG_ARITY} is not desk-feasible")
    if n in _CSG_CACHE:
        return _CSG_CACHE[n]
    masks = enumerate_monotone(n)
    if n >= 6:
        import numpy as np

        arr = np.array(masks, dtype=np.uint64)
        keep = np.ones(len(arr), dtype=bool)
        full = np.uint64((1 << (1 << n)) - 1)
        for i in range(n):
            for j in range(i + 1, n):
                sel = np.uint64(var_mask(n, j) & ~var_mask(n, i))
                delta = np.uint64((1 << (n - 1 - i)) - (1 << (n - 1 - j)))
                keep &= (((arr & sel) << delta) & (~arr & full)) == 0
        out = tuple(int(v) for v in arr[keep])
    else:
        out = tuple(m for m in masks if _mask_is_early(n, m))
    _CSG_CACHE[n] = out
    return out


@lru_cache(maxsize=None)
def csg_nonzero(n: int) -> tuple:
    masks = enumerate_csg(n)
    assert masks[0] == 0
    return tuple(masks[1:])


@lru_cache(maxsize=None)
def csg_nonzero_poset(j: int) -> Poset:
    return Poset(csg_nonzero(j), lambda a, b: a & ~b == 0)


def csg_map(i: int, j: int, image_masks: Sequence[int]) -> LatticeMap:
    """Map from the majorization cube E_i into the nonzero games of arity j."""
    index = {mask: idx for idx, mask in enumerate(csg_nonzero(j))}
    try:
        image = tuple(index[mask] for mask in image_masks)
    except KeyError:
        raise lattice.AdequacyError("image contains a non-game element")
    return LatticeMap(majorization_poset(i), csg_nonzero_poset(j), image)


def check_csg_relation(i: int, j: int, m: LatticeMap) -> AdequacyCertificate:
    """Certify E_i -> C_j^- with substitutions into C_{j-1} onto C_{j-1}^-."""
    if m.source.labels != majorization_poset(i).labels:
        raise InputError(f"source poset is not the majorization cube E_{i}")
    if m.target.labels != csg_nonzero_poset(j).labels:
        raise InputError(f"target poset is not the nonzero game lattice C_{j}^-")
    for mask in m.image_labels():
        for sub in sub_masks(j, mask):
            if sub and not is_csg_mask(j - 1, sub):
                raise lattice.AdequacyError("a substitution leaves the game class")
    return _certify(i, j, m, "csg", set(csg_nonzero(j - 1)))


def search_csg_relation(i: int, j: int, budget: int = 10**8) -> SearchOutcome:
    """Search for an adequate majorization-ordered embedding E_i -> C_j^-."""
    targets = csg_nonzero(j)
    if (1 << i) > len(targets):
        return SearchOutcome("none", None, 0)
    needed = set(csg_nonzero(j - 1))
    outcome = _search_embedding(
        1 << i, lambda a, b: _rank_leq(i, a, b), targets, j, needed, budget, None
    )
    if outcome.status != "found":
        return outcome
    return SearchOutcome("found", csg_map(i, j, outcome.map), outcome.nodes)


def shadow_mask(j: int, mask: int) -> int:
    """All words obtained by deleting one 1 from a member of the language."""
    out = 0
    for pos in range(j):
        ones = var_mask(j, pos)
        out |= (mask & ones) >> (1 << (j - 1 - pos))
    return out


def csg_witness_chain(n: int) -> tuple[int, int]:
    """Depths (i, j), i+j = n, where the game witness embeds E_i into C_j^-."""
    if not 1 <= n <= 8:
        raise InputError("game witness construction supports 1 <= n <= 8")

    def count_at_least(k: int) -> int:
        # game counts are nondecreasing in arity (ignore a variable to lift)
        return CSG_COUNTS[k] if k < len(CSG_COUNTS) else CSG_COUNTS[-1]

    i = 0
    while i + 1 <= n and 2 ** (i + 1) <= count_at_least(n - i - 1) - 1:
        i += 1
    return i, n - i


def build_csg_witness(n: int = 8, budget: int = 10**8, require_early: bool = False
                      ) -> tuple[MonotoneFunction, AdequacyCertificate]:
    """A language attaining the game bound, plus its chain certificate.

    The assembled language realizes the chain profile term by term, so its
    state complexity equals csg_bound(n); it is monotone by construction but
    need not be early itself.  With require_early=True the search also
    enforces the cross-boundary earliness conditions (each image must absorb
    the one-deletion shadow of every image one prefix-bit below), making the
    witness a complete simple game; that space is exhaustively refutable for
    some n (already at n=4), in which case NoWitnessError is raised.
    """
    from .witness import NoWitnessError

    i, j = csg_witness_chain(n)
    targets = csg_nonzero(j)
    needed = set(csg_nonzero(j - 1))
    shadow = (lambda mask: shadow_mask(j, mask)) if require_early else None
    outcome = _search_embedding(
        1 << i, lambda a, b: _rank_leq(i, a, b), targets, j, needed, budget, shadow
    )
    if outcome.status == "exhausted":
        raise CapacityError(f"witness search exhausted after {outcome.nodes} nodes")
    if outcome.status != "found":
        raise NoWitnessError(
            f"no chain embedding exists for n={n}"
            + (" with the earliness conditions" if require_early else "")
        )
    cert = check_csg_relation(i, j, csg_map(i, j, outcome.map))
    witness = MonotoneFunction(n, assemble_from_chain(n, i, j, outcome.map))
    return witness, cert
