"""Exact evaluation of the tight state-complexity upper bounds.

Everything here is exact integer arithmetic.  Comparisons against towers
like c^(b^k) are made with capped exponentiation so the minimum of a sum
term never materializes an astronomically large intermediate.
"""

from __future__ import annotations

from enum import Enum
from math import comb
from typing import Iterable, Mapping, Sequence

from .core import ColoredFunction, InputError, is_zero


class BoundKind(Enum):
    """The bound formulas evaluated by this module.

    GENERAL_PDFA   general_bound(b, c, n)
    COMPLETE_DFA   complete_dfa_bound(k, n), totality costs one extra state
    FAMILY_PDFA    family_bound(b, sizes) for explicit per-depth class sizes
    MONOTONE_PDFA  monotone_bound(n)
    CSG_PDFA       csg_bound(n)
    """

    GENERAL_PDFA = "general"
    COMPLETE_DFA = "complete"
    FAMILY_PDFA = "family"
    MONOTONE_PDFA = "monotone"
    CSG_PDFA = "csg"

# Number of monotone Boolean functions of k variables (constants included),
# k = 0..6.  Larger arities must be supplied by the caller; regeneration up
# to k=6 is available in the lattice module for cross-checking.
DEDEKIND = (2, 3, 6, 20, 168, 7581, 7828354)

# Number of early-monotone functions (complete simple games) of k variables,
# zero included, k = 0..6.  The csg module regenerates these for k <= 6.
CSG_COUNTS = (2, 3, 5, 10, 27, 119, 1173)


class NeedDedekindError(ValueError):
    """A term needs a monotone-function count beyond the built-in table."""


class NeedCsgCountError(ValueError):
    """A term needs a complete-simple-game count beyond the built-in table."""


def power_capped(base: int, exp: int, cap: int) -> int:
    """min(base**exp, cap), never holding a value much above cap."""
    if cap <= 0:
        return cap
    if base <= 1:
        return min(1 if exp == 0 else base, cap)
    result = 1
    for bit in bin(exp)[2:]:
        result *= result
        if bit == "1":
            result *= base
        if result >= cap:
            return cap
    return result


def _min_term(prefixes: int, c: int, words_left: int) -> int:
    """min(prefixes, c**words_left - 1) computed lazily."""
    capped = power_capped(c, words_left, prefixes + 2)
    if capped >= prefixes + 1:
        return prefixes
    return capped - 1


def general_bound(b: int, c: int, n: int) -> int:
    """Sum over depths i of min(b^i, c^(b^(n-i)) - 1)."""
    if b < 1 or c < 1 or n < 0:
        raise InputError(f"bad parameters b={b}, c={c}, n={n}")
    total = 0
    prefixes = 1
    for i in range(n + 1):
        total += _min_term(prefixes, c, b ** (n - i))
        prefixes *= b
    return total


def complete_dfa_bound(k: int, n: int) -> tuple[int, int]:
    """Crossover index r and the tight bound for complete (total) automata.

    r is the least m with k^m >= 2^(k^(n-m)) - 1; the bound is
    (k^r - 1)/(k - 1) + sum_{j=0}^{n-r} (2^(k^j) - 1) + 1.
    Requiring totality costs exactly one extra state over the partial bound.
    """
    if k < 2:
        raise InputError("complete-automaton bound needs alphabet size >= 2")
    if n < 0:
        raise InputError("n must be >= 0")
    r = None
    for m in range(n + 1):
        lhs = k**m
        if power_capped(2, k ** (n - m), lhs + 2) <= lhs + 1:
            r = m
            break
    assert r is not None  # m = n always satisfies k^n >= 2^1 - 1
    bound = (k**r - 1) // (k - 1) + sum(2 ** (k**j) - 1 for j in range(n - r + 1)) + 1
    return r, bound


def family_bound(b: int, sizes: Sequence[int]) -> int:
    """Sum over depths i of min(b^i, sizes[i]) for per-depth class sizes."""
    total = 0
    prefixes = 1
    for size in sizes:
        total += min(prefixes, size)
        prefixes *= b
    return total


def cp_family(seed: Iterable[ColoredFunction]) -> list[int]:
    """Sizes of the residual closure levels of a set of functions.

    Level k holds every function obtained from a seed member by fixing its
    first k inputs; zero functions are discarded.  All seeds must share the
    same signature (b, n, c).
    """
    funcs = list(seed)
    if not funcs:
        raise InputError("empty seed")
    b, n, c = funcs[0].b, funcs[0].n, funcs[0].c
    if any((f.b, f.n, f.c) != (b, n, c) for f in funcs):
        raise InputError("seed members have mixed signatures")
    level = {f.table for f in funcs if not is_zero(f)}
    sizes = [len(level)]
    for depth in range(n):
        span = b ** (n - depth - 1)
        dead = bytes(span)
        nxt = set()
        for table in level:
            for i in range(b):
                piece = table[i * span : (i + 1) * span]
                if piece != dead:
                    nxt.add(piece)
        level = nxt
        sizes.append(len(level))
    return sizes


def _table_term(i: int, k: int, table: Sequence[int], extra: Mapping[int, int] | None,
                error: type[ValueError], what: str) -> int:
    """min(2^i, count(k) - 1) with count from a table plus safe fallbacks."""
    if k < len(table):
        return min(2**i, table[k] - 1)
    if extra and k in extra:
        return min(2**i, extra[k] - 1)
    if table is DEDEKIND:
        # antichains of the middle binomial layer give 2^comb(k, k//2)
        # monotone functions, enough to certify the minimum when i is small
        if comb(k, k // 2) > i:
            return 2**i
    else:
        # counts grow with arity: an (k-1)-ary game lifts by ignoring a variable
        if 2**i <= table[-1] - 1:
            return 2**i
    raise error(f"need {what}({k}) to evaluate this bound; supply it explicitly")


def monotone_bound(n: int, dedekind: Mapping[int, int] | None = None) -> int:
    """Sum over depths i of min(2^i, M(n-i) - 1) for monotone languages."""
    if n < 0:
        raise InputError("n must be >= 0")
    return sum(
        _table_term(i, n - i, DEDEKIND, dedekind, NeedDedekindError, "dedekind")
        for i in range(n + 1)
    )


def csg_bound(n: int, csg_counts: Mapping[int, int] | None = None) -> int:
    """Sum over depths i of min(2^i, |C_(n-i)| - 1) for complete simple games."""
    if n < 0:
        raise InputError("n must be >= 0")
    return sum(
        _table_term(i, n - i, CSG_COUNTS, csg_counts, NeedCsgCountError, "csg_count")
        for i in range(n + 1)
    )
