"""Exact counting of maximal-complexity functions.

The count is determined entirely at the crossover depth i: a function is
maximal iff its depth-i residual assignment covers every nonzero function of
the remaining arity while the induced depth-(i-1) residuals stay distinct
and alive.  Inclusion-exclusion over the missed values gives a closed form.
"""

from __future__ import annotations

from math import comb, factorial, log10

from .core import CapacityError, InputError
from .witness import NoWitnessError, crossover

# Keeps the inclusion-exclusion loop responsive: at most this many big-int
# multiplications (terms x falling-factorial length).
MAX_COUNT_WORK = 10**7

# Refuse to materialize codomain cardinalities above this many decimal digits.
DIGIT_LIMIT = 10**6


class NoMaxError(ValueError):
    """The bound's term-by-term profile is not realizable for these parameters."""


def stirling2(m: int, n: int) -> int:
    """Stirling number of the second kind S(m, n)."""
    if m < 0 or n < 0:
        raise InputError("arguments must be >= 0")
    if n > m:
        return 0
    if n == 0:
        return 1 if m == 0 else 0
    row = [1] + [0] * n  # S(0, .)
    for _ in range(m):
        new = [0] * (n + 1)
        for j in range(1, n + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[n]


def onto_count(m: int, n: int) -> int:
    """Number of surjections from [m] onto [n]: n! * S(m, n)."""
    s = stirling2(m, n)
    return 0 if s == 0 else factorial(n) * s


def onto_first_count(a: int, b: int) -> int:
    """Functions [a] -> [b] covering the first b-1 elements of [b].

    Summed over how many arguments m land on the exempt last element:
    sum_m C(a, m) * onto(a - m, b - 1).
    """
    if a < 0 or b < 1:
        raise InputError("need a >= 0 and b >= 1")
    return sum(comb(a, m) * onto_count(a - m, b - 1) for m in range(a - (b - 1) + 1))


def o_i(b: int, c: int, n: int, i: int, digit_limit: int = DIGIT_LIMIT) -> int:
    """Functions from [b^i] to [c^(b^(n-i))] onto all but the last element."""
    if not 0 <= i <= n:
        raise InputError(f"need 0 <= i <= n, got i={i}, n={n}")
    if b < 1 or c < 1:
        raise InputError(f"bad parameters b={b}, c={c}")
    exponent = b ** (n - i)
    if c > 1:
        # c^exponent has exponent * log10(c) decimal digits, give or take one
        if exponent > 4 * digit_limit or exponent * log10(c) > digit_limit:
            raise CapacityError("codomain description exceeds the digit limit")
    return onto_first_count(b**i, c**exponent)


def falling_factorial(x: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= x - t
        if out == 0:
            return 0
    return out


def count_max(b: int, c: int, n: int) -> tuple[int, int]:
    """Crossover depth and the exact number of maximum-complexity functions.

    At the crossover i the data of a maximal function is the assignment of
    the b^i depth-i prefixes to functions of arity n-i.  Writing N for the
    number of such functions (zero included) and s = N - 1, the assignment
    must cover all s nonzero functions, and its b^(i-1) consecutive b-blocks
    must be pairwise distinct and not identically zero.  By inclusion-
    exclusion over missed nonzero functions:

        sum_j (-1)^j C(s, j) * ff((N - j)^b - 1, b^(i-1))

    where ff is the falling factorial counting injective block choices.
    """
    if c < 2:
        raise NoMaxError("c=1 admits no nonzero functions")
    try:
        cross = crossover(b, c, n)
    except NoWitnessError as exc:
        raise NoMaxError(str(exc)) from None
    i = cross.i
    if i == 0:
        # c=2 with a single word: the unique maximal function accepts it
        return 0, 1
    codomain = c ** (b**cross.k)
    s = codomain - 1
    blocks = b ** (i - 1)
    if s * blocks > MAX_COUNT_WORK:
        raise CapacityError("count exceeds the configured work limit")
    total = 0
    for j in range(s + 1):
        term = comb(s, j) * falling_factorial((codomain - j) ** b - 1, blocks)
        total += -term if j & 1 else term
    return i, total
