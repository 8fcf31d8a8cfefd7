"""Explicit construction of functions attaining the general bound.

The construction works down from the crossover depth: below it every prefix
gets its own residual, at it the prefixes map onto all nonzero functions of
the remaining arity, and deeper levels inherit fullness automatically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count

from .core import CapacityError, ColoredFunction, InputError, MAX_TABLE_CELLS
from .bounds import power_capped


class NoWitnessError(ValueError):
    """No maximal witness exists for these parameters."""


@dataclass(frozen=True)
class CrossoverPoint:
    """Least depth i where prefixes outnumber the nonzero deeper functions."""

    i: int
    k: int  # n - i


def crossover(b: int, c: int, n: int) -> CrossoverPoint:
    """The unique depth where min(b^i, c^(b^(n-i)) - 1) switches sides.

    Returns the least i with b^i >= c^(b^(n-i)) - 1.
    """
    if c == 1:
        raise NoWitnessError("c=1 admits only the zero function")
    if b < 1 or n < 0:
        raise InputError(f"bad parameters b={b}, n={n}")
    prefixes = 1
    for i in range(n + 1):
        if power_capped(c, b ** (n - i), prefixes + 2) <= prefixes + 1:
            return CrossoverPoint(i, n - i)
        prefixes *= b
    raise NoWitnessError(
        f"no crossover: b^n = {b**n} < c-1 = {c - 1} (colors outnumber words)"
    )


def _nonzero_table(index: int, b: int, c: int, arity: int) -> bytes:
    """Table of the index-th nonzero function, tables read as base-c numbers."""
    cells = b**arity
    digits = bytearray(cells)
    for pos in range(cells - 1, -1, -1):
        index, d = divmod(index, c)
        digits[pos] = d
    return bytes(digits)


def nonzero_functions(b: int, c: int, arity: int) -> list[ColoredFunction]:
    """All nonzero functions [b]^arity -> [c] in canonical ascending order."""
    if arity < 0:
        raise InputError("arity must be >= 0")
    total = power_capped(c, b**arity, MAX_TABLE_CELLS + 2)
    if total > MAX_TABLE_CELLS:
        raise CapacityError(f"{total - 1} functions exceed capacity")
    return [
        ColoredFunction(b, arity, c, _nonzero_table(idx, b, c, arity))
        for idx in range(1, total)
    ]


def construct_maximal(b: int, c: int, n: int) -> ColoredFunction:
    """A function whose state complexity equals general_bound(b, c, n)."""
    if c == 1:
        raise NoWitnessError("c=1 admits only the zero function")
    if b < 1 or n < 0:
        raise InputError(f"bad parameters b={b}, n={n}")
    if b == 1:
        # single word; any nonzero color yields the full chain of n+1 states
        return ColoredFunction(1, n, c, bytes([c - 1]))
    if b**n < c - 1:
        # colors outnumber words: all-distinct nonzero colors is maximal
        return ColoredFunction(b, n, c, bytes(r + 1 for r in range(b**n)))
    cross = crossover(b, c, n)
    if cross.i == 0:
        # only happens for c=2, n=0: accept the empty word
        return ColoredFunction(b, 0, c, bytes([1]))
    k = cross.k
    s = c ** (b**k) - 1  # number of nonzero k-ary functions
    blocks = b ** (cross.i - 1)
    if s > MAX_TABLE_CELLS or blocks > MAX_TABLE_CELLS or b**n > MAX_TABLE_CELLS:
        raise CapacityError("construction exceeds capacity limits")
    parts = [_nonzero_table(idx, b, c, k) for idx in range(1, s + 1)]
    q, r = divmod(s, b)
    glued = [b"".join(parts[j * b : (j + 1) * b]) for j in range(q)]
    if r:
        # pad the leftover block with copies of the first function
        glued.append(b"".join(parts[q * b : q * b + r] + [parts[0]] * (b - r)))
    used = set(glued)
    assert len(used) == len(glued) <= blocks
    # extend with the canonically earliest unused nonzero (k+1)-ary functions
    for idx in count(1):
        if len(glued) == blocks:
            break
        candidate = _nonzero_table(idx, b, c, k + 1)
        if candidate not in used:
            glued.append(candidate)
            used.add(candidate)
    return ColoredFunction(b, n, c, b"".join(glued))
