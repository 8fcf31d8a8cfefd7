"""Core value types: words, bounded-length colored functions, and predicates.

A colored function f: [b]^n -> [c] assigns one of c colors to every word of
length exactly n over the alphabet [b] = {0, .., b-1}.  Color 0 means
"reject"; the binary case c=2 identifies f with the language {w : f(w)=1}.
Tables are indexed by word rank (most-significant-digit-first base-b value),
so fixing a prefix is a contiguous slice of the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

Word = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

# Tables are bytes, one cell per word; big instances must stay desk-sized.
MAX_TABLE_CELLS = 1 << 22
MAX_COLORS = 256


class InputError(ValueError):
    """An argument violates a structural precondition."""


class CapacityError(RuntimeError):
    """The request would exceed the configured in-memory limits."""


def as_word(word: WordLike) -> Word:
    """Coerce a digit string like "101" or an int sequence to a Word tuple."""
    if isinstance(word, str):
        return tuple(int(ch) for ch in word)
    return tuple(int(d) for d in word)


def rank(word: WordLike, b: int) -> int:
    """Rank of a word among all words of its length, MSD-first base b.

    Bijective between [b]^len and [b^len]; preserves lexicographic order.
    """
    if b < 1:
        raise InputError(f"alphabet size must be >= 1, got {b}")
    value = 0
    for d in as_word(word):
        if not 0 <= d < b:
            raise InputError(f"digit {d} out of range for alphabet size {b}")
        value = value * b + d
    return value


def unrank(index: int, length: int, b: int) -> Word:
    """Inverse of rank for words of the given length."""
    if not 0 <= index < b**length:
        raise InputError(f"index {index} out of range for length {length}, b={b}")
    digits = []
    for _ in range(length):
        index, d = divmod(index, b)
        digits.append(d)
    return tuple(reversed(digits))


@lru_cache(maxsize=None)
def var_mask(n: int, position: int) -> int:
    """Bitmask over [2]^n ranks: bit r set iff digit `position` of word r is 1.

    Position 0 is the first (leftmost, most significant) symbol.
    """
    place = 1 << (n - 1 - position)
    return sum(1 << r for r in range(1 << n) if r & place)


def cube_leq(x_rank: int, y_rank: int) -> bool:
    """Pointwise order on binary words of equal length, compared by rank."""
    return x_rank & ~y_rank == 0


@dataclass(frozen=True)
class ColoredFunction:
    """Total map [b]^n -> [c], stored as a dense rank-indexed table."""

    b: int
    n: int
    c: int
    table: bytes

    def __post_init__(self):
        if self.b < 1 or self.c < 1 or self.n < 0:
            raise InputError(f"bad signature b={self.b}, n={self.n}, c={self.c}")
        if self.c > MAX_COLORS:
            raise CapacityError(f"at most {MAX_COLORS} colors supported")
        cells = self.b**self.n
        if cells > MAX_TABLE_CELLS:
            raise CapacityError(f"table of {cells} cells exceeds capacity")
        if len(self.table) != cells:
            raise InputError(f"table length {len(self.table)} != b^n = {cells}")
        if any(v >= self.c for v in self.table):
            raise InputError(f"table entry out of color range [{self.c}]")

    @classmethod
    def from_values(cls, b: int, n: int, c: int, values: Iterable[int]) -> "ColoredFunction":
        return cls(b, n, c, bytes(values))

    @classmethod
    def from_words(cls, b: int, n: int, c: int, colored: dict[Word, int]) -> "ColoredFunction":
        """Build from a word -> color mapping; unlisted words get color 0."""
        table = bytearray(b**n)
        for word, color in colored.items():
            if len(word) != n:
                raise InputError(f"word {word} does not have length {n}")
            if not 0 <= color < c:
                raise InputError(f"color {color} out of range [{c}]")
            table[rank(word, b)] = color
        return cls(b, n, c, bytes(table))

    @classmethod
    def from_language(cls, n: int, words: Iterable[WordLike]) -> "ColoredFunction":
        """Binary language over {0,1}^n."""
        return cls.from_words(2, n, 2, {as_word(w): 1 for w in words})

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "ColoredFunction":
        """Binary language from a 2^n-bit mask, bit r = membership of rank r."""
        return cls(2, n, 2, bytes((mask >> r) & 1 for r in range(1 << n)))

    @property
    def mask(self) -> int:
        """2^n-bit membership mask; only defined for b=2, c=2."""
        if self.b != 2 or self.c != 2:
            raise InputError("mask view requires b=2, c=2")
        value = 0
        for r, v in enumerate(self.table):
            value |= v << r
        return value

    def value(self, word: WordLike) -> int:
        w = as_word(word)
        if len(w) != self.n:
            raise InputError(f"word length {len(w)} != n = {self.n}")
        return self.table[rank(w, self.b)]

    def words_of_color(self, color: int) -> list[Word]:
        return [unrank(r, self.n, self.b) for r, v in enumerate(self.table) if v == color]

    def support(self) -> list[Word]:
        """All words with nonzero color, in rank order."""
        return [unrank(r, self.n, self.b) for r, v in enumerate(self.table) if v]


def is_zero(f: ColoredFunction) -> bool:
    """True iff f is the constant-0 function (the empty language)."""
    return f.table == bytes(len(f.table))


def residual(f: ColoredFunction, prefix: WordLike) -> ColoredFunction:
    """The function x -> f(prefix . x) on [b]^(n-k) for a length-k prefix."""
    p = as_word(prefix)
    k = len(p)
    if k > f.n:
        raise InputError(f"prefix length {k} exceeds n = {f.n}")
    span = f.b ** (f.n - k)
    offset = rank(p, f.b) * span
    return ColoredFunction(f.b, f.n - k, f.c, f.table[offset : offset + span])


def is_monotone(f: ColoredFunction) -> bool:
    """True iff flipping any input bit from 0 to 1 never decreases f (b=c=2)."""
    if f.b != 2 or f.c != 2:
        raise InputError("is_monotone requires b=2, c=2")
    return _mask_is_monotone(f.n, f.mask)


def is_early(f: ColoredFunction) -> bool:
    """True iff moving a lone 1 to an earlier free position preserves acceptance.

    Formally: for all positions i < j and words y with y(i)=y(j)=0,
    f(y+e_j)=1 implies f(y+e_i)=1.  Position 0 is the first input symbol.
    """
    if f.b != 2 or f.c != 2:
        raise InputError("is_early requires b=2, c=2")
    return _mask_is_early(f.n, f.mask)


def _mask_is_monotone(n: int, mask: int) -> bool:
    full = (1 << (1 << n)) - 1
    if not 0 <= mask <= full:
        raise InputError("mask out of range")
    for pos in range(n):
        ones = var_mask(n, pos)
        place = 1 << (n - 1 - pos)
        # words with the bit clear, shifted onto their bit-set partners
        if ((mask & ~ones) << place) & ~mask & full:
            return False
    return True


def _mask_is_early(n: int, mask: int) -> bool:
    full = (1 << (1 << n)) - 1
    if not 0 <= mask <= full:
        raise InputError("mask out of range")
    for i in range(n):
        for j in range(i + 1, n):
            sel = var_mask(n, j) & ~var_mask(n, i)  # digit i = 0, digit j = 1
            delta = (1 << (n - 1 - i)) - (1 << (n - 1 - j))
            if ((mask & sel) << delta) & ~mask & full:
                return False
    return True


def upward_closure_mask(n: int, mask: int) -> int:
    """Mask of all words pointwise above some member of the given language."""
    closed = mask
    for pos in range(n):
        ones = var_mask(n, pos)
        place = 1 << (n - 1 - pos)
        closed |= (closed & ~ones) << place
    return closed


@dataclass(frozen=True)
class MonotoneFunction:
    """Upward-closed subset of the Boolean cube {0,1}^n as a 2^n-bit mask."""

    n: int
    mask: int

    def __post_init__(self):
        if not _mask_is_monotone(self.n, self.mask):
            raise InputError("mask is not upward closed")

    @classmethod
    def from_colored(cls, f: ColoredFunction) -> "MonotoneFunction":
        return cls(f.n, f.mask)

    def as_colored(self) -> ColoredFunction:
        return ColoredFunction.from_mask(self.n, self.mask)

    def substituted(self, eps: int) -> "MonotoneFunction":
        """Fix the first variable to eps, yielding an (n-1)-ary function."""
        if self.n == 0:
            raise InputError("cannot substitute into a 0-ary function")
        half = 1 << (self.n - 1)
        low = self.mask & ((1 << half) - 1)
        return MonotoneFunction(self.n - 1, low if eps == 0 else self.mask >> half)

    def leq(self, other: "MonotoneFunction") -> bool:
        if self.n != other.n:
            raise InputError("arity mismatch")
        return self.mask & ~other.mask == 0

    def is_zero(self) -> bool:
        return self.mask == 0
