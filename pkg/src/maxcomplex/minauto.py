"""Minimal partial automata for bounded-length colored functions.

States of the minimal recognizer correspond to the distinct nonzero
residuals of the function; prefixes whose residual is identically zero get
no state at all.  Because every accepted word has length exactly n, the
automaton is leveled: transitions go from depth d to depth d+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ColoredFunction,
    InputError,
    Word,
    WordLike,
    as_word,
    is_zero,
    rank,
    upward_closure_mask,
)


class NoAutomatonError(ValueError):
    """The zero function is recognized by no partial automaton."""


def _slices(table: bytes, b: int) -> list[bytes]:
    span = len(table) // b
    return [table[i * span : (i + 1) * span] for i in range(b)]


def states_by_depth(f: ColoredFunction) -> list[int]:
    """Number of distinct nonzero residuals at each prefix length 0..n."""
    if is_zero(f):
        return []
    counts = []
    level = {f.table}
    for _ in range(f.n):
        counts.append(len(level))
        nxt = set()
        for table in level:
            span = len(table) // f.b
            dead = bytes(span)
            for i in range(f.b):
                piece = table[i * span : (i + 1) * span]
                if piece != dead:
                    nxt.add(piece)
        level = nxt
    counts.append(len(level))
    return counts


def state_complexity(f: ColoredFunction) -> int:
    """Exact minimal state count over all partial recognizers of f.

    Equals the number of distinct nonzero residuals over all prefixes;
    0 for the zero function.
    """
    return sum(states_by_depth(f))


@dataclass(frozen=True)
class Pdfa:
    """Leveled partial deterministic automaton accepting a colored function.

    Special states q_1..q_{c-1} are the depth-n states; a run ends in q_i
    exactly on the words of color i, and dies (or never existed) on color 0.
    """

    b: int
    n: int
    c: int
    state_count: int
    start: int
    transitions: dict[tuple[int, int], int]
    special: tuple  # index i-1 holds the id of q_i, or None if color i unused
    depth: tuple    # depth of each state

    def successors(self, state: int) -> list[tuple[int, int]]:
        return [(sym, self.transitions[(state, sym)])
                for sym in range(self.b) if (state, sym) in self.transitions]


def minimal_pdfa(f: ColoredFunction) -> Pdfa:
    """Construct the canonical minimal recognizer of a nonzero function.

    State ids are assigned breadth-first; within a depth, states are numbered
    by the lexicographically least prefix reaching them, so output is
    deterministic.
    """
    if is_zero(f):
        raise NoAutomatonError("the zero function has no recognizer")
    transitions: dict[tuple[int, int], int] = {}
    depth_of: list[int] = [0]
    level: list[bytes] = [f.table]
    level_ids = {f.table: 0}
    next_id = 1
    for depth in range(f.n):
        nxt_ids: dict[bytes, int] = {}
        nxt_level: list[bytes] = []
        for table in level:
            sid = level_ids[table]
            span = len(table) // f.b
            dead = bytes(span)
            for sym in range(f.b):
                piece = table[sym * span : (sym + 1) * span]
                if piece == dead:
                    continue
                if piece not in nxt_ids:
                    nxt_ids[piece] = next_id
                    depth_of.append(depth + 1)
                    nxt_level.append(piece)
                    next_id += 1
                transitions[(sid, sym)] = nxt_ids[piece]
        level = nxt_level
        level_ids = nxt_ids
    special = [None] * (f.c - 1)
    for table, sid in level_ids.items():
        special[table[0] - 1] = sid
    return Pdfa(
        b=f.b,
        n=f.n,
        c=f.c,
        state_count=next_id,
        start=0,
        transitions=transitions,
        special=tuple(special),
        depth=tuple(depth_of),
    )


def run(a: Pdfa, word: WordLike) -> int:
    """Color assigned by the automaton: i > 0 if the run ends in q_i, else 0."""
    w = as_word(word)
    if len(w) != a.n:
        raise InputError(f"word length {len(w)} != n = {a.n}")
    state = a.start
    for d in w:
        if not 0 <= d < a.b:
            raise InputError(f"digit {d} out of range for alphabet size {a.b}")
        nxt = a.transitions.get((state, d))
        if nxt is None:
            return 0
        state = nxt
    for i, sid in enumerate(a.special, start=1):
        if sid == state:
            return i
    return 0


def mn_equivalent(s: WordLike, t: WordLike, f: ColoredFunction,
                  up_closure: bool = False) -> bool:
    """Pairwise bounded equivalence test between two prefixes.

    Scans every extension u that keeps both s.u and t.u within length n and
    compares the colors assigned (a word shorter than n counts as color 0).
    With up_closure=True membership is taken in the upward closure of the
    language instead (b=2, c=2 only).
    """
    sw, tw = as_word(s), as_word(t)
    if len(sw) > f.n or len(tw) > f.n:
        raise InputError("prefix longer than n")
    table = f.table
    if up_closure:
        if f.b != 2 or f.c != 2:
            raise InputError("up-closure test requires b=2, c=2")
        closed = upward_closure_mask(f.n, f.mask)
        table = bytes((closed >> r) & 1 for r in range(len(f.table)))
    rs, rt = rank(sw, f.b), rank(tw, f.b)
    for ext in range(f.n - max(len(sw), len(tw)) + 1):
        s_full = len(sw) + ext == f.n
        t_full = len(tw) + ext == f.n
        if not s_full and not t_full:
            continue
        for u in range(f.b**ext):
            cs = table[rs * f.b**ext + u] if s_full else 0
            ct = table[rt * f.b**ext + u] if t_full else 0
            if cs != ct:
                return False
    return True


def _live_prefixes(f: ColoredFunction, depth: int) -> list[int]:
    """Ranks of depth-length prefixes whose residual is not identically zero."""
    span = f.b ** (f.n - depth)
    dead = bytes(span)
    return [r for r in range(f.b**depth)
            if f.table[r * span : (r + 1) * span] != dead]


@dataclass(frozen=True)
class EquivClasses:
    """Live prefixes grouped into classes of equivalent behavior, per depth.

    Two prefixes share a class exactly when no bounded extension separates
    them; live prefixes of different lengths never do (their extensions
    cannot both reach length n), so the grouping is per depth.
    """

    b: int
    n: int
    by_depth: tuple  # per depth, a tuple of classes, each a tuple of Words

    @property
    def class_count(self) -> int:
        return sum(len(classes) for classes in self.by_depth)


def mn_classes(f: ColoredFunction, up_closure: bool = False) -> EquivClasses:
    """Group all live prefixes by the pairwise bounded-equivalence test."""
    by_depth = []
    for depth in range(f.n + 1):
        groups: list[list[Word]] = []
        for r in _live_prefixes(f, depth):
            prefix = tuple(_digits(r, depth, f.b))
            for group in groups:
                if mn_equivalent(prefix, group[0], f, up_closure):
                    group.append(prefix)
                    break
            else:
                groups.append([prefix])
        by_depth.append(tuple(tuple(g) for g in groups))
    return EquivClasses(f.b, f.n, tuple(by_depth))


def mn_class_count(f: ColoredFunction, up_closure: bool = False) -> int:
    """Number of pairwise-equivalence classes over all live prefixes."""
    if is_zero(f):
        return 0
    return mn_classes(f, up_closure).class_count


def _digits(index: int, length: int, b: int) -> list[int]:
    out = []
    for _ in range(length):
        index, d = divmod(index, b)
        out.append(d)
    return out[::-1]


def export_dot(a: Pdfa) -> str:
    """Deterministic DOT rendering; parallel edges get merged labels."""
    lines = [
        "digraph pdfa {",
        "  rankdir=LR;",
        '  __start [shape=point, label=""];',
        f"  __start -> s{a.start};",
    ]
    special_name = {sid: f"q_{i}" for i, sid in enumerate(a.special, start=1)
                    if sid is not None}
    for sid in range(a.state_count):
        if sid in special_name:
            lines.append(f'  s{sid} [shape=doublecircle, label="{special_name[sid]}"];')
        else:
            lines.append(f'  s{sid} [shape=circle, label="s{sid}"];')
    merged: dict[tuple[int, int], list[int]] = {}
    for (src, sym), dst in a.transitions.items():
        merged.setdefault((src, dst), []).append(sym)
    for (src, dst) in sorted(merged):
        label = ",".join(str(sym) for sym in sorted(merged[(src, dst)]))
        lines.append(f'  s{src} -> s{dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
