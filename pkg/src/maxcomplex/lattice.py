"""Monotone Boolean function lattices, adequacy checks, and witnesses.

Monotone functions of n variables are stored as 2^n-bit masks, bit r being
the value on the rank-r point of the cube.  Fixing the first variable to 0
or 1 is taking the low or high half of the mask, so adequacy questions
reduce to bit arithmetic.

An embedding 2^i -> F_j^- is "adequate onto F_{j-1}^-" when it is injective
and order-preserving and the first-variable substitutions of its image hit
every nonzero monotone (j-1)-ary function.  Certificates of this are the
persistence format for expensive searches.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import (
    CapacityError,
    InputError,
    MonotoneFunction,
    cube_leq,
    var_mask,
)

MAX_MONOTONE_ARITY = 6
POSET_CHECK_LIMIT = 1 << 12

_MONO_CACHE: dict[int, array] = {}


def enumerate_monotone(n: int) -> array:
    """All monotone functions of n variables as ascending masks, 0 and 1 included.

    A function is assembled from an ordered pair g <= h of (n-1)-ary monotone
    functions (the two first-variable substitutions), which also drives the
    enumeration.
    """
    if n < 0:
        raise InputError("n must be >= 0")
    if n > MAX_MONOTONE_ARITY:
        raise CapacityError(f"enumeration beyond n={MAX_MONOTONE_ARITY} is not desk-feasible")
    if n in _MONO_CACHE:
        return _MONO_CACHE[n]
    if n == 0:
        out = array("Q", [0, 1])
    elif n <= 5:
        prev = enumerate_monotone(n - 1)
        shift = 1 << (n - 1)
        out = array("Q")
        for h in prev:
            hi = h << shift
            for g in prev:
                if g & ~h == 0:
                    out.append(hi | g)
    else:
        import numpy as np

        prev = np.array(enumerate_monotone(n - 1), dtype=np.uint64)
        chunks = []
        for h in prev:
            sel = prev[(prev & ~h) == 0]
            chunks.append(sel | (h << np.uint64(32)))
        out = array("Q")
        out.frombytes(np.concatenate(chunks).tobytes())
    _MONO_CACHE[n] = out
    return out


@lru_cache(maxsize=None)
def monotone_nonzero(n: int) -> tuple:
    """Nonzero monotone masks of n variables, ascending."""
    masks = enumerate_monotone(n)
    assert masks[0] == 0
    return tuple(masks[1:])


@lru_cache(maxsize=None)
def _nonzero_index(n: int) -> dict:
    return {mask: idx for idx, mask in enumerate(monotone_nonzero(n))}


def sub_masks(j: int, mask: int) -> tuple[int, int]:
    """First-variable substitutions of a j-ary mask as (j-1)-ary masks."""
    half = 1 << (j - 1)
    return mask & ((1 << half) - 1), mask >> half


class Poset:
    """Finite poset over explicit labels with a bit-matrix order relation."""

    def __init__(self, labels: Sequence, leq: Callable[[object, object], bool]):
        self.labels = tuple(labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InputError("duplicate poset elements")
        self.rows = [0] * n
        for a in range(n):
            row = 0
            for b in range(n):
                if leq(self.labels[a], self.labels[b]):
                    row |= 1 << b
            self.rows[a] = row
        self._index = {label: i for i, label in enumerate(self.labels)}
        if n <= POSET_CHECK_LIMIT:
            self._validate()

    def _validate(self):
        n = len(self.labels)
        for a in range(n):
            if not (self.rows[a] >> a) & 1:
                raise InputError("relation is not reflexive")
            row = self.rows[a]
            rest = row
            while rest:
                b = (rest & -rest).bit_length() - 1
                if a != b and (self.rows[b] >> a) & 1:
                    raise InputError("relation is not antisymmetric")
                if self.rows[b] & ~row:
                    raise InputError("relation is not transitive")
                rest &= rest - 1

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        return self._index[label]

    def leq(self, a: int, b: int) -> bool:
        return bool((self.rows[a] >> b) & 1)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (a, b) with a < b and nothing strictly between."""
        n = len(self.labels)
        out = []
        for a in range(n):
            ups = self.rows[a] & ~(1 << a)
            rest = ups
            while rest:
                b = (rest & -rest).bit_length() - 1
                between = ups & self._strict_down(b)
                if not between:
                    out.append((a, b))
                rest &= rest - 1
        return out

    def _strict_down(self, b: int) -> int:
        mask = 0
        for a in range(len(self.labels)):
            if a != b and (self.rows[a] >> b) & 1:
                mask |= 1 << a
        return mask


@lru_cache(maxsize=None)
def boolean_cube(i: int) -> Poset:
    """{0,1}^i under the pointwise product order, elements labeled by rank."""
    return Poset(range(1 << i), cube_leq)


@lru_cache(maxsize=None)
def monotone_nonzero_poset(j: int) -> Poset:
    return Poset(monotone_nonzero(j), lambda a, b: a & ~b == 0)


@dataclass(frozen=True)
class LatticeMap:
    """Total map between two explicit posets, by target index per source index."""

    source: Poset
    target: Poset
    image: tuple

    def __post_init__(self):
        if len(self.image) != len(self.source):
            raise InputError("image must be total on the source")
        if any(not 0 <= t < len(self.target) for t in self.image):
            raise InputError("image index out of range")

    def image_labels(self) -> tuple:
        return tuple(self.target.labels[t] for t in self.image)


def is_isotone(m: LatticeMap) -> bool:
    """True iff the map preserves order."""
    n = len(m.source)
    for a in range(n):
        row = m.source.rows[a]
        rest = row
        while rest:
            b = (rest & -rest).bit_length() - 1
            if not m.target.leq(m.image[a], m.image[b]):
                return False
            rest &= rest - 1
    return True


def is_injective(m: LatticeMap) -> bool:
    return len(set(m.image)) == len(m.image)


def is_adequate(funcs: Iterable[MonotoneFunction], strong: bool = False) -> bool:
    """Do the first-variable substitutions of S cover all of F_{j-1}^-?

    With strong=True a single substitution value must suffice on its own.
    """
    funcs = list(funcs)
    if not funcs:
        return False
    j = funcs[0].n
    if any(f.n != j for f in funcs):
        raise InputError("mixed arities")
    if j == 0:
        raise InputError("adequacy needs arity >= 1")
    needed = set(monotone_nonzero(j - 1))
    lows = {sub_masks(j, f.mask)[0] for f in funcs}
    highs = {sub_masks(j, f.mask)[1] for f in funcs}
    if strong:
        return needed <= lows or needed <= highs
    return needed <= (lows | highs)


@dataclass(frozen=True)
class AdequacyCertificate:
    """Verified embedding data: the map, its substitutions, and the cover."""

    kind: str  # "monotone" or "csg"
    i: int
    j: int
    map: LatticeMap
    substitutions: tuple  # per image element, the (eps=0, eps=1) masks
    covered: frozenset  # nonzero (j-1)-ary masks hit by substitutions
    uses_zero: bool  # some substitution is the zero function


class AdequacyError(ValueError):
    """The map fails one of the embedding requirements."""


def check_relation(i: int, j: int, m: LatticeMap) -> AdequacyCertificate:
    """Certify an injective isotone embedding 2^i -> F_j^- adequate onto F_{j-1}^-."""
    if m.source.labels != boolean_cube(i).labels:
        raise InputError(f"source poset is not the {i}-cube")
    if m.target.labels != monotone_nonzero_poset(j).labels:
        raise InputError(f"target poset is not the nonzero monotone {j}-lattice")
    return _certify(i, j, m, "monotone", set(monotone_nonzero(j - 1)))


def _certify(i: int, j: int, m: LatticeMap, kind: str, needed: set) -> AdequacyCertificate:
    if not is_injective(m):
        raise AdequacyError("map is not injective")
    if not is_isotone(m):
        raise AdequacyError("map is not isotone")
    subs = tuple(sub_masks(j, mask) for mask in m.image_labels())
    covered = {v for pair in subs for v in pair if v in needed}
    if not needed <= covered:
        missing = len(needed) - len(covered)
        raise AdequacyError(f"substitutions miss {missing} required functions")
    uses_zero = any(v == 0 for pair in subs for v in pair)
    return AdequacyCertificate(
        kind=kind, i=i, j=j, map=m, substitutions=subs,
        covered=frozenset(covered), uses_zero=uses_zero,
    )


# ---------------------------------------------------------------------------
# Built-in embedding catalog
# ---------------------------------------------------------------------------

def _f3(p_pos: int, q_pos: int, r_pos: int) -> dict:
    """The nineteen nonzero monotone 3-var masks by name, for given positions."""
    p, q, r = var_mask(3, p_pos), var_mask(3, q_pos), var_mask(3, r_pos)
    maj = (p & q) | (p & r) | (q & r)
    return {
        "bot": p & q & r,
        "m_pq": p & q, "m_pr": p & r, "m_qr": q & r,
        "j_p": p & (q | r), "j_q": q & (p | r), "j_r": r & (p | q),
        "p": p, "q": q, "r": r, "maj": maj,
        "u_p": p | (q & r), "u_q": q | (p & r), "u_r": r | (p & q),
        "v_pq": p | q, "v_pr": p | r, "v_qr": q | r,
        "top": p | q | r, "one": 0xFF,
    }


def _embedding_tables() -> dict[str, tuple[int, int, tuple]]:
    """name -> (i, j, image masks in source rank order)."""
    # j = 3 images substitute their first variable, written r below
    f = _f3(1, 2, 0)
    post_alh = (2, 3, (f["m_pq"], f["p"], f["q"], f["top"]))
    fig39_names = (
        "bot", "j_q", "m_qr", "u_q", "m_pr", "u_p", "j_r", "v_pq",
        "m_pq", "u_r", "maj", "v_qr", "j_p", "v_pr", "top", "one",
    )
    fig39 = (4, 3, tuple(f[name] for name in fig39_names))
    both_restricted = (3, 3, tuple(f[name] for name in fig39_names[1::2]))

    # j = 4 images pair two 3-var functions a <= b; the substitutions are
    # exactly a (first variable 0) and b (first variable 1)
    g = _f3(0, 1, 2)

    def pair(a: str, b: str) -> int:
        assert g[a] & ~g[b] == 0, (a, b)
        return g[a] | (g[b] << 8)

    psi_b = ("bot", "m_qr", "m_pr", "j_r", "m_pq", "j_q", "j_p", "maj")
    alh_b0 = ("bot", "q", "r", "v_qr", "p", "v_pq", "v_pr", "top")
    alh_b1 = ("maj", "u_q", "u_r", "top", "u_p", "top", "top", "one")
    alh = (4, 4, tuple(
        pair(psi_b[ry], (alh_b0, alh_b1)[e][ry])
        for ry in range(8) for e in range(2)
    ))

    small_a = ("bot", "m_pq", "m_pr", "j_p")
    small_cubes = (
        psi_b,
        ("m_pq", "q", "u_r", "v_qr", "p", "v_pq", "v_pr", "top"),
        ("m_pr", "u_q", "r", "v_qr", "p", "v_pq", "v_pr", "top"),
        ("maj", "u_q", "u_r", "v_qr", "u_p", "v_pq", "v_pr", "one"),
    )
    small = (5, 4, tuple(
        pair(small_a[re], small_cubes[re][ry])
        for re in range(4) for ry in range(8)
    ))

    cube_bot = ("bot", "r", "q", "v_qr", "p", "v_pr", "v_pq", "top")
    psi_t = ("maj", "u_r", "u_q", "v_qr", "u_p", "v_pr", "v_pq", "top")
    cube_top1 = ("maj", "u_r", "u_q", "v_qr", "u_p", "v_pr", "v_pq", "one")
    friday = (6, 4, tuple(
        pair(psi_b[ra], (cube_bot if ra == 0 else cube_top1 if ra == 7 else psi_t)[rb])
        for ra in range(8) for rb in range(8)
    ))

    return {
        "post_alh": post_alh,
        "fig39": fig39,
        "both_restricted": both_restricted,
        "alh": alh,
        "small": small,
        "friday": friday,
    }


EMBEDDING_NAMES = ("post_alh", "fig39", "both_restricted", "alh", "small", "friday")


def named_embedding(name: str) -> LatticeMap:
    """One of the built-in certified embeddings, as explicit map data."""
    tables = _embedding_tables()
    if name not in tables:
        raise InputError(f"unknown embedding {name!r}; choose from {EMBEDDING_NAMES}")
    i, j, masks = tables[name]
    index = _nonzero_index(j)
    return LatticeMap(
        source=boolean_cube(i),
        target=monotone_nonzero_poset(j),
        image=tuple(index[mask] for mask in masks),
    )


def embedding_shape(name: str) -> tuple[int, int]:
    tables = _embedding_tables()
    if name not in tables:
        raise InputError(f"unknown embedding {name!r}; choose from {EMBEDDING_NAMES}")
    i, j, _ = tables[name]
    return i, j


def lemma_les_check() -> bool:
    """Pairing two 3-var functions under a selector variable is order-faithful.

    For f_ab = (s and b) or (not s and a): f_a1b1 <= f_a2b2 iff a1 <= a2 and
    b1 <= b2, checked over all monotone quadruples exhaustively.
    """
    f3 = list(enumerate_monotone(3))
    for a1 in f3:
        for b1 in f3:
            m1 = a1 | (b1 << 8)
            for a2 in f3:
                a_le = a1 & ~a2 == 0
                for b2 in f3:
                    m2 = a2 | (b2 << 8)
                    if (m1 & ~m2 == 0) != (a_le and b1 & ~b2 == 0):
                        return False
    return True


# ---------------------------------------------------------------------------
# Backtracking search for embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found", "exhausted", or "none"
    map: "LatticeMap | None"
    nodes: int


def search_relation(i: int, j: int, budget: int = 10**8) -> SearchOutcome:
    """Look for an embedding 2^i -> F_j^- adequate onto F_{j-1}^-.

    Sources are assigned in ascending rank order (a linear extension), target
    candidates must extend all previously assigned comparable images, and
    branches that can no longer complete the cover are pruned.  The first
    map found in this canonical order is returned.
    """
    source = boolean_cube(i)
    src_leq = cube_leq
    targets = monotone_nonzero(j)
    needed = set(monotone_nonzero(j - 1))
    outcome = _search_embedding(len(source), src_leq, targets, j, needed, budget, None)
    if outcome.status != "found":
        return outcome
    index = _nonzero_index(j)
    m = LatticeMap(source, monotone_nonzero_poset(j),
                   tuple(index[mask] for mask in outcome.map))
    return SearchOutcome("found", m, outcome.nodes)


def _search_embedding(size, src_leq, targets, j, needed, budget,
                      shadow: "Callable[[int], int] | None") -> SearchOutcome:
    """Core backtracking over source ranks 0..size-1; map returned as masks."""
    subs = {t: sub_masks(j, t) for t in targets}
    contrib = {t: frozenset(v for v in subs[t] if v in needed) for t in targets}
    preds: list[list[int]] = [
        [s2 for s2 in range(s) if src_leq(s2, s)] for s in range(size)
    ]
    bit_preds: list[list[int]] = [
        [s & ~(1 << b) for b in range(s.bit_length()) if (s >> b) & 1]
        for s in range(size)
    ]
    assignment: list[int] = [0] * size
    used: set[int] = set()
    cover_count: dict[int, int] = {v: 0 for v in needed}
    state = {"nodes": 0, "exhausted": False, "missing": len(needed)}

    def extend(s: int) -> bool:
        if s == size:
            return state["missing"] == 0
        if state["missing"] > 2 * (size - s):
            return False
        required = 0
        for s2 in preds[s]:
            required |= assignment[s2]
        if shadow is not None:
            for s2 in bit_preds[s]:
                required |= shadow(assignment[s2])
        # targets come ascending, so the first solution is canonical
        opts = [t for t in targets if t not in used and required & ~t == 0]
        for t in opts:
            state["nodes"] += 1
            if state["nodes"] > budget:
                state["exhausted"] = True
                return False
            assignment[s] = t
            used.add(t)
            for v in contrib[t]:
                if cover_count[v] == 0:
                    state["missing"] -= 1
                cover_count[v] += 1
            if extend(s + 1):
                return True
            for v in contrib[t]:
                cover_count[v] -= 1
                if cover_count[v] == 0:
                    state["missing"] += 1
            used.discard(t)
            if state["exhausted"]:
                return False
        return False

    if extend(0):
        return SearchOutcome("found", tuple(assignment), state["nodes"])
    return SearchOutcome("exhausted" if state["exhausted"] else "none",
                         None, state["nodes"])


# ---------------------------------------------------------------------------
# Witness languages attaining the monotone bound
# ---------------------------------------------------------------------------

def _small_maps() -> dict[int, tuple[int, int, tuple]]:
    """Built-in chain maps for small n: (i, j, image masks by source rank)."""
    p1, one1 = var_mask(1, 0), 0b11
    p2, q2 = var_mask(2, 0), var_mask(2, 1)
    return {
        1: (0, 1, (p1,)),
        2: (1, 1, (p1, one1)),
        3: (1, 2, (p2 & q2, 0b1111)),
        4: (2, 2, (p2 & q2, q2, p2, p2 | q2)),
    }


WITNESS_MAX_N = 10

_WITNESS_CHAIN = {5: "post_alh", 6: "both_restricted", 7: "fig39",
                  8: "alh", 9: "small", 10: "friday"}


def witness_chain(n: int) -> tuple[int, int, tuple]:
    """(crossover depth i, residual arity j, image masks) used for arity n."""
    if not 0 <= n <= WITNESS_MAX_N:
        raise InputError(f"witness construction supports 0 <= n <= {WITNESS_MAX_N}")
    if n == 0:
        return 0, 0, (1,)
    if n <= 4:
        return _small_maps()[n]
    name = _WITNESS_CHAIN[n]
    i, j, masks = _embedding_tables()[name]
    return i, j, masks


def assemble_from_chain(n: int, i: int, j: int, masks: Sequence[int]) -> int:
    """Language whose depth-i residual under prefix sigma is masks[rank(sigma)]."""
    if i + j != n or len(masks) != 1 << i:
        raise InputError("chain shape mismatch")
    out = 0
    span = 1 << j
    for sigma, mask in enumerate(masks):
        out |= mask << (sigma * span)
    return out


def build_witness_language(n: int) -> MonotoneFunction:
    """A monotone language of arity n with maximal state complexity.

    Below the chain's crossover every prefix keeps a distinct residual by
    injectivity; at the crossover the embedded image substitutes onto all
    nonzero monotone functions one arity down, and deeper levels stay full.
    """
    i, j, masks = witness_chain(n)
    return MonotoneFunction(n, assemble_from_chain(n, i, j, masks))


# ---------------------------------------------------------------------------
# Certificate text format
# ---------------------------------------------------------------------------

def _mask_to_bits(mask: int, cells: int) -> str:
    return "".join("1" if (mask >> r) & 1 else "0" for r in range(cells))


def _bits_to_mask(bits: str) -> int:
    value = 0
    for r, ch in enumerate(bits):
        if ch == "1":
            value |= 1 << r
    return value


def format_certificate(cert: AdequacyCertificate) -> str:
    """Stable re-loadable text rendering of a certified embedding."""
    order = "majorization" if cert.kind == "csg" else "product"
    lines = [
        "maxcomplex-certificate v1",
        f"kind: {cert.kind}",
        f"order: {order}",
        f"i: {cert.i}",
        f"j: {cert.j}",
        "map:",
    ]
    cells = 1 << cert.j
    for rank_s, mask in enumerate(cert.map.image_labels()):
        bits = format(rank_s, f"0{cert.i}b") if cert.i else "-"
        lines.append(f"{bits} -> {_mask_to_bits(mask, cells)}")
    lines.append("cover:")
    for mask in sorted(cert.covered):
        lines.append(_mask_to_bits(mask, 1 << (cert.j - 1)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> dict:
    """Parse the certificate text format; returns kind, i, j and image masks."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if lines and lines[0].startswith("maxcomplex-cache"):
        lines = lines[1:]  # certificate stored through the disk cache
    if not lines or lines[0] != "maxcomplex-certificate v1":
        raise InputError("not a certificate file")
    fields: dict[str, str] = {}
    pos = 1
    while pos < len(lines) and lines[pos] != "map:":
        key, _, value = lines[pos].partition(":")
        fields[key.strip()] = value.strip()
        pos += 1
    if pos == len(lines):
        raise InputError("certificate has no map section")
    i, j = int(fields["i"]), int(fields["j"])
    kind = fields.get("kind", "monotone")
    image = [0] * (1 << i)
    pos += 1
    while pos < len(lines) and lines[pos] != "cover:":
        src, _, bits = lines[pos].partition("->")
        src = src.strip()
        rank_s = 0 if src == "-" else int(src, 2)
        image[rank_s] = _bits_to_mask(bits.strip())
        pos += 1
    return {"kind": kind, "i": i, "j": j, "image_masks": tuple(image)}


def verify_certificate(parsed: dict) -> AdequacyCertificate:
    """Re-check a parsed certificate from scratch."""
    i, j = parsed["i"], parsed["j"]
    if parsed["kind"] == "csg":
        from . import csg

        return csg.check_csg_relation(i, j, csg.csg_map(i, j, parsed["image_masks"]))
    index = _nonzero_index(j)
    try:
        image = tuple(index[mask] for mask in parsed["image_masks"])
    except KeyError:
        raise AdequacyError("certificate image contains a non-lattice element")
    m = LatticeMap(boolean_cube(i), monotone_nonzero_poset(j), image)
    return check_relation(i, j, m)
