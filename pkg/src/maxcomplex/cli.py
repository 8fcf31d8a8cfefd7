"""Command-line interface: language files, reports, and cached searches.

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch,
3 capacity exceeded, 4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import (
    CapacityError,
    ColoredFunction,
    InputError,
    Word,
    unrank,
)
from . import bounds, counting, csg, lattice, minauto, witness
from .cache import DiskCache

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CAPACITY = 3
EXIT_EXHAUSTED = 4

EMPTY_WORD_TOKEN = "-"


class ParseError(InputError):
    """A language file is malformed; message carries the line number."""


class MismatchError(RuntimeError):
    """A verification cross-check failed."""


class ExhaustedError(RuntimeError):
    """A search ran out of budget."""


# ---------------------------------------------------------------------------
# Language files
# ---------------------------------------------------------------------------

def _parse_word_token(token: str, lineno: int) -> Word:
    if token == EMPTY_WORD_TOKEN:
        return ()
    if not token.isdigit():
        raise ParseError(f"line {lineno}: bad word {token!r}")
    return tuple(int(ch) for ch in token)


def parse_language_file(text: str) -> ColoredFunction:
    """Parse the language file format.

    An optional header line "b=<int> c=<int> n=<int>" fixes the signature;
    body lines are "word" (color 1) or "word <color>".  '#' comments and
    blank lines are ignored; unlisted words have color 0.  Alphabets beyond
    size 10 do not fit the single-digit word syntax.
    """
    header: dict[str, int] = {}
    entries: list[tuple[int, Word, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line and not entries and not header:
            for part in line.split():
                key, _, value = part.partition("=")
                if key not in ("b", "c", "n") or not value.lstrip("-").isdigit():
                    raise ParseError(f"line {lineno}: bad header field {part!r}")
                header[key] = int(value)
            continue
        fields = line.split()
        if len(fields) == 1:
            word, color = _parse_word_token(fields[0], lineno), 1
        elif len(fields) == 2:
            word = _parse_word_token(fields[0], lineno)
            if not fields[1].isdigit():
                raise ParseError(f"line {lineno}: bad color {fields[1]!r}")
            color = int(fields[1])
        else:
            raise ParseError(f"line {lineno}: expected 'word' or 'word color'")
        entries.append((lineno, word, color))
    if "n" in header:
        n = header["n"]
    elif entries:
        n = len(entries[0][1])
    else:
        raise ParseError("empty file without a header: language length is unknown")
    b = header.get("b", max((max(w, default=0) for _, w, _ in entries), default=0) + 1)
    b = max(b, 2)
    c = header.get("c", max((color for _, _, color in entries), default=1) + 1)
    c = max(c, 2)
    seen: dict[Word, tuple[int, int]] = {}
    for lineno, word, color in entries:
        if len(word) != n:
            raise ParseError(f"line {lineno}: word length {len(word)} != n = {n}")
        if any(d >= b for d in word):
            raise ParseError(f"line {lineno}: digit out of range for b = {b}")
        if color >= c:
            raise ParseError(f"line {lineno}: color {color} out of range for c = {c}")
        if word in seen and seen[word][1] != color:
            raise ParseError(
                f"line {lineno}: word repeats line {seen[word][0]} with a different color"
            )
        seen[word] = (lineno, color)
    return ColoredFunction.from_words(b, n, c, {w: col for w, (_, col) in seen.items()})


def format_language_file(f: ColoredFunction, comment: str = "") -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"b={f.b} c={f.c} n={f.n}")
    for r, color in enumerate(f.table):
        if color == 0:
            continue
        word = unrank(r, f.n, f.b)
        token = EMPTY_WORD_TOKEN if not word else "".join(map(str, word))
        lines.append(token if color == 1 else f"{token} {color}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def cmd_complexity(args) -> int:
    f = parse_language_file(Path(args.file).read_text())
    complexity = minauto.state_complexity(f)
    by_depth = minauto.states_by_depth(f)
    if complexity == 0:
        print("warning: empty language (complexity 0)", file=sys.stderr)
    payload = {
        "b": f.b, "c": f.c, "n": f.n,
        "complexity": complexity,
        "states_by_depth": by_depth,
    }
    if args.mn_crosscheck:
        oracle = minauto.mn_class_count(f)
        payload["mn_class_count"] = oracle
        if oracle != complexity:
            raise MismatchError(f"pairwise oracle disagrees: {oracle} != {complexity}")
    if args.dot:
        Path(args.dot).write_text(minauto.export_dot(minauto.minimal_pdfa(f)))
        payload["dot"] = args.dot
    _emit(args, payload, f"complexity {complexity}")
    return EXIT_OK


def cmd_bound(args) -> int:
    kind = bounds.BoundKind(args.kind)
    payload: dict = {"kind": args.kind, "b": args.b, "c": args.c, "n": args.n}
    if kind is bounds.BoundKind.GENERAL_PDFA:
        value = bounds.general_bound(args.b, args.c, args.n)
    elif kind is bounds.BoundKind.COMPLETE_DFA:
        r, value = bounds.complete_dfa_bound(args.b, args.n)
        payload["r"] = r
    elif kind is bounds.BoundKind.MONOTONE_PDFA:
        value = bounds.monotone_bound(args.n)
    else:
        value = bounds.csg_bound(args.n)
    payload["bound"] = str(value)
    _emit(args, payload, f"{args.kind} bound {value}")
    return EXIT_OK


def cmd_construct(args) -> int:
    f = witness.construct_maximal(args.b, args.c, args.n)
    complexity = minauto.state_complexity(f)
    bound = bounds.general_bound(args.b, args.c, args.n)
    Path(args.out).write_text(
        format_language_file(f, comment=f"maximal witness b={args.b} c={args.c} n={args.n}")
    )
    payload = {
        "b": args.b, "c": args.c, "n": args.n,
        "bound": str(bound),
        "complexity": complexity,
        "attained": complexity == bound,
        "out": args.out,
    }
    _emit(args, payload, f"complexity {complexity} bound {bound} -> {args.out}")
    if complexity != bound:
        raise MismatchError(f"constructed witness scores {complexity}, bound is {bound}")
    return EXIT_OK


def cmd_count_max(args) -> int:
    i, count = counting.count_max(args.b, args.c, args.n)
    payload: dict = {"b": args.b, "c": args.c, "n": args.n, "i": i, "count": str(count)}
    human = f"crossover {i}, {count} maximal functions"
    if args.verify_brute:
        space = args.c ** (args.b**args.n)
        if space > 1 << 20:
            raise CapacityError(f"brute force over {space} functions refused")
        brute, maximal = _brute_max(args.b, args.c, args.n)
        payload["brute_count"] = str(brute)
        if brute != count:
            raise MismatchError(f"brute force counts {brute}, formula says {count}")
        human += f" (brute force agrees: {brute})"
        if args.list:
            for f in maximal:
                words = ",".join("".join(map(str, w)) for w in f.support())
                print(f"  {{{words}}}")
    _emit(args, payload, human)
    return EXIT_OK


def _brute_max(b: int, c: int, n: int) -> tuple[int, list[ColoredFunction]]:
    bound = bounds.general_bound(b, c, n)
    cells = b**n
    maximal = []
    for code in range(1, c**cells):
        table = bytearray(cells)
        v = code
        for pos in range(cells - 1, -1, -1):
            v, d = divmod(v, c)
            table[pos] = d
        f = ColoredFunction(b, n, c, bytes(table))
        if minauto.state_complexity(f) == bound:
            maximal.append(f)
    return len(maximal), maximal


def cmd_lattice_enumerate(args) -> int:
    kind = "csg" if args.csg else "monotone"
    cache = DiskCache(args.cache)
    params = f"{kind}-n{args.n}"
    cached = cache.load("enumeration", params)
    if cached is not None:
        count = int(cached)
    else:
        masks = csg.enumerate_csg(args.n) if args.csg else lattice.enumerate_monotone(args.n)
        count = len(masks)
        cache.store("enumeration", params, str(count))
    payload = {
        "kind": kind, "n": args.n,
        "count": count,
        "nonzero_count": count - 1,
    }
    _emit(args, payload, f"{kind} n={args.n}: {count} functions "
                         f"({count - 1} nonzero)")
    return EXIT_OK


def cmd_lattice_verify(args) -> int:
    i, j = lattice.embedding_shape(args.name)
    cert = lattice.check_relation(i, j, lattice.named_embedding(args.name))
    payload = {
        "name": args.name, "i": i, "j": j, "ok": True,
        "covered": len(cert.covered),
        "uses_zero_substitution": cert.uses_zero,
    }
    _emit(args, payload,
          f"OK {args.name}: 2^{i} -> {len(lattice.monotone_nonzero(j))} "
          f"=> {len(cert.covered)}")
    return EXIT_OK


def cmd_lattice_search(args) -> int:
    kind = "csg" if args.csg else "monotone"
    cache = DiskCache(args.cache)
    params = f"{kind}-i{args.i}-j{args.j}"
    if args.resume:
        text = Path(args.resume).read_text()
        cert = lattice.verify_certificate(lattice.parse_certificate(text))
        payload = {"i": args.i, "j": args.j, "kind": kind, "status": "verified",
                   "nodes": 0, "certificate": args.resume}
        _emit(args, payload, f"certificate verified: {args.resume}")
        return EXIT_OK
    cached = cache.load("certificate", params)
    if cached is not None:
        cert = lattice.verify_certificate(lattice.parse_certificate(cached))
        payload = {"i": args.i, "j": args.j, "kind": kind, "status": "cached",
                   "nodes": 0, "certificate": str(cache._path("certificate", params))}
        _emit(args, payload, f"certificate loaded from cache")
        return EXIT_OK
    if args.csg:
        outcome = csg.search_csg_relation(args.i, args.j, budget=args.budget)
    else:
        outcome = lattice.search_relation(args.i, args.j, budget=args.budget)
    payload = {"i": args.i, "j": args.j, "kind": kind, "status": outcome.status,
               "nodes": outcome.nodes, "certificate": None}
    if outcome.status == "found":
        check = csg.check_csg_relation if args.csg else lattice.check_relation
        cert = check(args.i, args.j, outcome.map)
        text = lattice.format_certificate(cert)
        if args.out:
            target = Path(args.out)
            target.write_text(text)
        else:
            target = cache.store("certificate", params, text)
        payload["certificate"] = str(target)
        _emit(args, payload, f"found in {outcome.nodes} nodes -> {target}")
        return EXIT_OK
    _emit(args, payload, f"{outcome.status} after {outcome.nodes} nodes")
    if outcome.status == "exhausted":
        raise ExhaustedError("search budget exhausted")
    return EXIT_OK


def cmd_lattice_witness(args) -> int:
    if args.csg:
        w, _cert = csg.build_csg_witness(args.n, budget=args.budget)
        bound = bounds.csg_bound(args.n)
        kind = "csg"
    else:
        w = lattice.build_witness_language(args.n)
        bound = bounds.monotone_bound(args.n)
        kind = "monotone"
    f = w.as_colored()
    complexity = minauto.state_complexity(f)
    Path(args.out).write_text(
        format_language_file(f, comment=f"{kind} witness n={args.n}")
    )
    payload = {"kind": kind, "n": args.n, "bound": str(bound),
               "complexity": complexity, "attained": complexity == bound,
               "out": args.out}
    _emit(args, payload, f"complexity {complexity} bound {bound} -> {args.out}")
    if complexity != bound:
        raise MismatchError(f"witness scores {complexity}, bound is {bound}")
    return EXIT_OK


def cmd_lattice_lemma(args) -> int:
    ok = lattice.lemma_les_check()
    _emit(args, {"ok": ok}, "pair-order lemma holds" if ok else "COUNTEREXAMPLE FOUND")
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maxcomplex",
                     description="State complexity of bounded-length colored languages")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complexity", help="exact minimal automaton size of a language file")
    p.add_argument("file")
    p.add_argument("--dot", help="write the minimal automaton in DOT format")
    p.add_argument("--json", action="store_true")
    p.add_argument("--mn-crosscheck", action="store_true",
                   help="also run the pairwise-equivalence oracle")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("bound", help="evaluate an upper-bound formula exactly")
    p.add_argument("--kind", choices=("general", "complete", "monotone", "csg"),
                   default="general")
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="write a maximal-complexity witness language")
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("count-max", help="count the maximal-complexity functions")
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-brute", action="store_true",
                   help="cross-check by scanning every function (small spaces only)")
    p.add_argument("--list", action="store_true",
                   help="with --verify-brute, print each maximal language")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count_max)

    lat = sub.add_parser("lattice", help="monotone and game lattice tooling")
    lsub = lat.add_subparsers(dest="subcommand", required=True)

    p = lsub.add_parser("enumerate", help="enumerate monotone functions or games")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csg", action="store_true")
    p.add_argument("--cache", help="cache directory (default ./.maxcomplex-cache)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_enumerate)

    p = lsub.add_parser("verify-embedding", help="re-check a built-in embedding")
    p.add_argument("--name", required=True, choices=lattice.EMBEDDING_NAMES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_verify)

    p = lsub.add_parser("search", help="search for an adequate embedding")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--csg", action="store_true")
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--resume", help="verify a previously saved certificate instead")
    p.add_argument("--out", help="write the certificate here instead of the cache")
    p.add_argument("--cache", help="cache directory (default ./.maxcomplex-cache)")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for interface stability; the search is serial")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_search)

    p = lsub.add_parser("witness", help="write a bound-attaining witness language")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csg", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_witness)

    p = lsub.add_parser("lemma-les", help="exhaustively re-check the pair-order lemma")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice_lemma)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (ParseError, InputError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MismatchError as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ExhaustedError as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED


if __name__ == "__main__":
    sys.exit(main())
