"""Tandem-duplication code constructions and code validation.

A code is a set of equal-length words that are pairwise non-confusable
under duplications of length at most three.  Constructions here cover:
padded irreducible words, an optimal two-word code three symbols past any
root, the complete one-region family with its closed-form size, and a
recursive prefix construction that extends codes for shorter roots.
Every constructed code can be checked against the confusability decision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .words import Word, check_word, is_irreducible, pad_tail, render_word, parse_word
from .confusability import confusable, count_regions, main_and_region
from .oracle import enumerate_irreducible, canonical_form

__all__ = [
    "Code",
    "UnsupportedRootError",
    "ONE_REGION_PATTERNS",
    "irreducible_code",
    "pair_code",
    "one_region_words",
    "one_region_size",
    "one_region_code",
    "recursive_size",
    "recursive_code",
    "validate_code",
    "find_confusable_pair",
    "assemble_lower_bound",
    "assemble_lower_bounds",
    "code_to_text",
    "code_from_text",
    "code_to_json",
    "code_from_json",
]


class UnsupportedRootError(ValueError):
    """The requested construction does not apply to this root."""


@dataclass(frozen=True)
class Code:
    n: int
    q: int
    words: frozenset[Word]
    provenance: str

    def __len__(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)


def irreducible_code(n: int, k: int, q: int = 3) -> Code:
    """All irreducible words of length up to ``n``, tail-padded to ``n``.

    For duplications of length at most two this code is optimal; for at
    most three it is optimal only up to length five.
    """
    if k not in (2, 3):
        raise ValueError(f"k must be 2 or 3, got {k}")
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    words = set()
    for i in range(1, n + 1):
        for x in enumerate_irreducible(i, q, k):
            words.add(pad_tail(x, n - i))
    return Code(n, q, frozenset(words), f"irreducible(k<={k})")


def pair_code(r: Word) -> Code:
    """An optimal two-word code of length ``len(r) + 3`` inside the cone of ``r``."""
    check_word(r)
    i = len(r)
    if i < 4:
        raise UnsupportedRootError(f"pair construction needs a root of length >= 4, got {i}")
    if not is_irreducible(r, 3):
        raise UnsupportedRootError(f"{r!r} is not irreducible, so it is not a root")
    r1, r2, r3, r4 = r[0], r[1], r[2], r[3]
    if r1 != r3:
        first = r[:3] + r[:3] + r[3:]
        second = bytes((r1, r2, r2, r3, r3, r4, r4)) + r[4:]
    elif i >= 5:
        first = bytes((r1, r2, r1, r4, r2, r1, r4)) + r[4:]
        second = bytes((r1, r2, r1, r1, r4, r4, r[4], r[4])) + r[5:]
    else:
        first = bytes((r1, r2, r1, r4, r2, r1, r4))
        second = bytes((r1, r2, r1, r1, r4, r4, r4))
    q = max(r) + 1
    return Code(i + 3, max(q, 3), frozenset((first, second)), "pair")


# One-region roots, normalized so the distinct triple of the first region
# is 012.  Every one-region root is an injective relabeling of one of these.
ONE_REGION_PATTERNS: tuple[Word, ...] = tuple(
    bytes(int(ch) for ch in pat)
    for pat in (
        "012",
        "0120",
        "01201",
        "0121",
        "01202",
        "012010",
        "1012",
        "10120",
        "101201",
        "10121",
        "101202",
        "1012010",
    )
)

# pattern -> (head of the minus-sign family, its tail, head of the plus-sign
# family, its tail); the families are head + "112200"*(l-1) + tail and
# head + "012"*l + tail respectively
_X_BLOCK = bytes((1, 1, 2, 2, 0, 0))
_Z_BLOCK = bytes((0, 1, 2))
_ONE_REGION_TABLE: dict[Word, tuple[Word, Word, Word, Word]] = {}


def _fill_one_region_table() -> None:
    tails = {
        "012": ("112", ""),
        "0120": ("11220", "0"),
        "01201": ("1122001", "01"),
        "0121": ("1121", "1"),
        "01202": ("112202", "02"),
        "012010": ("11220010", "010"),
    }
    for base, (x_tail, z_tail) in tails.items():
        key = bytes(int(ch) for ch in base)
        xt = bytes(int(ch) for ch in x_tail)
        zt = bytes(int(ch) for ch in z_tail)
        _ONE_REGION_TABLE[key] = (b"\x00", xt, b"", zt)
        _ONE_REGION_TABLE[b"\x01" + key] = (b"\x01\x00", xt, b"\x01", zt)


_fill_one_region_table()


def one_region_words(pattern: Word, ell: int) -> tuple[Word, Word]:
    """The ``ell``-th members of the two one-region families for ``pattern``."""
    if ell < 1:
        raise ValueError(f"family index must be >= 1, got {ell}")
    entry = _ONE_REGION_TABLE.get(pattern)
    if entry is None:
        raise UnsupportedRootError(f"{pattern!r} is not a normalized one-region root")
    x_head, x_tail, z_head, z_tail = entry
    x_word = x_head + _X_BLOCK * (ell - 1) + x_tail
    z_word = z_head + _Z_BLOCK * ell + z_tail
    return x_word, z_word


def _one_region_base(r: Word) -> tuple[Word, dict[int, int]]:
    # normalize an arbitrary one-region root onto its 012 pattern; returns
    # the pattern and the relabeling pattern-symbol -> actual symbol
    t = main_and_region(r).main
    inv = {t[0]: 0, t[1]: 1, t[2]: 2}
    try:
        base = bytes(inv[s] for s in r)
    except KeyError as exc:
        raise UnsupportedRootError(f"{r!r} uses symbols outside its leading triple") from exc
    if base not in _ONE_REGION_TABLE:
        raise UnsupportedRootError(f"{r!r} is not a one-region root")
    return base, {0: t[0], 1: t[1], 2: t[2]}


def one_region_size(r: Word, n: int) -> int:
    """Closed-form optimal code size for a one-region root ``r`` at length ``n``."""
    base, _ = _one_region_base(r)
    if n < len(r):
        return 0
    n2 = len(one_region_words(base, 2)[0])
    if n >= n2:
        return (n - n2) // 6 + 3
    if n >= len(r) + 3:
        return 2
    return 1


def one_region_code(r: Word, n: int) -> Code:
    """The optimal code for a one-region root ``r`` at length ``n``."""
    check_word(r)
    if n < len(r):
        raise ValueError(f"target length {n} below root length {len(r)}")
    base, relabel = _one_region_base(r)
    table = bytes(relabel.get(v, v) for v in range(256))
    n2 = len(one_region_words(base, 2)[0])
    ell_z = (n - len(r)) // 3 + 1
    words: set[Word] = set()
    if n >= n2:
        ell = 1
        while True:
            x_word = one_region_words(base, ell)[0]
            if len(x_word) > n:
                break
            words.add(pad_tail(x_word.translate(table), n - len(x_word)))
            ell += 1
        z_word = one_region_words(base, ell_z)[1]
        words.add(pad_tail(z_word.translate(table), n - len(z_word)))
    elif n >= len(r) + 3:
        x_word = one_region_words(base, 1)[0]
        z_word = one_region_words(base, ell_z)[1]
        words.add(pad_tail(x_word.translate(table), n - len(x_word)))
        words.add(pad_tail(z_word.translate(table), n - len(z_word)))
    else:
        words.add(pad_tail(r, n - len(r)))
    q = max(3, max(r) + 1)
    return Code(n, q, frozenset(words), "one-region")


def _prefix_options(r: Word) -> tuple[tuple[int, int, tuple[Word, ...]], ...]:
    # options (symbols removed from the root, length removed from the code,
    # prefixes to prepend) for the recursive construction
    r1, r2, r3 = r[0], r[1], r[2]
    if r1 == r3:
        return ((1, 1, (r[:1],)),)
    if len(r) < 4 or r1 != r[3]:
        two = (bytes((r1, r2, r2, r2)), bytes((r1, r2, r3, r1)))
        three = (
            bytes((r1,)) + bytes((r2,)) * 7,
            bytes((r1, r2, r2, r3, r3, r1, r1, r2)),
            bytes((r1, r2, r3, r1, r2, r3, r1, r2)),
        )
        return ((1, 4, two), (1, 8, three))
    if len(r) < 5 or r2 != r[4]:
        two = (bytes((r1, r2, r2, r2, r3)), bytes((r1, r2, r3, r1, r2)))
        three = (
            bytes((r1, r2, r2)) + bytes((r3,)) * 7,
            bytes((r1, r2, r2, r3, r3, r1, r1, r2, r2, r3)),
            bytes((r1, r2, r3, r1, r2, r3, r1, r2, r3, r3)),
        )
        return ((1, 5, two), (1, 10, three))
    two = (bytes((r1, r2, r2, r3, r3, r1)), bytes((r1, r2, r3, r1, r2, r3)))
    three = (
        bytes((r1, r2, r2, r3, r3)) + bytes((r1,)) * 7,
        bytes((r1, r2, r2, r3, r3, r1, r1, r2, r2, r3, r3, r1)),
        bytes((r1, r2, r3, r1, r2, r3, r1, r2, r3, r1, r1, r1)),
    )
    return ((3, 6, two), (3, 12, three))


def _chain_values(r: Word, n_max: int, cache=None) -> dict[tuple[Word, int], int]:
    # best known code size for (suffix of r, length), by the prefix
    # recursion over the padded baseline; sizes for zero- and one-region
    # suffixes come from their closed forms
    memo: dict[tuple[Word, int], int] = {}

    def value(rr: Word, nn: int) -> int:
        if nn < len(rr):
            return 0
        key = (rr, nn)
        got = memo.get(key)
        if got is not None:
            return got
        result = None
        if cache is not None:
            canon, _ = canonical_form(rr)
            hit = cache.get(canon, nn)
            if hit is not None:
                result = hit[0]
        if result is None:
            m = count_regions(rr)
            if m == 0:
                result = 1
            elif m == 1:
                result = one_region_size(rr, nn)
            elif nn <= len(rr) + 2:
                result = 1
            else:
                best = max(2, value(rr, nn - 1))
                for cut, drop, prefixes in _prefix_options(rr):
                    tail = rr[cut:]
                    best = max(best, len(prefixes) * value(tail, nn - drop))
                result = best
        memo[key] = result
        return result

    for nn in range(len(r), n_max + 1):
        value(r, nn)
    return memo


def recursive_size(r: Word, n: int, cache=None) -> int:
    """Best known code size for root ``r`` at length ``n``.

    Preference order: cached exact search value, one-region closed form,
    prefix recursion, the two-word code, a padded singleton.  The reversed
    root is tried as well since reversing every word of a code preserves
    validity.
    """
    check_word(r)
    if not is_irreducible(r, 3):
        raise UnsupportedRootError(f"{r!r} is not irreducible, so it is not a root")
    forward = _chain_values(r, n, cache).get((r, n), 0)
    rev = r[::-1]
    if rev == r:
        return forward
    backward = _chain_values(rev, n, cache).get((rev, n), 0)
    return max(forward, backward)


def _materialize(rr: Word, nn: int, memo: dict[tuple[Word, int], int]) -> set[Word]:
    target = memo[(rr, nn)]
    m = count_regions(rr)
    if m == 0 or target <= 1:
        return {pad_tail(rr, nn - len(rr))}
    if m == 1:
        return set(one_region_code(rr, nn).words)
    if nn <= len(rr) + 2:
        return {pad_tail(rr, nn - len(rr))}
    if target == 2:
        return {pad_tail(w, nn - len(w)) for w in pair_code(rr).words}
    for cut, drop, prefixes in _prefix_options(rr):
        tail = rr[cut:]
        if len(prefixes) * memo.get((tail, nn - drop), 0) == target:
            inner = _materialize(tail, nn - drop, memo)
            return {p + w for p in prefixes for w in inner}
    # target must come from padding the code one length down
    inner = _materialize(rr, nn - 1, memo, cache)
    return {pad_tail(w, 1) for w in inner}


def recursive_code(r: Word, n: int) -> Code:
    """Materialize the recursive construction behind :func:`recursive_size`.

    Exact search caches are never consulted here (witness words for cached
    values are not stored in this module), so with a cache supplied
    :func:`recursive_size` can report more than this code holds.
    """
    check_word(r)
    if not is_irreducible(r, 3):
        raise UnsupportedRootError(f"{r!r} is not irreducible, so it is not a root")
    if n < len(r):
        raise ValueError(f"target length {n} below root length {len(r)}")
    fwd_memo = _chain_values(r, n)
    rev = r[::-1]
    if rev != r:
        rev_memo = _chain_values(rev, n)
        if rev_memo[(rev, n)] > fwd_memo[(r, n)]:
            words = _materialize(rev, n, rev_memo)
            return Code(n, max(3, max(r) + 1), frozenset(x[::-1] for x in words), "recursive")
    best_words = _materialize(r, n, fwd_memo)
    return Code(n, max(3, max(r) + 1), frozenset(best_words), "recursive")


def find_confusable_pair(code: Code, full: bool = False) -> tuple[Word, Word] | None:
    """First confusable pair of distinct words in ``code``, or ``None``.

    By default words are grouped by root first (words with different roots
    are never confusable, which is also the decision's first test); with
    ``full`` every pair goes through the decision procedure.
    """
    words = code.sorted_words()
    if full:
        for i, x in enumerate(words):
            for y in words[i + 1 :]:
                if confusable(x, y):
                    return x, y
        return None
    from .roots import root_le3

    groups: dict[Word, list[Word]] = {}
    for w in words:
        groups.setdefault(root_le3(w), []).append(w)
    for group in groups.values():
        for i, x in enumerate(group):
            for y in group[i + 1 :]:
                if confusable(x, y):
                    return x, y
    return None


def validate_code(code: Code, full: bool = False) -> bool:
    """True iff every pair of distinct words in ``code`` is non-confusable."""
    for w in code.words:
        check_word(w, code.q)
        if len(w) != code.n:
            raise ValueError(f"word {w!r} does not have code length {code.n}")
    return find_confusable_pair(code, full=full) is None


def _iter_canonical_irreducible(n_max: int):
    # canonical (first-occurrence relabeled) irreducible ternary words of
    # every length up to n_max
    prefix = bytearray()

    def rec(used: int):
        if prefix:
            yield bytes(prefix)
        if len(prefix) == n_max:
            return
        top = min(used + 1, 3)
        for s in range(top):
            if prefix and prefix[-1] == s:
                continue
            np = len(prefix)
            if np >= 3 and prefix[-2] == s and prefix[-3] == prefix[-1]:
                continue
            if np >= 5 and prefix[-3] == s and prefix[-4] == prefix[-1] and prefix[-5] == prefix[-2]:
                continue
            prefix.append(s)
            yield from rec(max(used, s + 1))
            del prefix[-1:]

    yield from rec(0)


def assemble_lower_bounds(targets, cache=None) -> dict[int, int]:
    """Assembled lower bounds on optimal ternary code sizes.

    For each target length, sums the best available per-root code size
    over all roots that fit, working on canonical roots scaled by orbit
    size; one enumeration pass serves every target.
    """
    targets = sorted(set(targets))
    if not targets or targets[0] < 1:
        raise ValueError("lengths must be positive")
    n_max = targets[-1]
    totals = {t: 0 for t in targets}
    for root in _iter_canonical_irreducible(n_max):
        _, orbit = canonical_form(root)
        values = _chain_values(root, n_max, cache)
        rev = root[::-1]
        rev_values = _chain_values(rev, n_max, cache) if rev != root else values
        for t in targets:
            if len(root) <= t:
                totals[t] += orbit * max(values[(root, t)], rev_values[(rev, t)])
    return totals


def assemble_lower_bound(n: int, cache=None, materialize: bool = False):
    """Assembled lower bound at one length; optionally build the code.

    Returns ``(size, code)``; ``code`` is ``None`` unless ``materialize``
    is set.  Cached exact values contribute to the size but never to the
    materialized words, so a materialized code can be smaller with a
    warm cache.
    """
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    total = 0
    words: set[Word] = set()
    for root in _iter_canonical_irreducible(n):
        if len(root) > n:
            continue
        _, orbit = canonical_form(root)
        values = _chain_values(root, n, cache)
        rev = root[::-1]
        rev_values = _chain_values(rev, n, cache) if rev != root else values
        total += orbit * max(values[(root, n)], rev_values[(rev, n)])
        if materialize:
            plain = _chain_values(root, n) if cache is not None else values
            plain_rev = (
                (_chain_values(rev, n) if cache is not None else rev_values)
                if rev != root
                else plain
            )
            if plain[(root, n)] >= plain_rev[(rev, n)]:
                best = _materialize(root, n, plain)
            else:
                best = {x[::-1] for x in _materialize(rev, n, plain_rev)}
            for perm in _symbol_injections(root):
                words |= {x.translate(perm) for x in best}
    code = Code(n, 3, frozenset(words), "assembled") if materialize else None
    return total, code


def _symbol_injections(root: Word):
    from itertools import permutations

    d = len(set(root))
    for image in permutations(range(3), d):
        table = bytearray(range(256))
        for v, t in zip(range(d), image):
            table[v] = t
        yield bytes(table)


def code_to_text(code: Code) -> str:
    lines = [f"{code.n} {code.q} {len(code.words)} {code.provenance}"]
    lines += [render_word(w, code.q) for w in code.sorted_words()]
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> Code:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n, q, size, provenance = lines[0].split(maxsplit=3)
    words = frozenset(parse_word(ln, int(q)) for ln in lines[1:])
    if len(words) != int(size):
        raise ValueError(f"header claims {size} words, file has {len(words)}")
    return Code(int(n), int(q), words, provenance)


def code_to_json(code: Code) -> str:
    return json.dumps(
        {
            "n": code.n,
            "q": code.q,
            "size": len(code.words),
            "provenance": code.provenance,
            "words": [render_word(w, code.q) for w in code.sorted_words()],
        }
    )


def code_from_json(text: str) -> Code:
    data = json.loads(text)
    words = frozenset(parse_word(w, data["q"]) for w in data["words"])
    return Code(data["n"], data["q"], words, data["provenance"])
