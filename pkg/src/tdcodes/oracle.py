"""Ground-truth machinery: enumerations, descendant cones and brute-force
confusability.

Everything here is deliberately independent of the region-peeling decision
procedure so it can serve as an oracle for it.  Cone searches are bounded
and budgeted: a found witness is conclusive, an empty intersection is only
conclusive up to the explored length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .words import Word, ResourceBudgetError, check_word, is_irreducible
from .confusability import Label, compute_label

__all__ = [
    "enumerate_irreducible",
    "irreducible_counts",
    "ConeFrontier",
    "descendant_cone",
    "oracle_confusable",
    "enumerate_labels",
    "canonical_form",
]


def _extensions(prefix: bytearray, q: int, k: int) -> Iterator[int]:
    # symbols that keep the prefix free of duplicates vv with |v| <= k;
    # only duplicates ending at the new position need checking
    n = len(prefix)
    for s in range(q):
        if n >= 1 and prefix[-1] == s:
            continue
        if k >= 2 and n >= 3 and prefix[-2] == s and prefix[-3] == prefix[-1]:
            continue
        if (
            k >= 3
            and n >= 5
            and prefix[-3] == s
            and prefix[-4] == prefix[-1]
            and prefix[-5] == prefix[-2]
        ):
            continue
        yield s


def enumerate_irreducible(n: int, q: int = 3, k: int = 3) -> Iterator[Word]:
    """Yield the irreducible words of length exactly ``n`` over ``0..q-1``.

    Irreducible means no factor ``vv`` with ``|v| <= k``.  The DFS extends
    only duplicate-free prefixes, which is exhaustive because every factor
    of an irreducible word is irreducible.
    """
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    if q < 2:
        raise ValueError(f"alphabet size must be at least 2, got {q}")
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1..3, got {k}")
    prefix = bytearray()

    def rec() -> Iterator[Word]:
        if len(prefix) == n:
            yield bytes(prefix)
            return
        for s in _extensions(prefix, q, k):
            prefix.append(s)
            yield from rec()
            del prefix[-1:]

    yield from rec()


def irreducible_counts(n_max: int, q: int = 3, k: int = 3) -> list[int]:
    """Counts of irreducible words per length ``1..n_max`` (index 0 unused)."""
    counts = [0] * (n_max + 1)
    prefix = bytearray()

    def rec() -> None:
        depth = len(prefix)
        if depth:
            counts[depth] += 1
        if depth == n_max:
            return
        for s in _extensions(prefix, q, k):
            prefix.append(s)
            rec()
            del prefix[-1:]

    rec()
    return counts


@dataclass
class ConeFrontier:
    """All descendants of ``origin`` up to ``max_len``, grouped by length."""

    origin: Word
    max_len: int
    by_length: dict[int, set[Word]] = field(repr=False)

    @property
    def members(self) -> set[Word]:
        out: set[Word] = set()
        for words in self.by_length.values():
            out |= words
        return out


def _expand_cone(
    by_length: dict[int, set[Word]],
    length: int,
    max_len: int,
    budget: int,
    total: int,
) -> int:
    words = by_length.get(length)
    if not words:
        return total
    for w in words:
        top = min(3, max_len - length)
        for k in range(1, top + 1):
            for i in range(length - k + 1):
                if w[i : i + k] == w[i + k : i + 2 * k]:
                    continue  # duplicating vv again lands on a shorter route's result anyway
                child = w[: i + k] + w[i : i + k] + w[i + k :]
                bucket = by_length.setdefault(length + k, set())
                if child not in bucket:
                    bucket.add(child)
                    total += 1
                    if total > budget:
                        raise ResourceBudgetError(
                            f"descendant cone of {w!r} exceeded {budget} states"
                        )
    return total


def descendant_cone(x: Word, max_len: int, budget: int = 2_000_000) -> ConeFrontier:
    """Breadth-first closure of ``x`` under duplications of length <= 3.

    Raises :class:`ResourceBudgetError` once more than ``budget`` words
    have been generated; partial results are discarded.
    """
    check_word(x)
    if max_len < len(x):
        raise ValueError(f"max_len {max_len} below word length {len(x)}")
    by_length: dict[int, set[Word]] = {len(x): {x}}
    total = 1
    for length in range(len(x), max_len + 1):
        total = _expand_cone(by_length, length, max_len, budget, total)
    return ConeFrontier(x, max_len, by_length)


def oracle_confusable(
    x: Word,
    y: Word,
    max_len: int | None = None,
    budget: int = 2_000_000,
) -> Word | None:
    """Search both descendant cones for a common member.

    Returns the shortest common descendant with length at most ``max_len``
    (ties broken lexicographically), or ``None`` when the truncated cones
    are disjoint.  ``None`` is conclusive only up to the bound.  The
    default bound is the longer input plus sixteen.
    """
    check_word(x)
    check_word(y)
    if max_len is None:
        max_len = max(len(x), len(y)) + 16
    if max_len < max(len(x), len(y)):
        raise ValueError(f"max_len {max_len} below longer input")
    fx: dict[int, set[Word]] = {len(x): {x}}
    fy: dict[int, set[Word]] = {len(y): {y}}
    total = 2
    for length in range(min(len(x), len(y)), max_len + 1):
        if length in fx and length in fy:
            common = fx[length] & fy[length]
            if common:
                return min(common)
        total = _expand_cone(fx, length, max_len, budget, total)
        total = _expand_cone(fy, length, max_len, budget, total)
    return None


def enumerate_labels(r: Word, n: int, budget: int = 2_000_000) -> set[Label]:
    """Labels of all length-``n`` descendants of the irreducible word ``r``."""
    check_word(r)
    if not is_irreducible(r, 3):
        raise ValueError(f"{r!r} is not irreducible, so it is not a root")
    if n < len(r):
        raise ValueError(f"target length {n} below root length {len(r)}")
    by_length: dict[int, set[Word]] = {len(r): {r}}
    total = 1
    for length in range(len(r), n + 1):
        total = _expand_cone(by_length, length, n, budget, total)
    return {compute_label(w) for w in by_length.get(n, ())}


def canonical_form(x: Word, q: int = 3) -> tuple[Word, int]:
    """Relabel symbols by first occurrence; also return the orbit size.

    The orbit size is the number of distinct words obtainable from ``x``
    by injective relabelings into an alphabet of ``q`` symbols.
    """
    mapping: dict[int, int] = {}
    out = bytearray()
    for s in x:
        t = mapping.get(s)
        if t is None:
            t = mapping[s] = len(mapping)
        out.append(t)
    d = len(mapping)
    if d > q:
        raise ValueError(f"word uses {d} symbols, alphabet has {q}")
    orbit = 1
    for j in range(d):
        orbit *= q - j
    return bytes(out), orbit
