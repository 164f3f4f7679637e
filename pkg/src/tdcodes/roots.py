"""Unique duplication roots and the root-equality confusability tests.

Every word has exactly one root under deduplications of one fixed length k,
and exactly one root under deduplications of length at most k for k in
{1, 2, 3}.  Because the root is unique, any maximal removal order reaches
it; the implementations here consume the word left to right and keep the
root of the consumed prefix on a stack.
"""

from __future__ import annotations

from typing import Iterable

from .words import Word

__all__ = [
    "StreamingRoot",
    "root_le_k",
    "root_le2",
    "root_le3",
    "root_exact_k",
    "confusable_by_roots",
]


def root_le_k(x: Word, k: int) -> Word:
    """Return the unique root of ``x`` under deduplications of length <= k.

    A pushed symbol can only complete a duplicate that ends at the top of
    the stack, and removing that duplicate leaves a prefix of the previous
    stack, which is already irreducible; so at most one removal per symbol
    is ever needed.
    """
    if len(x) == 0:
        raise ValueError("empty word has no root")
    if k == 1:
        out = bytearray()
        last = -1
        for s in x:
            if s != last:
                out.append(s)
                last = s
        return bytes(out)
    st = bytearray()
    if k == 2:
        for s in x:
            n = len(st)
            if n and st[-1] == s:
                continue
            if n >= 3 and st[-2] == s and st[-3] == st[-1]:
                del st[-1:]
                continue
            st.append(s)
    elif k == 3:
        for s in x:
            n = len(st)
            if n and st[-1] == s:
                continue
            if n >= 3 and st[-2] == s and st[-3] == st[-1]:
                del st[-1:]
                continue
            if n >= 5 and st[-3] == s and st[-4] == st[-1] and st[-5] == st[-2]:
                del st[-2:]
                continue
            st.append(s)
    else:
        raise ValueError(f"roots under length-at-most-k deduplication need k in 1..3, got {k}")
    return bytes(st)


def root_le2(x: Word) -> Word:
    return root_le_k(x, 2)


def root_le3(x: Word) -> Word:
    return root_le_k(x, 3)


def root_exact_k(x: Word, k: int) -> Word:
    """Return the unique root of ``x`` under deduplications of length exactly k."""
    if len(x) == 0:
        raise ValueError("empty word has no root")
    if k < 1:
        raise ValueError(f"duplicate length must be positive, got {k}")
    st = bytearray()
    for s in x:
        st.append(s)
        if len(st) >= 2 * k and st[-k:] == st[-2 * k : -k]:
            del st[-k:]
    return bytes(st)


class StreamingRoot:
    """Incrementally maintains the root of the symbols consumed so far.

    The stack is the unique le-k root of the consumed prefix.  It never
    holds a suffix duplicate of length <= 2k once a push completes.
    """

    __slots__ = ("k", "_stack")

    def __init__(self, k: int, symbols: Iterable[int] = ()):  # k = 1, 2 or 3
        if k not in (1, 2, 3):
            raise ValueError(f"streaming roots support k in 1..3, got {k}")
        self.k = k
        self._stack = bytearray()
        for s in symbols:
            self.push(s)

    def push(self, s: int) -> None:
        st = self._stack
        n = len(st)
        if n and st[-1] == s:
            return
        k = self.k
        if k >= 2 and n >= 3 and st[-2] == s and st[-3] == st[-1]:
            del st[-1:]
            return
        if k == 3 and n >= 5 and st[-3] == s and st[-4] == st[-1] and st[-5] == st[-2]:
            del st[-2:]
            return
        st.append(s)

    def extend(self, symbols: Iterable[int]) -> None:
        for s in symbols:
            self.push(s)

    @property
    def root(self) -> Word:
        return bytes(self._stack)

    def __len__(self) -> int:
        return len(self._stack)

    def matches(self, pattern: Word) -> bool:
        # pattern lengths in practice are at most 6, so this is O(1)
        st = self._stack
        return len(st) == len(pattern) and st == pattern


def confusable_by_roots(x: Word, y: Word, kind) -> bool:
    """Decide confusability by root equality where that is the whole story.

    ``kind`` is an integer k for duplications of length exactly k (any k),
    or one of "le1" / "le2" for duplications of length at most k.  For
    length at most 3, root equality is necessary but not sufficient, so
    "le3" is rejected; use :func:`tdcodes.confusability.confusable`.
    """
    if len(x) == 0 or len(y) == 0:
        raise ValueError("empty word")
    if kind == "le1":
        return root_le_k(x, 1) == root_le_k(y, 1)
    if kind == "le2":
        return root_le_k(x, 2) == root_le_k(y, 2)
    if kind == "le3":
        raise ValueError(
            "root equality does not decide confusability under duplications of "
            "length at most 3; use tdcodes.confusability.confusable"
        )
    if isinstance(kind, int):
        return root_exact_k(x, kind) == root_exact_k(y, kind)
    raise ValueError(f"unknown kind {kind!r}")
