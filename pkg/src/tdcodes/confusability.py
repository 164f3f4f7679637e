"""Deciding confusability under tandem duplications of length at most three.

Two words are confusable when their descendant cones intersect.  For
duplications of length at most three, equal roots are necessary but not
sufficient; the decision peels the shared root region by region.  Each
round parses the leading region of the running root, finds the longest
prefix of each word generated from that region, compares how often the
region's distinct triple occurs, and recurses on the remainders.  The
per-region counts and retained-triple signs form a word's label, and two
labels decide confusability of the underlying words directly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Word, check_word, tandem_duplicate
from .roots import root_le_k, root_le3

__all__ = [
    "NoRegionError",
    "MalformedWordError",
    "RegionDescriptor",
    "main_and_region",
    "extended_prefix",
    "cut_prefix",
    "count_occurrences",
    "confusable",
    "confusable_with_cost",
    "Label",
    "compute_label",
    "labels_confusable",
    "confusable_by_labels",
    "count_regions",
    "DuplicationTrace",
    "normalize_trace",
]


class NoRegionError(ValueError):
    """The word has fewer than three distinct symbols among its first four."""


class MalformedWordError(ValueError):
    """No prefix of the word is generated from the requested region."""


@dataclass(frozen=True)
class RegionDescriptor:
    """The parse of a root's first region.

    ``reg`` is a prefix of the root and factors exactly as
    ``w + abc*ell + abc[:2]`` with ``a``, ``b``, ``c`` pairwise distinct,
    ``ell`` in {0, 1} and ``w`` a prefix of length at most three over
    {a, b, c}.  ``main`` is the first factor of the root with three
    distinct symbols and is always a rotation of ``abc``.
    """

    main: Word
    reg: Word
    w: Word
    abc: Word
    ell: int

    @property
    def a(self) -> int:
        return self.abc[0]

    @property
    def b(self) -> int:
        return self.abc[1]

    @property
    def c(self) -> int:
        return self.abc[2]


def main_and_region(r: Word) -> RegionDescriptor:
    """Parse the first region of an irreducible word ``r``.

    Missing positions compare as "different", so short roots fall into the
    shorter region shapes.  Raises :class:`NoRegionError` when the first
    four positions carry fewer than three distinct symbols.
    """
    n = len(r)
    if len(set(r[:4])) < 3:
        raise NoRegionError(f"no region: fewer than 3 distinct symbols start {r!r}")
    if r[0] == r[2]:
        main = r[1:4]
        if n < 5 or r[1] != r[4]:
            reg, w, abc, ell = r[:4], r[:2], bytes((r[0], r[3], r[1])), 0
        elif n < 6 or r[2] != r[5]:
            reg, w, abc, ell = r[:5], r[:3], bytes((r[3], r[1], r[0])), 0
        else:
            reg, w, abc, ell = r[:6], r[:1], bytes((r[1], r[0], r[3])), 1
    else:
        main = r[:3]
        if n < 4 or r[0] != r[3]:
            reg, w, abc, ell = r[:3], r[:1], bytes((r[1], r[2], r[0])), 0
        elif n < 5 or r[1] != r[4]:
            reg, w, abc, ell = r[:4], r[:2], bytes((r[2], r[0], r[1])), 0
        else:
            reg, w, abc, ell = r[:5], b"", r[:3], 1
    return RegionDescriptor(main, reg, w, abc, ell)


def extended_prefix(desc: RegionDescriptor, x: Word, early_exit: bool = False) -> Word:
    """Longest prefix of ``x`` generated from ``desc.reg`` by duplications.

    A prefix is generated from the region exactly when its root equals the
    region (the region is irreducible and roots are unique), so the scan
    streams the root of each prefix and keeps the last position where the
    stack equals the region.  Matches can recur arbitrarily late, so the
    reference path scans the whole word.

    ``early_exit`` stops the scan once the stack grew 7 symbols past the
    region with a diverged prefix.  That cutoff is a heuristic, not a
    theorem; leave it off when correctness matters.
    """
    reg = desc.reg
    d = len(reg)
    st = bytearray()
    append = st.append
    best = 0
    for idx in range(len(x)):
        s = x[idx]
        n = len(st)
        if n and st[-1] == s:
            pass
        elif n >= 3 and st[-2] == s and st[-3] == st[-1]:
            del st[-1:]
            n -= 1
        elif n >= 5 and st[-3] == s and st[-4] == st[-1] and st[-5] == st[-2]:
            del st[-2:]
            n -= 2
        else:
            append(s)
            n += 1
        if n == d and st == reg:
            best = idx + 1
        elif early_exit and n > d + 6 and st[:d] != reg:
            break
    if best == 0:
        raise MalformedWordError(f"no prefix of {x!r} is generated from region {reg!r}")
    return x[:best]


def cut_prefix(r: Word, x: Word) -> Word:
    """The generated prefix of ``x``, truncated before its last ``a`` symbol."""
    desc = main_and_region(r)
    p = extended_prefix(desc, x)
    return p[: p.rfind(desc.abc[0])]


def count_occurrences(t: Word, x: Word, rotations: bool = False) -> int:
    """Count factor occurrences of the distinct triple ``t`` in ``x``.

    With ``rotations`` the three cyclic rotations of ``t`` are all counted.
    Occurrences of a triple with pairwise-distinct symbols cannot overlap
    themselves, so ``bytes.count`` already counts every occurrence.
    """
    if len(t) != 3 or len(set(t)) != 3:
        raise ValueError(f"pattern must be three pairwise-distinct symbols, got {t!r}")
    if not rotations:
        return x.count(t)
    return x.count(t) + x.count(t[1:] + t[:1]) + x.count(t[2:] + t[:2])


def _few_symbols(r: Word) -> bool:
    # an irreducible word of length >= 4 always has >= 3 distinct symbols,
    # so the first four positions decide
    return len(set(r[:4])) <= 2


def confusable_with_cost(x: Word, y: Word) -> tuple[bool, int]:
    """Like :func:`confusable` but also returns the summed prefix lengths.

    The second value accumulates ``len(p) + len(q)`` over every peeling
    round; it is bounded by three times the combined input length.
    """
    check_word(x)
    check_word(y)
    r = root_le3(x)
    if r != root_le3(y):
        return False, 0
    cost = 0
    while True:
        if _few_symbols(r):
            return True, cost
        desc = main_and_region(r)
        p = extended_prefix(desc, x)
        q = extended_prefix(desc, y)
        cost += len(p) + len(q)
        cp = count_occurrences(desc.main, root_le_k(p, 2))
        cq = count_occurrences(desc.main, root_le_k(q, 2))
        if cp != cq:
            shorter = p if cp < cq else q
            if count_occurrences(desc.main, shorter, rotations=True) == 0:
                return False, cost
        a = desc.abc[0]
        x = x[p.rfind(a) :]
        y = y[q.rfind(a) :]
        r = r[len(desc.reg) - 2 :]
        if __debug__ and len(x) <= 48 and len(y) <= 48:
            assert root_le3(x) == r == root_le3(y)


def confusable(x: Word, y: Word) -> bool:
    """True iff some word descends from both ``x`` and ``y`` by duplications of length <= 3."""
    return confusable_with_cost(x, y)[0]


@dataclass(frozen=True, order=True)
class Label:
    """Per-region fingerprint deciding confusability within one root's cone.

    ``entries[i]`` is ``(count, sign)`` for the i-th region: how often the
    region's distinct triple occurs in the le-2 root of the generated
    prefix, and "+" when some rotation of the triple survives in the
    prefix itself.
    """

    root: Word
    entries: tuple[tuple[int, str], ...]

    def text(self) -> str:
        body = "".join(f"({c},{s})" for c, s in self.entries)
        return "".join(str(v) for v in self.root) + ":" + body

    @classmethod
    def parse(cls, text: str) -> "Label":
        root_part, _, body = text.partition(":")
        root = bytes(int(ch) for ch in root_part)
        entries = []
        for piece in body.split(")"):
            piece = piece.strip("(")
            if not piece:
                continue
            c, s = piece.split(",")
            if s not in ("+", "-"):
                raise ValueError(f"bad sign in label entry {piece!r}")
            entries.append((int(c), s))
        return cls(root, tuple(entries))


def compute_label(x: Word) -> Label:
    """Compute the label of ``x`` by peeling its root region by region."""
    check_word(x)
    r = root_le3(x)
    entries: list[tuple[int, str]] = []
    xi, ri = x, r
    while not _few_symbols(ri):
        desc = main_and_region(ri)
        p = extended_prefix(desc, xi)
        c = count_occurrences(desc.main, root_le_k(p, 2))
        sign = "+" if count_occurrences(desc.main, p, rotations=True) else "-"
        entries.append((c, sign))
        xi = xi[p.rfind(desc.abc[0]) :]
        ri = ri[len(desc.reg) - 2 :]
    return Label(r, tuple(entries))


def labels_confusable(lx: Label, ly: Label) -> bool:
    """Decide confusability of two words from their labels alone.

    Labels with different roots are never confusable.  With equal roots the
    words are *not* confusable exactly when some region has a strictly
    smaller count on the side whose sign is "-".
    """
    if lx.root != ly.root:
        return False
    if len(lx.entries) != len(ly.entries):
        raise ValueError("labels with equal roots must have the same number of regions")
    for (cx, sx), (cy, sy) in zip(lx.entries, ly.entries):
        if cx < cy:
            if sx == "-":
                return False
        elif cx > cy:
            if sy == "-":
                return False
    return True


def confusable_by_labels(x: Word, y: Word) -> bool:
    """Label-route confusability; must agree with :func:`confusable` everywhere."""
    return labels_confusable(compute_label(x), compute_label(y))


def count_regions(r: Word) -> int:
    """Number of region-peeling rounds of an irreducible word ``r``."""
    m = 0
    while not _few_symbols(r):
        desc = main_and_region(r)
        r = r[len(desc.reg) - 2 :]
        m += 1
    return m


@dataclass(frozen=True)
class DuplicationTrace:
    """A start word with a sequence of ``(i, k)`` duplication steps."""

    start: Word
    steps: tuple[tuple[int, int], ...]

    def replay(self) -> Word:
        w = self.start
        for i, k in self.steps:
            w = tandem_duplicate(w, i, k)
        return w


def _expand_step(i: int, v: Word) -> list[tuple[int, int]]:
    # replace one duplication of a segment with repeated symbols by an
    # equivalent pair of strictly shorter duplications
    if len(v) == 2:
        return [(i, 1), (i, 1)]
    a, b, c = v
    if a == b == c:
        return [(i, 2), (i, 1)]
    if a == c:
        return [(i + 1, 2), (i + 2, 1)]
    if a == b:
        return [(i + 1, 2), (i + 3, 1)]
    return [(i, 2), (i + 1, 1)]  # b == c


def _swap_steps(i1: int, k1: int, i2: int, k2: int) -> list[tuple[int, int]]:
    # rewrite the ordered pair "(i1,k1) then (i2,k2)" with k1 < k2 into an
    # equivalent sequence whose length multiset is no larger and whose
    # longer duplication comes first; applied repeatedly this sorts the
    # trace by nonincreasing length
    if (k1, k2) == (1, 2):
        if i2 <= i1 - 1:
            return [(i2, 2), (i1 + 2, 1)]
        if i2 == i1:
            return [(i1, 1), (i1, 1), (i1, 1)]
        return [(i2 - 1, 2), (i1, 1)]
    if (k1, k2) == (1, 3):
        if i2 <= i1 - 2:
            return [(i2, 3), (i1 + 3, 1)]
        if i2 == i1 - 1:
            return [(i1 - 1, 2), (i1, 1), (i1 + 3, 1)]
        if i2 == i1:
            return [(i1, 2), (i1, 1), (i1 + 3, 1)]
        return [(i2 - 1, 3), (i1, 1)]
    if (k1, k2) == (2, 3):
        if i2 <= i1 - 1:
            return [(i2, 3), (i1 + 3, 2)]
        if i2 == i1:
            return [(i1, 2), (i1, 2), (i1 + 2, 1)]
        if i2 == i1 + 1:
            return [(i1, 2), (i1, 2), (i1 + 3, 1)]
        return [(i2 - 2, 3), (i1, 2)]
    raise AssertionError((k1, k2))


def normalize_trace(trace: DuplicationTrace) -> DuplicationTrace:
    """Rewrite a trace so step lengths are nonincreasing and every
    duplication of length two or three copies pairwise-distinct symbols.

    The rewritten trace starts at the same word and replays to the same
    final word.  Termination: expansions shrink the multiset of step
    lengths, swaps never grow it and remove an inversion.
    """
    check_word(trace.start)
    steps = list(trace.steps)
    trace.replay()  # validates every step
    guard = 0
    limit = 10_000 + 100 * (len(steps) + 1) * (len(trace.start) + 1)
    while True:
        guard += 1
        if guard > limit:
            raise RuntimeError("trace normalization did not converge")
        w = trace.start
        changed = False
        for j, (i, k) in enumerate(steps):
            v = w[i : i + k]
            if k >= 2 and len(set(v)) < k:
                steps[j : j + 1] = _expand_step(i, v)
                changed = True
                break
            w = tandem_duplicate(w, i, k)
        if changed:
            continue
        for j in range(len(steps) - 1):
            i1, k1 = steps[j]
            i2, k2 = steps[j + 1]
            if k1 < k2:
                steps[j : j + 2] = _swap_steps(i1, k1, i2, k2)
                changed = True
                break
        if not changed:
            break
    out = DuplicationTrace(trace.start, tuple(steps))
    assert out.replay() == trace.replay()
    return out
