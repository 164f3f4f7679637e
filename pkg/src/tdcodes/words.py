"""Alphabet-generic words and the elementary tandem-duplication operations.

A word is an immutable ``bytes`` value whose byte values are the symbols
(integers ``0 .. q-1``).  The text form is a plain digit string for
alphabets of at most ten symbols ("01210") and a comma-separated list of
integers beyond that ("0,1,2,10").  The empty word is rejected by every
public entry point; it only ever appears as an internal intermediate.
"""

from __future__ import annotations

from typing import Iterable

Word = bytes
Symbol = int

__all__ = [
    "Word",
    "Symbol",
    "ResourceBudgetError",
    "parse_word",
    "render_word",
    "check_word",
    "tandem_duplicate",
    "apply_steps",
    "remove_duplicates_pass",
    "is_irreducible",
    "pad_tail",
    "reverse_word",
]


class ResourceBudgetError(RuntimeError):
    """An enumeration or search exceeded its configured state budget."""


def parse_word(text: str, q: int = 3) -> Word:
    """Parse the text form of a word over ``0..q-1``."""
    text = text.strip()
    if not text:
        raise ValueError("empty word")
    if "," in text:
        symbols = [int(part) for part in text.split(",")]
    elif q <= 10:
        if not text.isdigit():
            raise ValueError(f"not a digit string: {text!r}")
        symbols = [int(ch) for ch in text]
    else:
        raise ValueError(f"alphabet size {q} needs comma-separated symbols")
    for s in symbols:
        if not 0 <= s < q:
            raise ValueError(f"symbol {s} out of range for alphabet size {q}")
    return bytes(symbols)


def render_word(x: Word, q: int = 3) -> str:
    if q <= 10:
        return "".join(str(s) for s in x)
    return ",".join(str(s) for s in x)


def check_word(x: Word, q: int | None = None) -> Word:
    """Validate a word: nonempty, and all symbols below ``q`` when given."""
    if not isinstance(x, (bytes, bytearray)):
        raise ValueError(f"expected bytes word, got {type(x).__name__}")
    if len(x) == 0:
        raise ValueError("empty word")
    if q is not None and max(x) >= q:
        raise ValueError(f"symbol {max(x)} out of range for alphabet size {q}")
    return bytes(x)


def tandem_duplicate(x: Word, i: int, k: int) -> Word:
    """Duplicate the length-``k`` factor of ``x`` at offset ``i`` in place.

    The factor ``x[i:i+k]`` is repeated immediately after itself, so the
    result is ``x[:i+k] + x[i:i+k] + x[i+k:]`` and is ``k`` symbols longer.
    """
    if k < 1:
        raise ValueError(f"duplication length must be positive, got {k}")
    if i < 0 or i + k > len(x):
        raise ValueError(
            f"window [{i}, {i + k}) out of range for word of length {len(x)}"
        )
    return x[: i + k] + x[i : i + k] + x[i + k :]


def apply_steps(x: Word, steps: Iterable[tuple[int, int]]) -> Word:
    """Apply a sequence of ``(i, k)`` duplication steps to ``x``."""
    for i, k in steps:
        x = tandem_duplicate(x, i, k)
    return x


def remove_duplicates_pass(x: Word, k: int) -> Word:
    """Remove every factor ``vv`` with ``|v| = k`` by a left-to-right scan.

    After each removal the scan index backtracks by ``2k - 1`` positions
    (floored at zero): a removal can only create a new k-duplicate spanning
    the junction, and any such duplicate starts within that window.
    """
    if k < 1:
        raise ValueError(f"duplicate length must be positive, got {k}")
    if len(x) == 0:
        raise ValueError("empty word")
    r = bytearray(x)
    i = 0
    back = 2 * k - 1
    while i + 2 * k <= len(r):
        if r[i : i + k] == r[i + k : i + 2 * k]:
            del r[i : i + k]
            i = i - back if i > back else 0
        else:
            i += 1
    return bytes(r)


def is_irreducible(x: Word, k: int, exact: bool = False) -> bool:
    """True iff ``x`` contains no factor ``vv`` with ``|v| = k``.

    With ``exact=False`` (the default) every duplicate length ``1..k`` is
    forbidden, i.e. the word admits no deduplication of length at most k.
    """
    if k < 1:
        raise ValueError(f"duplicate length must be positive, got {k}")
    if len(x) == 0:
        raise ValueError("empty word")
    lengths = (k,) if exact else range(1, k + 1)
    n = len(x)
    for j in lengths:
        for i in range(n - 2 * j + 1):
            if x[i : i + j] == x[i + j : i + 2 * j]:
                return False
    return True


def pad_tail(x: Word, count: int) -> Word:
    """Repeat the last symbol of ``x`` another ``count`` times."""
    if not x:
        raise ValueError("empty word")
    if count < 0:
        raise ValueError(f"negative padding {count}")
    return x + x[-1:] * count


def reverse_word(x: Word) -> Word:
    if len(x) == 0:
        raise ValueError("empty word")
    return x[::-1]
