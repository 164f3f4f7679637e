"""Exact optimal code sizes via maximum cliques on label graphs.

Within one root's cone, a code corresponds to a set of pairwise
non-confusable labels, so the optimal size is the maximum clique of the
graph whose vertices are the labels of length-n descendants and whose
edges join non-confusable pairs.  Label sets stay small even where the
cones are huge, which keeps the exact search cheap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

from .words import Word
from .confusability import Label, compute_label, labels_confusable
from .oracle import enumerate_labels, canonical_form

__all__ = [
    "LabelGraph",
    "graph_from_labels",
    "build_graph",
    "max_clique",
    "SizeCache",
    "labels_by_root",
    "optimal_size_for_root",
    "optimal_size",
]

CACHE_ENV = "TDCODES_CACHE"


@dataclass(frozen=True)
class LabelGraph:
    root: Word
    n: int
    vertices: tuple[Label, ...]
    adjacency: tuple[int, ...]  # bitmask per vertex, no self loops


def graph_from_labels(root: Word, n: int, labels: Iterable[Label]) -> LabelGraph:
    vertices = tuple(sorted(set(labels)))
    masks = []
    for i, li in enumerate(vertices):
        mask = 0
        for j, lj in enumerate(vertices):
            if i != j and not labels_confusable(li, lj):
                mask |= 1 << j
        masks.append(mask)
    return LabelGraph(root, n, vertices, tuple(masks))


def build_graph(r: Word, n: int, budget: int = 2_000_000) -> LabelGraph:
    """Label graph for the length-``n`` descendants of the root ``r``."""
    return graph_from_labels(r, n, enumerate_labels(r, n, budget=budget))


def _max_clique_masks(adjacency: tuple[int, ...]) -> tuple[int, int]:
    nv = len(adjacency)
    if nv == 0:
        return 0, 0
    order = sorted(range(nv), key=lambda v: bin(adjacency[v]).count("1"), reverse=True)
    pos = {v: p for p, v in enumerate(order)}
    adj = [0] * nv
    for v in range(nv):
        mask = 0
        nb = adjacency[v]
        while nb:
            low = nb & -nb
            mask |= 1 << pos[low.bit_length() - 1]
            nb ^= low
        adj[pos[v]] = mask

    best_size = 0
    best_mask = 0

    def expand(current: int, size: int, cand: int) -> None:
        nonlocal best_size, best_mask
        # greedy coloring of the candidates gives per-vertex bounds
        colored: list[tuple[int, int]] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                colored.append((v, color))
                rest ^= low
                avail &= ~(adj[v] | low)
        for v, bound in reversed(colored):
            if size + bound <= best_size:
                return
            bit = 1 << v
            new_size = size + 1
            new_cand = cand & adj[v]
            if new_size > best_size:
                best_size = new_size
                best_mask = current | bit
            if new_cand:
                expand(current | bit, new_size, new_cand)
            cand &= ~bit

    expand(0, 0, (1 << nv) - 1)
    # map back to input vertex numbering
    out = 0
    m = best_mask
    while m:
        low = m & -m
        out |= 1 << order[low.bit_length() - 1]
        m ^= low
    return best_size, out


def max_clique(graph: LabelGraph) -> tuple[int, tuple[Label, ...]]:
    """Exact maximum clique size with a witness set of labels."""
    size, mask = _max_clique_masks(graph.adjacency)
    witness = tuple(
        graph.vertices[v] for v in range(len(graph.vertices)) if mask >> v & 1
    )
    return size, witness


class SizeCache:
    """Persistent store of exact per-root optimal sizes.

    Line format: ``canonical_root<TAB>n<TAB>size<TAB>witness-labels`` with
    the witness labels ";"-joined.  The file is append-only; on load the
    last entry for a key wins.
    """

    def __init__(self, path: str | None = None):
        if path is None:
            path = os.environ.get(CACHE_ENV)
        self.path = path
        self._mem: dict[tuple[Word, int], tuple[int, tuple[Label, ...]]] = {}
        if path and os.path.exists(path):
            self._load(path)

    def _load(self, path: str) -> None:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                root_text, n_text, size_text, witness_text = line.split("\t")
                root = bytes(int(ch) for ch in root_text)
                witness = tuple(
                    Label.parse(piece) for piece in witness_text.split(";") if piece
                )
                self._mem[(root, int(n_text))] = (int(size_text), witness)

    def get(self, root: Word, n: int):
        return self._mem.get((root, n))

    def put(self, root: Word, n: int, size: int, witness: tuple[Label, ...]) -> None:
        if self._mem.get((root, n)) == (size, witness):
            return
        self._mem[(root, n)] = (size, witness)
        if self.path:
            line = "\t".join(
                (
                    "".join(str(s) for s in root),
                    str(n),
                    str(size),
                    ";".join(label.text() for label in witness),
                )
            )
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def __len__(self) -> int:
        return len(self._mem)


def _iter_canonical_words(n: int, q: int = 3):
    # words whose symbols appear in first-occurrence order; exactly one
    # representative per relabeling orbit
    prefix = bytearray()

    def rec(used: int):
        if len(prefix) == n:
            yield bytes(prefix)
            return
        for s in range(min(used + 1, q)):
            prefix.append(s)
            yield from rec(max(used, s + 1))
            del prefix[-1:]

    yield from rec(0)


def labels_by_root(n: int, q: int = 3) -> dict[Word, set[Label]]:
    """Labels of every canonical length-``n`` word, grouped by its root.

    Descendants of a canonical root are exactly the canonical members of
    its cone, so one sweep over canonical words covers every root's label
    set at this length.
    """
    buckets: dict[Word, set[Label]] = {}
    for w in _iter_canonical_words(n, q):
        label = compute_label(w)
        buckets.setdefault(label.root, set()).add(label)
    return buckets


def optimal_size_for_root(
    r: Word,
    n: int,
    cache: SizeCache | None = None,
    budget: int = 2_000_000,
) -> int:
    """Exact optimal code size within the cone of ``r`` at length ``n``."""
    canon, _ = canonical_form(r)
    if cache is not None:
        hit = cache.get(canon, n)
        if hit is not None:
            return hit[0]
    graph = build_graph(canon, n, budget=budget)
    size, witness = max_clique(graph)
    if cache is not None:
        cache.put(canon, n, size, witness)
    return size


def optimal_size(n: int, cache: SizeCache | None = None) -> int:
    """Exact optimal ternary code size at length ``n``.

    Sums the per-root optima over all canonical roots, weighted by orbit
    size.  One sweep over canonical words of length ``n`` supplies every
    root's label set.
    """
    if n < 1:
        raise ValueError(f"length must be positive, got {n}")
    total = 0
    for root, labels in labels_by_root(n).items():
        _, orbit = canonical_form(root)
        hit = cache.get(root, n) if cache is not None else None
        if hit is not None:
            size = hit[0]
        else:
            size, witness = max_clique(graph_from_labels(root, n, labels))
            if cache is not None:
                cache.put(root, n, size, witness)
        total += orbit * size
    return total
