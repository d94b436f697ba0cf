"""Bit-parallel multi-source BFS.

Up to 64 traversals share one pass over the graph: every node carries a
``uint64`` word whose bit j says whether source j has reached it. A level is
advanced either top-down (scatter from frontier nodes) or bottom-up (every
node ORs its neighbours' frontier words), chosen per level by frontier size.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..graph import Csr, induce_by_vertices
from .components import ComponentLabeling, wcc

WORD_BITS = 64
DEFAULT_PULL_THRESHOLD = 1 / 8

_BIT = np.left_shift(np.uint64(1), np.arange(WORD_BITS, dtype=np.uint64))


def bit_counts(words: np.ndarray, width: int = WORD_BITS) -> np.ndarray:
    """Population count of each bit position across ``words``."""
    nz = words[words != 0]
    if not nz.size:
        return np.zeros(width, dtype=np.int64)
    bits = np.unpackbits(nz.astype("<u8").view(np.uint8).reshape(-1, 8), axis=1, bitorder="little")
    return bits.sum(axis=0, dtype=np.int64)[:width]


def unpack_words(words: np.ndarray, width: int = WORD_BITS) -> np.ndarray:
    """``(len(words), width)`` 0/1 matrix of the bits in ``words``."""
    bits = np.unpackbits(words.astype("<u8").view(np.uint8).reshape(-1, 8), axis=1, bitorder="little")
    return bits[:, :width]


class MsBfsBatch:
    """One lockstep batch of at most 64 BFS traversals over ``g``."""

    def __init__(self, g: Csr, sources: Sequence[int], pull_threshold: float = DEFAULT_PULL_THRESHOLD):
        if len(sources) > WORD_BITS:
            raise ValueError(f"a batch holds at most {WORD_BITS} sources")
        if len(set(sources)) != len(sources):
            raise ValueError("batch sources must be distinct")
        self.g = g
        self.sources = np.asarray(sources, dtype=np.int64)
        self.width = len(sources)
        self.pull_threshold = pull_threshold
        self.all_bits = np.uint64((1 << self.width) - 1)
        self.seen = np.zeros(g.n, dtype=np.uint64)
        self.seen[self.sources] = _BIT[: self.width]
        self.frontier = self.seen.copy()
        self.level = 0
        self.pulls = 0
        self.pushes = 0

    def bit(self, j: int) -> np.uint64:
        return _BIT[j]

    def drop(self, j: int) -> None:
        """Stop traversal j: clear its bit from the frontier."""
        self.frontier &= ~_BIT[j]

    def advance(self) -> np.ndarray:
        """Expand one level and return the words of newly reached (node, source) pairs."""
        g = self.g
        active = np.flatnonzero(self.frontier)
        self.level += 1
        if not active.size:
            self.frontier = np.zeros(g.n, dtype=np.uint64)
            return self.frontier
        unvisited = int(np.count_nonzero(self.seen != self.all_bits))
        if active.size > unvisited * self.pull_threshold:
            nxt = self._pull()
            self.pulls += 1
        else:
            nxt = self._push(active)
            self.pushes += 1
        nxt &= ~self.seen
        self.seen |= nxt
        self.frontier = nxt
        return nxt

    def _pull(self) -> np.ndarray:
        g = self.g
        nxt = np.zeros(g.n, dtype=np.uint64)
        if not g.edge_count:
            return nxt
        deg = np.diff(g.offsets)
        has = deg > 0
        gathered = self.frontier[g.neighbors]
        nxt[has] = np.bitwise_or.reduceat(gathered, g.offsets[:-1][has])
        return nxt

    def _push(self, active: np.ndarray) -> np.ndarray:
        g = self.g
        nxt = np.zeros(g.n, dtype=np.uint64)
        starts = g.offsets[active]
        deg = g.offsets[active + 1] - starts
        total = int(deg.sum())
        if not total:
            return nxt
        slot = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(deg) - deg, deg) + np.repeat(starts, deg)
        np.bitwise_or.at(nxt, g.neighbors[slot], np.repeat(self.frontier[active], deg))
        return nxt

    def seen_by(self, j: int) -> np.ndarray:
        return (self.seen & _BIT[j]) != 0


def _batches(items: Sequence[int]) -> list[Sequence[int]]:
    return [items[i:i + WORD_BITS] for i in range(0, len(items), WORD_BITS)]


def msbfs_reach_within_h(
    g: Csr, sources: Sequence[int], h: int, pull_threshold: float = DEFAULT_PULL_THRESHOLD
) -> np.ndarray:
    """``reach[i, j]`` is True iff sources i and j are at most ``h`` hops apart in ``g``.

    Each batch advances only ``ceil(h/2)`` levels. Two sources are within h
    hops iff some node is within ``ceil(h/2)`` of one and ``h - ceil(h/2)``
    of the other, so the visited sets at those two depths are intersected
    (the same depth for even h, adjacent depths for odd h).
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    sources = list(sources)
    if len(set(sources)) != len(sources):
        raise ValueError("sources must be distinct")
    s = len(sources)
    reach = np.zeros((s, s), dtype=bool)
    if not s:
        return reach
    far = math.ceil(h / 2)
    near = h - far
    near_bits, far_bits = [], []
    for chunk in _batches(sources):
        batch = MsBfsBatch(g, chunk, pull_threshold)
        snap_near = batch.seen.copy() if near == 0 else None
        while batch.level < far:
            batch.advance()
            if batch.level == near:
                snap_near = batch.seen.copy()
        near_bits.append(unpack_words(snap_near, batch.width).astype(np.float32))
        far_bits.append(unpack_words(batch.seen, batch.width).astype(np.float32))
    offsets = np.cumsum([0] + [b.shape[1] for b in far_bits])
    for a, fa in enumerate(far_bits):
        for b, nb in enumerate(near_bits):
            # (i, j) meet iff some node has bit i in the far set and bit j in the near set
            block = fa.T @ nb
            reach[offsets[a]:offsets[a + 1], offsets[b]:offsets[b + 1]] = block > 0
    return reach


# observer(level, source, partial, unvisited)
LevelObserver = Callable[[int, int, int, int], None]


@dataclass
class ClosenessResult:
    """Per-source distance sums for a vertex-masked graph.

    Pruned sources were proven unable to enter the top-k and carry no sum.
    """

    n: int
    sums: dict[int, int] = field(default_factory=dict)
    component_size: dict[int, int] = field(default_factory=dict)
    pruned: set[int] = field(default_factory=set)

    def ccv(self, p: int) -> Fraction:
        s = self.sums[p]
        if s == 0:
            return Fraction(0)
        c = self.component_size[p]
        return Fraction((c - 1) ** 2, (self.n - 1) * s)


class _ComponentBest:
    """The k smallest exact sums seen so far in one component (max-heap)."""

    __slots__ = ("k", "heap")

    def __init__(self, k: int) -> None:
        self.k = k
        self.heap: list[int] = []

    def add(self, s: int) -> None:
        if len(self.heap) < self.k:
            heapq.heappush(self.heap, -s)
        elif s < -self.heap[0]:
            heapq.heapreplace(self.heap, -s)

    def threshold(self) -> int | None:
        return -self.heap[0] if len(self.heap) == self.k else None


def msbfs_closeness(
    g: Csr,
    mask: np.ndarray | None,
    k: int,
    *,
    prune: bool = True,
    labeling: ComponentLabeling | None = None,
    observer: LevelObserver | None = None,
    pull_threshold: float = DEFAULT_PULL_THRESHOLD,
) -> ClosenessResult:
    """Distance sums s(p) for every masked node, with top-k pruning.

    After level l a source's sum is at least ``partial + unvisited * (l + 1)``.
    Within one component a larger s means a smaller closeness value, so a
    source is dropped once that bound strictly exceeds the k-th smallest exact
    sum already finished in its component.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if mask is None:
        mask = np.ones(g.n, dtype=bool)
    mask = np.asarray(mask, dtype=bool)
    sub = induce_by_vertices(g, mask)
    if labeling is None:
        labeling = wcc(sub, mask)
    labels = labeling.labels
    result = ClosenessResult(n=int(mask.sum()))

    deg = np.diff(sub.offsets)
    todo = []
    for p in np.flatnonzero(mask).tolist():
        c = labeling.sizes[labels[p]]
        result.component_size[p] = c
        if c == 1:
            result.sums[p] = 0
        else:
            todo.append(p)
    # central nodes first: they finish early and tighten the bound for the rest
    todo.sort(key=lambda p: (labels[p], -deg[p], p))
    best = {lab: _ComponentBest(k) for lab in {int(labels[p]) for p in todo}}

    for chunk in _batches(todo):
        batch = MsBfsBatch(sub, chunk, pull_threshold)
        w = batch.width
        comp = [int(labels[p]) for p in chunk]
        size = [result.component_size[p] for p in chunk]
        partial = [0] * w
        visited = [1] * w
        active = list(range(w))
        if observer is not None:
            for j in active:
                observer(0, chunk[j], 0, size[j] - 1)
        while active:
            new = batch.advance()
            level = batch.level
            counts = bit_counts(new, w).tolist()
            still = []
            for j in active:
                partial[j] += level * counts[j]
                visited[j] += counts[j]
                unvisited = size[j] - visited[j]
                if observer is not None:
                    observer(level, chunk[j], partial[j], unvisited)
                if unvisited == 0:
                    result.sums[chunk[j]] = partial[j]
                    best[comp[j]].add(partial[j])
                    batch.drop(j)
                elif counts[j] == 0:
                    raise RuntimeError(f"traversal from {chunk[j]} stalled before covering its component")
                else:
                    still.append(j)
            active = []
            for j in still:
                limit = best[comp[j]].threshold() if prune and size[j] > k else None
                if limit is not None and partial[j] + (size[j] - visited[j]) * (level + 1) > limit:
                    result.pruned.add(chunk[j])
                    batch.drop(j)
                else:
                    active.append(j)
    return result
