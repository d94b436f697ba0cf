"""CSR adjacency, dense id maps, and the attribute indexes used by the queries.

All structures index nodes densely in ``[0, n)``. Vertex subsets are carried
as boolean numpy arrays of length ``n`` ("masks").
"""

from __future__ import annotations

import bisect
import datetime as dt
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

from .errors import EndpointOutOfRange

if TYPE_CHECKING:
    from .ingest import SocialNetwork

VertexMask = np.ndarray  # dtype=bool, length = node count


@dataclass(frozen=True, eq=False)
class Csr:
    n: int
    offsets: np.ndarray
    neighbors: np.ndarray
    edge_annotation: np.ndarray | None = None

    @property
    def edge_count(self) -> int:
        return int(self.offsets[-1])

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Per-node neighbor lists as plain Python ints, for scalar traversals."""
        nbrs = self.neighbors.tolist()
        offs = self.offsets.tolist()
        return [nbrs[offs[v]:offs[v + 1]] for v in range(self.n)]

    @cached_property
    def annotation_lists(self) -> list[list[int]] | None:
        if self.edge_annotation is None:
            return None
        ann = self.edge_annotation.tolist()
        offs = self.offsets.tolist()
        return [ann[offs[v]:offs[v + 1]] for v in range(self.n)]

    @cached_property
    def sources(self) -> np.ndarray:
        """Source node of every edge slot (parallel to ``neighbors``)."""
        return np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))

    def annotation(self, u: int, v: int, default: int = 0) -> int:
        """Annotation of edge ``u -> v``; ``default`` when the edge is absent."""
        anns = self.annotation_lists
        if anns is None:
            return default
        row = self.adjacency[u]
        i = bisect.bisect_left(row, v)
        if i < len(row) and row[i] == v:
            return anns[u][i]
        return default

    def has_edge(self, u: int, v: int) -> bool:
        row = self.adjacency[u]
        i = bisect.bisect_left(row, v)
        return i < len(row) and row[i] == v

    def is_symmetric(self) -> bool:
        src = self.sources
        fwd = np.lexsort((self.neighbors, src))
        rev = np.lexsort((src, self.neighbors))
        return bool(
            np.array_equal(src[fwd], self.neighbors[rev])
            and np.array_equal(self.neighbors[fwd], src[rev])
        )


def build_csr(
    n: int,
    directed_edges: Iterable[tuple[int, int]] | np.ndarray,
    annotations: Sequence[int] | np.ndarray | None = None,
) -> Csr:
    """Build a CSR with sorted, duplicate-free adjacency lists.

    Duplicate edges keep the annotation of their first occurrence.
    """
    edges = np.asarray(list(directed_edges) if not isinstance(directed_edges, np.ndarray)
                       else directed_edges, dtype=np.int64).reshape(-1, 2)
    src, dst = edges[:, 0], edges[:, 1]
    ann = None if annotations is None else np.asarray(annotations, dtype=np.int64)
    if ann is not None and len(ann) != len(src):
        raise ValueError("annotations must be parallel to directed_edges")
    if len(src):
        bad = (src < 0) | (src >= n) | (dst < 0) | (dst >= n)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise EndpointOutOfRange(int(src[i]), int(dst[i]), n)
    # lexsort is stable, so the first of each duplicate run is the first occurrence
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    if ann is not None:
        ann = ann[order]
    if len(src):
        keep = np.ones(len(src), dtype=bool)
        keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        src, dst = src[keep], dst[keep]
        if ann is not None:
            ann = ann[keep]
    counts = np.bincount(src, minlength=n) if len(src) else np.zeros(n, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Csr(n, offsets, dst.astype(np.int64), ann)


def induce_by_vertices(g: Csr, mask: VertexMask) -> Csr:
    """Keep edges whose endpoints are both in ``mask``; node count is unchanged."""
    mask = np.asarray(mask, dtype=bool)
    if len(mask) != g.n:
        raise ValueError(f"mask length {len(mask)} != node count {g.n}")
    keep = mask[g.sources] & mask[g.neighbors]
    counts = np.bincount(g.sources[keep], minlength=g.n)
    offsets = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    ann = None if g.edge_annotation is None else g.edge_annotation[keep]
    return Csr(g.n, offsets, g.neighbors[keep], ann)


@dataclass(frozen=True)
class ReplyThreshold:
    """Edge predicate of the frequent-communication subgraph.

    ``pred(a, b)`` holds iff both ``a -> b`` and ``b -> a`` reply counts
    exceed ``x``. Counts are looked up on demand during traversal.
    """

    g: Csr
    x: int

    @property
    def accepts_all(self) -> bool:
        return self.x < 0

    def __call__(self, a: int, b: int) -> bool:
        if self.x < 0:
            return True
        return self.g.annotation(a, b) > self.x and self.g.annotation(b, a) > self.x


def induce_by_reply_threshold(g: Csr, x: int) -> ReplyThreshold:
    return ReplyThreshold(g, x)


class DenseIdMap:
    """Bijection between sparse external ids and dense indices ``[0, n)``.

    Indices are handed out in first-appearance order.
    """

    def __init__(self, ids: Iterable[int] = ()) -> None:
        self.to_dense: dict[int, int] = {}
        self.to_sparse: list[int] = []
        for i in ids:
            self.intern(i)

    def intern(self, sparse: int) -> int:
        d = self.to_dense.get(sparse)
        if d is None:
            d = len(self.to_sparse)
            self.to_dense[sparse] = d
            self.to_sparse.append(sparse)
        return d

    def __len__(self) -> int:
        return len(self.to_sparse)

    def __contains__(self, sparse: object) -> bool:
        return sparse in self.to_dense

    def dense(self, sparse: int) -> int:
        return self.to_dense[sparse]

    def sparse(self, dense: int) -> int:
        return self.to_sparse[dense]

    def get(self, sparse: int) -> int | None:
        return self.to_dense.get(sparse)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DenseIdMap) and self.to_sparse == other.to_sparse

    def __repr__(self) -> str:
        return f"DenseIdMap(n={len(self)})"


@dataclass(frozen=True, eq=False)
class PlaceHierarchy:
    """Nested-interval labels over the partOf forest.

    ``low[q]`` is q's pre-order number and ``high[q]`` the largest pre-order
    number inside q's subtree, so q lies under p iff
    ``low[p] <= low[q] <= high[p]``.
    """

    low: np.ndarray
    high: np.ndarray
    name_index: dict[str, list[int]]

    @classmethod
    def build(cls, parent: Sequence[int], names: Sequence[str]) -> PlaceHierarchy:
        n = len(parent)
        children: list[list[int]] = [[] for _ in range(n)]
        roots = []
        for q, p in enumerate(parent):
            if p < 0:
                roots.append(q)
            else:
                children[p].append(q)
        low = np.full(n, -1, dtype=np.int64)
        high = np.full(n, -1, dtype=np.int64)
        counter = 0
        for root in roots:
            stack = [(root, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    high[v] = counter - 1
                    continue
                low[v] = counter
                counter += 1
                stack.append((v, True))
                stack.extend((c, False) for c in reversed(children[v]))
        if counter != n:
            raise ValueError("place partOf relation contains a cycle")
        name_index: dict[str, list[int]] = {}
        for q, name in enumerate(names):
            name_index.setdefault(name, []).append(q)
        return cls(low, high, name_index)

    def contains(self, p: int, q: int) -> bool:
        """True when q is p or a transitive sub-place of p."""
        return bool(self.low[p] <= self.low[q] and self.high[q] <= self.high[p])

    def intervals_for(self, name: str) -> list[tuple[int, int]]:
        return [(int(self.low[p]), int(self.high[p])) for p in self.name_index.get(name, ())]


def labels_in_intervals(labels: np.ndarray, intervals: list[tuple[int, int]]) -> np.ndarray:
    """Boolean array: which pre-order labels fall inside any interval. -1 never matches."""
    hit = np.zeros(len(labels), dtype=bool)
    for lo, hi in intervals:
        hit |= (labels >= lo) & (labels <= hi)
    return hit


@dataclass(frozen=True, eq=False)
class BirthdayIndex:
    keys: np.ndarray   # sorted date ordinals
    order: np.ndarray  # person indices, parallel to keys

    @classmethod
    def build(cls, birthdays: np.ndarray) -> BirthdayIndex:
        order = np.argsort(birthdays, kind="stable")
        return cls(birthdays[order], order)

    def on_or_after(self, d: dt.date, n: int) -> VertexMask:
        start = int(np.searchsorted(self.keys, d.toordinal(), side="left"))
        mask = np.zeros(n, dtype=bool)
        mask[self.order[start:]] = True
        return mask


def persons_in_place(net: SocialNetwork, place_name: str) -> VertexMask:
    intervals = net.places.hierarchy.intervals_for(place_name)
    mask = np.zeros(net.person_count, dtype=bool)
    if not intervals:
        return mask
    mask |= labels_in_intervals(net.person_place_label, intervals)
    persons, labels = net.person_org_place_label
    if len(persons):
        hit = labels_in_intervals(labels, intervals)
        mask[persons[hit]] = True
    return mask


def persons_born_on_or_after(net: SocialNetwork, d: dt.date) -> VertexMask:
    return net.birthday_index.on_or_after(d, net.person_count)


def persons_in_forums_with_tag(net: SocialNetwork, tag_name: str) -> VertexMask:
    mask = np.zeros(net.person_count, dtype=bool)
    for tag in net.tags.by_name.get(tag_name, ()):
        for forum in net.tag_forums[tag]:
            mask[net.forum_members[forum]] = True
    return mask


def persons_interested_in_tag(net: SocialNetwork, tag: int) -> VertexMask:
    mask = np.zeros(net.person_count, dtype=bool)
    mask[net.tag_interested[tag]] = True
    return mask


__all__ = [
    "BirthdayIndex",
    "Csr",
    "DenseIdMap",
    "PlaceHierarchy",
    "ReplyThreshold",
    "VertexMask",
    "build_csr",
    "induce_by_reply_threshold",
    "induce_by_vertices",
    "persons_born_on_or_after",
    "persons_in_forums_with_tag",
    "persons_in_place",
    "persons_interested_in_tag",
]
