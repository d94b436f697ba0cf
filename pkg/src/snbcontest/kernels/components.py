"""Weakly connected components by repeated BFS over a vertex-masked graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..graph import Csr

UNLABELLED = -1


@dataclass(frozen=True, eq=False)
class ComponentLabeling:
    labels: np.ndarray  # component id per node, UNLABELLED outside the mask
    sizes: list[int]

    @property
    def count(self) -> int:
        return len(self.sizes)

    @property
    def largest(self) -> int:
        return max(self.sizes, default=0)

    def size_of(self, v: int) -> int:
        return self.sizes[self.labels[v]]


def wcc(g: Csr, mask: np.ndarray | None = None) -> ComponentLabeling:
    """Label the components of the subgraph induced by ``mask`` (all nodes if None).

    Component ids are assigned in increasing order of each component's
    smallest node index.
    """
    adj = g.adjacency
    if mask is None:
        members = range(g.n)
        inside = [True] * g.n
    else:
        if len(mask) != g.n:
            raise ValueError(f"mask length {len(mask)} != node count {g.n}")
        members = np.flatnonzero(mask).tolist()
        inside = mask.tolist()
    labels = [UNLABELLED] * g.n
    sizes: list[int] = []
    for start in members:
        if labels[start] != UNLABELLED:
            continue
        label = len(sizes)
        labels[start] = label
        front = [start]
        size = 1
        while front:
            nxt = []
            for u in front:
                for v in adj[u]:
                    if labels[v] == UNLABELLED and inside[v]:
                        labels[v] = label
                        nxt.append(v)
            size += len(nxt)
            front = nxt
        sizes.append(size)
    return ComponentLabeling(np.array(labels, dtype=np.int64), sizes)
