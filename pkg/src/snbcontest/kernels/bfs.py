"""Scalar (single-source) traversals over a :class:`~snbcontest.graph.Csr`."""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..graph import Csr

EdgePredicate = Callable[[int, int], bool]


def bidirectional_distance(
    g: Csr, src: int, dst: int, edge_pred: EdgePredicate | None = None
) -> int | None:
    """Unweighted shortest distance from ``src`` to ``dst``, or None if unreachable.

    Only edges accepted by ``edge_pred`` are traversed. Each round expands one
    whole level of whichever side has the smaller frontier; the minimum over
    all meeting points found in that level is the exact distance.
    """
    if src == dst:
        return 0
    if getattr(edge_pred, "accepts_all", False):
        edge_pred = None
    adj = g.adjacency
    fwd = {src: 0}
    bwd = {dst: 0}
    front_f = [src]
    front_b = [dst]
    while front_f and front_b:
        if len(front_f) <= len(front_b):
            front_f, best = _expand(adj, front_f, fwd, bwd, edge_pred)
        else:
            front_b, best = _expand(adj, front_b, bwd, fwd, edge_pred, reverse=True)
        if best is not None:
            return best
    return None


def _expand(adj, front, mine, other, edge_pred, reverse=False):
    best = None
    nxt = []
    for u in front:
        du = mine[u] + 1
        for v in adj[u]:
            if v in mine:
                continue
            # the backward side walks edges against their orientation
            if edge_pred is not None and not (edge_pred(v, u) if reverse else edge_pred(u, v)):
                continue
            mine[v] = du
            nxt.append(v)
            dv = other.get(v)
            if dv is not None and (best is None or du + dv < best):
                best = du + dv
    return nxt, best


def bfs_levels(g: Csr, source: int, mask: np.ndarray | None = None) -> dict[int, int]:
    """Plain BFS; returns ``{node: hops}`` for every node reachable inside ``mask``."""
    adj = g.adjacency
    inside = None if mask is None else mask.tolist()
    dist = {source: 0}
    front = [source]
    level = 0
    while front:
        level += 1
        nxt = []
        for u in front:
            for v in adj[u]:
                if v not in dist and (inside is None or inside[v]):
                    dist[v] = level
                    nxt.append(v)
        front = nxt
    return dist


def level_sum_bfs(g: Csr, source: int, mask: np.ndarray | None = None) -> tuple[int, int]:
    """Return ``(s, |C|)``: the distance sum to, and size of, ``source``'s component.

    At each level l the sum grows by l times the number of nodes first found
    at that level.
    """
    adj = g.adjacency
    inside = None if mask is None else mask.tolist()
    seen = {source}
    front = [source]
    level = 0
    total = 0
    while front:
        level += 1
        nxt = []
        for u in front:
            for v in adj[u]:
                if v not in seen and (inside is None or inside[v]):
                    seen.add(v)
                    nxt.append(v)
        total += level * len(nxt)
        front = nxt
    return total, len(seen)
