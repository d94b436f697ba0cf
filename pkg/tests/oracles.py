"""Brute-force reference answers computed straight from raw tables.

Nothing here touches the engine's CSR, masks, or kernels.
"""

from __future__ import annotations

import datetime as dt
from collections import Counter, deque
from fractions import Fraction

import numpy as np

from snbcontest.ingest import RawData


def knows_sets(raw: RawData) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {p: set() for p, _ in raw.persons}
    for a, b in raw.knows:
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def reply_counts(raw: RawData) -> Counter:
    creator = dict(raw.comment_creator)
    return Counter((creator[c], creator[parent]) for c, parent in raw.comment_reply_of)


def bfs(adj, src) -> dict:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


class Q1Oracle:
    """Filtered-adjacency BFS, with the per-x subgraph cached across calls."""

    def __init__(self, raw: RawData) -> None:
        self.adj = knows_sets(raw)
        self.counts = reply_counts(raw)
        self.by_x: dict[int, dict] = {}

    def __call__(self, p1: int, p2: int, x: int) -> str:
        sub = self.by_x.get(x)
        if sub is None:
            c = self.counts
            sub = {p: {q for q in nb if c[p, q] > x and c[q, p] > x} for p, nb in self.adj.items()}
            self.by_x[x] = sub
        return str(bfs(sub, p1).get(p2, -1))


def q1(raw: RawData, p1: int, p2: int, x: int) -> str:
    return Q1Oracle(raw)(p1, p2, x)


class UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def sizes(self) -> Counter:
        return Counter(self.find(i) for i in self.parent)


def q2(raw: RawData, k: int, d: dt.date) -> str:
    birthday = dict(raw.persons)
    adj = knows_sets(raw)
    ranked = []
    for tid, name in raw.tags:
        people = {p for p, t in raw.interests if t == tid and birthday[p] >= d}
        uf = UnionFind(people)
        for a in people:
            for b in adj[a]:
                if b in people:
                    uf.union(a, b)
        largest = max(uf.sizes().values(), default=0)
        ranked.append((-largest, name))
    ranked.sort()
    return " ".join(name for _, name in ranked[:k])


def places_under(raw: RawData, name: str) -> set[int]:
    """Every place that is, or transitively lies inside, a place called ``name``."""
    parent = dict(raw.place_parent)
    roots = {pid for pid, n, _ in raw.places if n == name}
    out = set()
    for pid, _, _ in raw.places:
        q = pid
        while q is not None:
            if q in roots:
                out.add(pid)
                break
            q = parent.get(q)
    return out


def persons_in_place(raw: RawData, name: str) -> set[int]:
    inside = places_under(raw, name)
    org_place = dict(raw.org_place)
    people = {p for p, pl in raw.person_place if pl in inside}
    people |= {p for p, o in raw.study_at + raw.work_at if org_place.get(o) in inside}
    return people


def q3(raw: RawData, k: int, h: int, place: str) -> str:
    adj = knows_sets(raw)
    interests: dict[int, set[int]] = {p: set() for p, _ in raw.persons}
    for p, t in raw.interests:
        interests[p].add(t)
    people = sorted(persons_in_place(raw, place))
    pairs = []
    for a in people:
        dist = bfs(adj, a)
        for b in people:
            if a < b and dist.get(b, h + 1) <= h:
                pairs.append((-len(interests[a] & interests[b]), a, b))
    pairs.sort()
    return " ".join(f"{a}|{b}" for _, a, b in pairs[:k])


def floyd_warshall(n: int, edges) -> np.ndarray:
    inf = np.inf
    d = np.full((n, n), inf)
    np.fill_diagonal(d, 0)
    for a, b in edges:
        d[a, b] = d[b, a] = 1
    for m in range(n):
        d = np.minimum(d, d[:, m, None] + d[None, m, :])
    return d


def q4(raw: RawData, k: int, tag_name: str) -> str:
    tags = {t for t, n in raw.tags if n == tag_name}
    forums = {f for f, t in raw.forum_tags if t in tags}
    people = sorted({p for f, p in raw.forum_members if f in forums})
    if not people:
        return ""
    pos = {p: i for i, p in enumerate(people)}
    adj = knows_sets(raw)
    edges = [(pos[a], pos[b]) for a in people for b in adj[a] if b in pos]
    d = floyd_warshall(len(people), edges)
    n = len(people)
    ranked = []
    for i, p in enumerate(people):
        row = d[i][np.isfinite(d[i])]
        s = int(row.sum())
        comp = len(row)
        ccv = Fraction(0) if s == 0 else Fraction((comp - 1) ** 2, (n - 1) * s)
        ranked.append((-ccv, p))
    ranked.sort()
    return " ".join(str(p) for _, p in ranked[:k])
