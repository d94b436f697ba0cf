"""Parameter curation: pick query parameters per difficulty category instead of uniformly."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass

import numpy as np

from ..errors import CategoryUnsatisfiable
from ..ingest import SocialNetwork
from ..queries import Query1, Query2, Query3, Query4, QueryInstance, query1

log = logging.getLogger(__name__)

SUBGRAPH_AXIS = ("none", "low-x", "high-x")
REACH_AXIS = ("unreachable", "few-hops", "many-hops")
FEW_HOPS = 2
MANY_HOPS = 4
K_VALUES = (3, 5, 10)


@dataclass(frozen=True)
class ParameterCategory:
    query_type: int
    name: str

    def __str__(self) -> str:
        return f"Q{self.query_type}:{self.name}"


def q1_categories() -> list[ParameterCategory]:
    return [ParameterCategory(1, f"{s}/{r}") for s, r in itertools.product(SUBGRAPH_AXIS, REACH_AXIS)]


def categories(query_type: int) -> list[ParameterCategory]:
    if query_type == 1:
        return q1_categories()
    if query_type in (2, 3, 4):
        return [ParameterCategory(query_type, f"k={k}") for k in K_VALUES]
    raise ValueError(f"unknown query type {query_type}")


def mutual_reply_counts(net: SocialNetwork) -> np.ndarray:
    """min(count(a->b), count(b->a)) for every directed knows edge slot."""
    g = net.knows
    if g.edge_annotation is None or not g.edge_count:
        return np.zeros(g.edge_count, dtype=np.int64)
    src, dst = g.sources, g.neighbors
    # the reverse slot of (a, b) is found by sorting edges on (b, a)
    rev = np.lexsort((src, dst))
    fwd = np.lexsort((dst, src))
    back = np.empty_like(fwd)
    back[fwd] = g.edge_annotation[rev]
    return np.minimum(g.edge_annotation, back)


def q1_thresholds(net: SocialNetwork) -> dict[str, int]:
    """x value per subgraph category: -1 (no filtering), 0, and the upper quartile of mutual counts."""
    mutual = mutual_reply_counts(net)
    positive = mutual[mutual > 0]
    high = max(1, int(np.percentile(positive, 75))) if positive.size else 1
    return {"none": -1, "low-x": 0, "high-x": high}


def _filtered_adjacency(net: SocialNetwork, x: int) -> list[list[int]]:
    adj = net.knows.adjacency
    if x < 0:
        return adj
    keep = mutual_reply_counts(net) > x
    offs = net.knows.offsets.tolist()
    return [[v for v, ok in zip(adj[u], keep[offs[u]:offs[u + 1]].tolist()) if ok] for u in range(len(adj))]


def _distances(adj: list[list[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    front = [source]
    while front:
        nxt = []
        for u in front:
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        front = nxt
    return dist


def _in_category(reach: str, answer: int) -> bool:
    if reach == "unreachable":
        return answer == -1
    if reach == "few-hops":
        return 1 <= answer <= FEW_HOPS
    return answer >= MANY_HOPS


def sample_q1(
    net: SocialNetwork,
    category: ParameterCategory,
    count: int,
    rng: random.Random,
    *,
    attempts: int = 200,
) -> list[Query1]:
    """Draw up to ``count`` distinct Q1 instances whose answers fall in ``category``.

    Every instance is re-evaluated with :func:`query1` before it is accepted.
    """
    if count <= 0:
        return []
    sub, reach = category.name.split("/")
    x = q1_thresholds(net)[sub]
    adj = _filtered_adjacency(net, x)
    n = net.person_count
    ids = net.persons.ids.to_sparse
    found: dict[tuple[int, int], Query1] = {}
    for _ in range(attempts * count):
        if len(found) >= count or n < 2:
            break
        a = rng.randrange(n)
        dist = _distances(adj, a)
        if reach == "unreachable":
            if len(dist) == n:
                continue
            pool = None
        else:
            pool = [v for v, d in dist.items() if _in_category(reach, d)]
            if not pool:
                continue
        while True:
            b = rng.randrange(n) if pool is None else rng.choice(pool)
            if pool is not None or b not in dist:
                break
        q = Query1(ids[a], ids[b], x)
        if (a, b) in found:
            continue
        if not _in_category(reach, int(query1(net, q.p1, q.p2, q.x))):
            raise AssertionError(f"curated {q.text()} fell outside {category}")
        found[a, b] = q
    if not found:
        raise CategoryUnsatisfiable(category)
    return list(found.values())


def _place_names_with_people(net: SocialNetwork) -> list[str]:
    parent = net.places.parent
    names = net.places.names
    located = np.flatnonzero(net.person_place_label >= 0)
    low_to_place = np.empty(len(names), dtype=np.int64)
    low_to_place[net.places.hierarchy.low] = np.arange(len(names))
    out = set()
    for p in located.tolist():
        q = int(low_to_place[net.person_place_label[p]])
        while q >= 0:
            out.add(names[q])
            q = int(parent[q])
    return sorted(out)


def sample_other(
    net: SocialNetwork, category: ParameterCategory, count: int, rng: random.Random
) -> list[QueryInstance]:
    k = int(category.name.split("=")[1])
    out: list[QueryInstance] = []
    if category.query_type == 2:
        if not net.person_count:
            raise CategoryUnsatisfiable(category)
        for _ in range(count):
            d = net.persons.birthday(rng.randrange(net.person_count))
            out.append(Query2(k, d))
    elif category.query_type == 3:
        places = _place_names_with_people(net)
        if not places:
            raise CategoryUnsatisfiable(category)
        for _ in range(count):
            out.append(Query3(k, rng.randint(1, 4), rng.choice(places)))
    else:
        tags = sorted({net.tags.names[t] for t, forums in enumerate(net.tag_forums) if forums})
        if not tags:
            raise CategoryUnsatisfiable(category)
        for _ in range(count):
            out.append(Query4(k, rng.choice(tags)))
    return out


def curate_parameters(
    net: SocialNetwork,
    query_type: int,
    count_per_category: int,
    *,
    seed: int = 0,
    strict: bool = False,
) -> list[QueryInstance]:
    """Sample ``count_per_category`` queries for each category of ``query_type``.

    Unsatisfiable categories are skipped with a warning, or raised when ``strict``.
    """
    rng = random.Random(seed)
    out: list[QueryInstance] = []
    if count_per_category <= 0:
        return out
    for cat in categories(query_type):
        try:
            if query_type == 1:
                out.extend(sample_q1(net, cat, count_per_category, rng))
            else:
                out.extend(sample_other(net, cat, count_per_category, rng))
        except CategoryUnsatisfiable:
            if strict:
                raise
            log.warning("skipping unsatisfiable category %s", cat)
    return out
