"""The four contest queries and their exact output lines."""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import UnknownPerson
from .graph import (
    induce_by_reply_threshold,
    persons_in_forums_with_tag,
    persons_in_place,
)
from .ingest import SocialNetwork
from .kernels import bidirectional_distance, msbfs_closeness, msbfs_reach_within_h, top_k_select, wcc

UNREACHABLE = -1


@dataclass(frozen=True)
class Query1:
    p1: int
    p2: int
    x: int

    def __post_init__(self) -> None:
        if self.x < -1:
            raise ValueError(f"x must be >= -1, got {self.x}")

    def text(self) -> str:
        return f"query1({self.p1}, {self.p2}, {self.x})"


@dataclass(frozen=True)
class Query2:
    k: int
    d: dt.date

    def __post_init__(self) -> None:
        _check_k(self.k)

    def text(self) -> str:
        return f"query2({self.k}, {self.d.isoformat()})"


@dataclass(frozen=True)
class Query3:
    k: int
    h: int
    p: str

    def __post_init__(self) -> None:
        _check_k(self.k)
        if self.h < 1:
            raise ValueError(f"h must be >= 1, got {self.h}")

    def text(self) -> str:
        return f"query3({self.k}, {self.h}, {self.p})"


@dataclass(frozen=True)
class Query4:
    k: int
    t: str

    def __post_init__(self) -> None:
        _check_k(self.k)

    def text(self) -> str:
        return f"query4({self.k}, {self.t})"


QueryInstance = Union[Query1, Query2, Query3, Query4]


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def _person(net: SocialNetwork, sparse: int) -> int:
    p = net.person_index(sparse)
    if p is None:
        raise UnknownPerson(sparse)
    return p


def query1(net: SocialNetwork, p1: int, p2: int, x: int) -> str:
    a, b = _person(net, p1), _person(net, p2)
    pred = None if x < 0 else induce_by_reply_threshold(net.knows, x)
    d = bidirectional_distance(net.knows, a, b, pred)
    return str(UNREACHABLE if d is None else d)


def tag_ranges(net: SocialNetwork, d: dt.date) -> list[int]:
    """Largest-component size per tag among interested persons born on or after ``d``."""
    cutoff = d.toordinal()
    birthdays = net.persons.birthdays
    mask = np.zeros(net.person_count, dtype=bool)
    ranges = []
    for members in net.tag_interested:
        members = members[birthdays[members] >= cutoff]
        if not members.size:
            ranges.append(0)
            continue
        mask[members] = True
        ranges.append(wcc(net.knows, mask).largest)
        mask[members] = False
    return ranges


def query2(net: SocialNetwork, k: int, d: dt.date) -> str:
    ranges = tag_ranges(net, d)
    names = net.tags.names
    top = top_k_select(range(len(names)), k, score=ranges.__getitem__,
                       tie_key=lambda t: (names[t], t))
    return " ".join(names[t] for t in top)


def similar_pairs(net: SocialNetwork, h: int, place: str) -> list[tuple[int, int, int]]:
    """``(similarity, id1, id2)`` for every eligible pair, ``id1 < id2`` numerically."""
    candidates = np.flatnonzero(persons_in_place(net, place)).tolist()
    if len(candidates) < 2:
        return []
    reach = msbfs_reach_within_h(net.knows, candidates, h)
    ii, jj = np.nonzero(np.triu(reach, 1))
    interests = net.person_interests
    ids = net.persons.ids.to_sparse
    pairs = []
    for i, j in zip(ii.tolist(), jj.tolist()):
        a, b = candidates[i], candidates[j]
        sim = (interests[a] & interests[b]).bit_count()
        ia, ib = ids[a], ids[b]
        pairs.append((sim, ia, ib) if ia < ib else (sim, ib, ia))
    return pairs


def query3(net: SocialNetwork, k: int, h: int, p: str) -> str:
    pairs = similar_pairs(net, h, p)
    top = top_k_select(pairs, k, score=lambda t: t[0], tie_key=lambda t: (t[1], t[2]))
    return " ".join(f"{a}|{b}" for _, a, b in top)


def query4(net: SocialNetwork, k: int, t: str, *, prune: bool = True) -> str:
    mask = persons_in_forums_with_tag(net, t)
    if not mask.any():
        return ""
    res = msbfs_closeness(net.knows, mask, k, prune=prune)
    ids = net.persons.ids.to_sparse
    top = top_k_select(res.sums, k, score=res.ccv, tie_key=ids.__getitem__)
    return " ".join(str(ids[p]) for p in top)


def evaluate(net: SocialNetwork, q: QueryInstance) -> str:
    if isinstance(q, Query1):
        return query1(net, q.p1, q.p2, q.x)
    if isinstance(q, Query2):
        return query2(net, q.k, q.d)
    if isinstance(q, Query3):
        return query3(net, q.k, q.h, q.p)
    if isinstance(q, Query4):
        return query4(net, q.k, q.t)
    raise TypeError(f"not a query: {q!r}")


def query_type(q: QueryInstance) -> int:
    return {Query1: 1, Query2: 2, Query3: 3, Query4: 4}[type(q)]
