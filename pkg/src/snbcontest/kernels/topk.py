from __future__ import annotations

import heapq
from typing import Any, Callable, Iterable, TypeVar

T = TypeVar("T")


def top_k_select(
    items: Iterable[T],
    k: int,
    score: Callable[[T], Any],
    tie_key: Callable[[T], Any],
) -> list[T]:
    """The ``k`` items with highest score; ties go to the smaller ``tie_key``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return heapq.nsmallest(k, items, key=lambda it: (-score(it), tie_key(it)))
