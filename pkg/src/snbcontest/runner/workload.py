from __future__ import annotations

import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ..errors import QueryFailed
from ..ingest import SocialNetwork
from ..queries import QueryInstance, evaluate, query_type
from .queryfile import Workload


@dataclass
class RunReport:
    lines: list[str]
    seconds: list[float]
    wall_seconds: float
    workers: int
    types: list[int] = field(default_factory=list)

    def per_type(self) -> dict[int, tuple[int, float]]:
        """``{query type: (count, total seconds)}``."""
        out: dict[int, list] = defaultdict(lambda: [0, 0.0])
        for t, s in zip(self.types, self.seconds):
            out[t][0] += 1
            out[t][1] += s
        return {t: (c, s) for t, (c, s) in sorted(out.items())}


def run_workload(
    net: SocialNetwork,
    workload: Workload,
    worker_count: int = 1,
    evaluator: Callable[[SocialNetwork, QueryInstance], str] = evaluate,
) -> RunReport:
    """Evaluate every query; result i always belongs to query i."""
    if worker_count < 1:
        raise ValueError("worker_count must be at least 1")
    n = len(workload.queries)
    lines: list[str] = [""] * n
    seconds = [0.0] * n

    def job(i: int) -> None:
        t0 = time.perf_counter()
        try:
            lines[i] = evaluator(net, workload.queries[i])
        except Exception as exc:
            raise QueryFailed(workload.lines[i], exc) from exc
        seconds[i] = time.perf_counter() - t0

    start = time.perf_counter()
    if worker_count == 1:
        for i in range(n):
            job(i)
    else:
        with ThreadPoolExecutor(max_workers=worker_count) as pool:
            futures = [pool.submit(job, i) for i in range(n)]
            for f in futures:
                f.result()
    wall = time.perf_counter() - start
    return RunReport(lines, seconds, wall, worker_count, [query_type(q) for q in workload.queries])
