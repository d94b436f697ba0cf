"""Traversal kernels used by the query implementations."""

from .bfs import bfs_levels, bidirectional_distance, level_sum_bfs
from .components import UNLABELLED, ComponentLabeling, wcc
from .msbfs import (
    DEFAULT_PULL_THRESHOLD,
    ClosenessResult,
    MsBfsBatch,
    bit_counts,
    msbfs_closeness,
    msbfs_reach_within_h,
)
from .topk import top_k_select

__all__ = [
    "DEFAULT_PULL_THRESHOLD",
    "UNLABELLED",
    "ClosenessResult",
    "ComponentLabeling",
    "MsBfsBatch",
    "bfs_levels",
    "bidirectional_distance",
    "bit_counts",
    "level_sum_bfs",
    "msbfs_closeness",
    "msbfs_reach_within_h",
    "top_k_select",
    "wcc",
]
