"""Shared small helpers: worker pools and deterministic parallel mapping."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Map preserving input order; results are independent of `workers`."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def chunk_evenly(items: Sequence[T], parts: int) -> list[list[T]]:
    parts = max(1, min(parts, len(items))) if items else 1
    out: list[list[T]] = [[] for _ in range(parts)]
    for i, x in enumerate(items):
        out[i % parts].append(x)
    return [c for c in out if c]
