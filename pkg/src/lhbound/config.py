"""Resource ceilings and worker-count resolution."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, TypeVar

N_MAX = 128
# vectorised kernels hold one vector per uint64 word
N_WORD = 64

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class Limits:
    k_enum_max: int = 26
    r_max: int = 28
    slice_cap: int = 10**6
    combo_max: int = 10**8
    minimal_k_max: int = 20

    def __post_init__(self):
        for name in ("k_enum_max", "r_max", "slice_cap", "combo_max", "minimal_k_max"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_LIMITS = Limits()

_threads: Optional[int] = None


def set_threads(n: Optional[int]) -> None:
    """Fix the worker count used by parallel kernels (``None`` restores auto)."""
    global _threads
    if n is not None and n < 1:
        raise ValueError("thread count must be >= 1")
    _threads = n


def resolve_threads() -> int:
    if _threads is not None:
        return _threads
    env = os.environ.get("LHBOUND_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map ``fn`` over ``items`` keeping input order.

    Reductions over the returned list are therefore independent of the
    worker count.
    """
    items = list(items)
    threads = min(resolve_threads(), len(items))
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
