"""Small shared helpers: worker-count resolution and float formatting."""

from __future__ import annotations

import os

THREADS_ENV = "DIVORIENT_THREADS"


def worker_count(explicit: int | None = None) -> int:
    """Worker threads: explicit argument, else DIVORIENT_THREADS, else cpu count."""
    if explicit is not None:
        if explicit < 1:
            raise ValueError("worker count must be >= 1")
        return explicit
    env = os.environ.get(THREADS_ENV)
    if env:
        value = int(env)
        if value < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1")
        return value
    return os.cpu_count() or 1


def fmt17(x: float) -> str:
    """17-significant-digit decimal; round-trips any double exactly."""
    return format(float(x), ".17g")
