"""Parallel evaluation of independent points.

Work items run in a process pool driven from asyncio; results come back in
submission order whatever the completion order, so output is deterministic.
"""

from __future__ import annotations

import asyncio
import time
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any

import structlog

log = structlog.get_logger(__name__)


async def gather_points[T](
    fn: Callable[..., T],
    arguments: Sequence[tuple[Any, ...]],
    jobs: int = 1,
) -> list[T]:
    """Evaluate ``fn(*args)`` for every args tuple; jobs=1 runs inline."""
    start_time = time.monotonic()
    if jobs <= 1 or len(arguments) <= 1:
        results = [fn(*args) for args in arguments]
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            tasks = [loop.run_in_executor(pool, fn, *args) for args in arguments]
            results = list(await asyncio.gather(*tasks))
    log.debug(
        "Points evaluated",
        fn=getattr(fn, "__name__", repr(fn)),
        points=len(arguments),
        jobs=jobs,
        elapsed_ms=round((time.monotonic() - start_time) * 1000, 2),
    )
    return results


def run_points[T](
    fn: Callable[..., T],
    arguments: Sequence[tuple[Any, ...]],
    jobs: int = 1,
) -> list[T]:
    """Synchronous entry point for ``gather_points``."""
    return asyncio.run(gather_points(fn, arguments, jobs))
