"""Process-pool fan-out for independent backtest runs.

Wraps concurrent.futures so a failing job is logged with its name before the
error propagates, and results always come back in submission order.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import TypeVar

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(
    fn: Callable[[T], R],
    items: Sequence[T],
    workers: int = 1,
    name: str | None = None,
) -> list[R]:
    """Apply ``fn`` to every item, in parallel when ``workers > 1``.

    ``fn`` and the items must be picklable for the pooled path. Output order
    matches input order regardless of which worker finishes first.

    Args:
        fn: Module-level function to call per item.
        items: Work items.
        workers: Process count; 1 or less runs inline in this process.
        name: Label used when logging failures.

    Returns:
        One result per item.

    Example:
        results = map_ordered(run_job, jobs, workers=4, name="backtest-grid")
    """
    task_name = name or "unnamed"
    workers = min(workers, len(items))
    if workers <= 1:
        results = []
        for i, item in enumerate(items):
            try:
                results.append(fn(item))
            except Exception:
                log.exception(f"Task '{task_name}' failed on item {i}")
                raise
        return results

    log.debug(f"Task '{task_name}': {len(items)} items on {workers} processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, item) for item in items]
        results = []
        for i, future in enumerate(futures):
            try:
                results.append(future.result())
            except Exception:
                log.exception(f"Task '{task_name}' failed on item {i}")
                for pending in futures[i + 1 :]:
                    pending.cancel()
                raise
        return results
