"""
Parallel execution of count plans.

The assignment range is cut into disjoint contiguous slices; with more than one job the slices
run in a ProcessPoolExecutor driven from asyncio and their counts are added exactly.
"""

from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import config
from oracle.counting import count_slice
from oracle.plan import CountPlan
from performance import ResourceMonitor

logger = logging.getLogger(__name__)

LARGE_RUN = 10**6


def split_range(total: int, parts: int) -> List[Tuple[int, int]]:
    """`parts` near-equal contiguous slices of [0, total), empty ones dropped."""
    parts = max(1, min(parts, total))
    size, extra = divmod(total, parts)
    slices = []
    start = 0
    for index in range(parts):
        stop = start + size + (1 if index < extra else 0)
        if stop > start:
            slices.append((start, stop))
        start = stop
    return slices


async def count_slices(plan: CountPlan, slices: List[Tuple[int, int]], workers: int, chunk: int) -> int:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [
            loop.run_in_executor(executor, count_slice, plan, start, stop, chunk)
            for start, stop in slices
        ]
        results = await asyncio.gather(*futures)
    return sum(results)


def run_plan(plan: CountPlan, jobs: int = 1, chunk: Optional[int] = None) -> Tuple[int, float]:
    """(count, elapsed milliseconds); identical counts for every job count and chunk size."""
    monitor = ResourceMonitor(config)
    workers = monitor.worker_count(jobs)
    chunk = chunk or monitor.chunk_size(plan.num_entries, workers)
    total = plan.search_space
    monitor.start()
    if workers <= 1 or total <= chunk:
        count = count_slice(plan, 0, total, chunk)
    else:
        slices_per_job = getattr(config, "SLICES_PER_JOB", 4)
        slices = split_range(total, workers * slices_per_job)
        logger.debug(f"🚀 {len(slices)} slice(s) over {workers} worker(s), chunk {chunk}")
        count = asyncio.run(count_slices(plan, slices, workers, chunk))
    level = logging.INFO if total >= LARGE_RUN else logging.DEBUG
    stats = monitor.stop(f"alpha={plan.alpha} over F_{plan.p}: {count}/{total}", level)
    return count, stats["elapsed_s"] * 1000.0
