"""Order-preserving map over per-criterion work items."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from src.config import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(func: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> list[R]:
    """Apply ``func`` to every item; results keep the input order.

    Runs on a thread pool when ``workers`` (default: settings.workers) exceeds 1.
    """
    workers = settings.workers if workers is None else workers
    if workers > 1 and len(items) > 1:
        logger.debug("Mapping %d items on %d threads", len(items), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))
    return [func(item) for item in items]
