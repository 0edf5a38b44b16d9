"""
Sweep runner: independent experiment cells on a shared thread pool.

Each cell is an isolated run writing files tagged by its coordinates, so
workers share no mutable state. Results come back in submission order.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence, TypeVar

from fraclab.config.settings import settings
from fraclab.utils.xlogger import logger

Cell = TypeVar("Cell")


def resolve_threads(threads: Optional[int] = None) -> int:
    """--threads, then FRACLAB_THREADS (through settings), never below 1."""
    return max(1, int(threads if threads is not None else settings.THREADS))


def run_sweep(cells: Sequence[Cell], work: Callable[[Cell], Any], threads: Optional[int] = None) -> List[Any]:
    """
    Run ``work`` on every cell.

    A cell that raises yields a record {"cell": ..., "error": ...} instead of
    aborting the sweep.
    """
    workers = resolve_threads(threads)
    logger.info(f"Sweep of {len(cells)} cells on {workers} workers", category="runner")

    def guarded(cell):
        try:
            return work(cell)
        except Exception as e:
            logger.error(f"Cell {cell} failed: {type(e).__name__}: {e}", category="runner")
            return {"cell": cell, "error": f"{type(e).__name__}: {e}"}

    if workers == 1:
        return [guarded(cell) for cell in cells]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(guarded, cells))
