"""
Chunked thread-parallel execution.

Work is cut into fixed-size slices before any thread is started, so the
arithmetic done per slice never depends on the number of workers. Each task
writes only its own slice of the output.
"""

from collections.abc import Callable

from joblib import Parallel, delayed

DEFAULT_CHUNK = 256


def chunk_slices(n_items: int, chunk: int = DEFAULT_CHUNK) -> list[slice]:
    """Split ``range(n_items)`` into consecutive slices of at most ``chunk`` items."""
    if chunk < 1:
        raise ValueError("chunk must be >= 1")
    return [slice(start, min(start + chunk, n_items)) for start in range(0, n_items, chunk)]


def run_chunked(
    n_items: int,
    task: Callable[[slice], None],
    threads: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> None:
    """
    Run ``task`` over every slice of ``range(n_items)``.

    Args:
        n_items: Number of items to cover.
        task: Callable receiving a slice; must write results for that slice only.
        threads: Parallelism width (1 runs inline).
        chunk: Slice size, independent of ``threads``.
    """
    slices = chunk_slices(n_items, chunk)
    if threads <= 1 or len(slices) <= 1:
        for part in slices:
            task(part)
        return

    Parallel(n_jobs=threads, prefer="threads")(delayed(task)(part) for part in slices)
