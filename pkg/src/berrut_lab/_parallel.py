import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "BERRUT_LAB_THREADS"


def max_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        value = int(raw)
    except ValueError:
        value = os.cpu_count() or 1
    return max(1, value)


def parallel_map(func, items):
    """Ordered map over a thread pool; the compiled kernels release the GIL."""
    items = list(items)
    workers = min(max_threads(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
