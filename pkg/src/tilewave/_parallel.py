import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    """Worker cap from ``TILEWAVE_THREADS`` (default: CPU count)."""
    env = os.environ.get("TILEWAVE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """``map`` over ``items`` on a thread pool; results keep input order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
