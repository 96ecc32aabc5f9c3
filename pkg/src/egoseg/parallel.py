"""Order-preserving parallel map for pure per-item work."""

from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, threads):
    """Apply fn to every item, preserving input order in the result list.

    Results never depend on thread count; only pure per-item functions
    belong here."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
