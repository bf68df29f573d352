"""Small shared helpers: the data-parallel map and number formatting."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor


def thread_cap():
    """Worker count for grid sweeps, read from ``BOOLSD_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("BOOLSD_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map; runs on a thread pool when ``BOOLSD_THREADS > 1``."""
    items = list(items)
    n = thread_cap()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def fmt17(x):
    """17 significant digits, the CSV number format."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.17g}"


def jsonable(obj):
    """Recursively replace non-finite floats and numpy scalars so ``json`` emits strict JSON."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": jsonable(obj.real), "im": jsonable(obj.imag)}
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        obj = obj.item()
        if isinstance(obj, complex):
            return jsonable(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
    return obj
