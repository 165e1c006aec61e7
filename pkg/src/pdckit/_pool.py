"""Minimal work pool: ordered map over independent items.

Results are returned in input order and every item carries its own seed
where randomness is involved, so the outcome is identical for any worker
count."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def pmap(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
