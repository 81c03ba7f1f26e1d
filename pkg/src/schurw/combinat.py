"""Partition enumeration and integer-vector helpers."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n (weakly decreasing, positive parts), largest first."""
    if n == 0:
        return ((),)
    if max_part is None or max_part > n:
        max_part = n
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def strict_partitions(n: int, max_part: int | None = None) -> tuple:
    if n == 0:
        return ((),)
    if max_part is None or max_part > n:
        max_part = n
    out = []
    for first in range(max_part, 0, -1):
        for rest in strict_partitions(n - first, first - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_upto(n: int) -> list:
    return [lam for d in range(n + 1) for lam in partitions(d)]


def strict_partitions_upto(n: int) -> list:
    return [lam for d in range(n + 1) for lam in strict_partitions(d)]


def int_vectors(max_len: int, lo: int, hi: int) -> Iterator[tuple]:
    """Every tuple of length <= max_len with entries in [lo, hi]."""
    for length in range(max_len + 1):
        yield from product(range(lo, hi + 1), repeat=length)


def is_partition(lam: Sequence[int]) -> bool:
    return all(x >= 1 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def is_strict(lam: Sequence[int]) -> bool:
    return all(x >= 1 for x in lam) and all(a > b for a, b in zip(lam, lam[1:]))


def drop_trailing_zeros(lam: Sequence[int]) -> tuple:
    lam = list(lam)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def parse_intvector(text: str) -> tuple:
    text = text.strip()
    if text in ("", "()", "[]"):
        return ()
    return tuple(int(x) for x in text.strip("()[]").split(",") if x.strip())


def unit(length: int, i: int, value: int = 1) -> tuple:
    v = [0] * length
    v[i] = value
    return tuple(v)


def add_vec(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def delete(lam: Sequence[int], *idx: int) -> tuple:
    """Remove the components at the given 0-based positions."""
    skip = set(idx)
    return tuple(x for i, x in enumerate(lam) if i not in skip)
