"""Subsets of range(n) as int bitmasks."""

from __future__ import annotations

from typing import Iterable


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def subset_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical subset order: by size, then lexicographic element list."""
    return popcount(mask), elements_of(mask)


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1
