"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's own arithmetic and
enumeration so that tests cross two independent routes.
"""

from __future__ import annotations

import random
from functools import lru_cache

import pytest

from sizedhedonic import Game, Partition, SizeBounds, feasible_partition_exists


def random_game(
    rng: random.Random,
    n: int,
    low: int = -3,
    high: int = 3,
    symmetric: bool = False,
    nonzero: bool = False,
    nonneg: bool = False,
) -> Game:
    lo = max(low, 0) if nonneg else low
    choices = [w for w in range(lo, high + 1) if not (nonzero and w == 0)]
    vals = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1) if symmetric else range(1, n + 1):
            if a == b:
                continue
            w = rng.choice(choices)
            vals[(a, b)] = w
            if symmetric:
                vals[(b, a)] = w
    return Game(n, vals, symmetric=symmetric)


def random_feasible_bounds(rng: random.Random, n: int) -> SizeBounds:
    while True:
        lo = rng.randint(1, n)
        hi = rng.randint(lo, n)
        if feasible_partition_exists(n, SizeBounds(lo, hi)):
            return SizeBounds(lo, hi)


def random_feasible_partition(rng: random.Random, n: int, bounds: SizeBounds) -> Partition:
    sizes = []
    remaining = n
    while remaining:
        options = [
            s
            for s in range(bounds.lower, min(bounds.upper, remaining) + 1)
            if remaining - s == 0
            or feasible_partition_exists(remaining - s, bounds)
        ]
        size = rng.choice(options)
        sizes.append(size)
        remaining -= size
    agents = list(range(1, n + 1))
    rng.shuffle(agents)
    coalitions = []
    start = 0
    for size in sizes:
        coalitions.append(agents[start : start + size])
        start += size
    return Partition(coalitions)


def dumb_set_partitions(items: list[int]):
    """Every set partition of ``items``, by plain insertion recursion."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in dumb_set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


@lru_cache(maxsize=None)
def sizes_decomposable(n: int, lo: int, hi: int) -> bool:
    """Whether n splits into parts within [lo, hi]; exhaustive recursion."""
    if n == 0:
        return True
    return any(sizes_decomposable(n - s, lo, hi) for s in range(lo, min(hi, n) + 1))


@lru_cache(maxsize=None)
def sizes_decomposable_k(n: int, k: int, lo: int, hi: int) -> bool:
    """Whether n splits into exactly k parts within [lo, hi]."""
    if k == 0:
        return n == 0
    return any(
        sizes_decomposable_k(n - s, k - 1, lo, hi) for s in range(lo, min(hi, n) + 1)
    )


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0A1)
