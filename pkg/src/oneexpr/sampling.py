"""Uniform random generation of formula representations.

A count table turns sampling into weighted selection: a representation
of n is a root split plus representations of the two parts, so drawing
one uniform integer below total(n) and locating it in the concatenated
blocks of (root operation, split) weights picks the root with exactly
the right bias; recursing on both parts completes the formula.  Every
representation ends up with probability exactly 1/total(n).

Block order is fixed (additive splits by ascending k, then divisor
splits by ascending i, then power splits by ascending j) and each node
consumes exactly one draw in depth-first, left-before-right order, so a
seed fully determines the output.
"""

from __future__ import annotations

import random

from .counting import CountTable, divisor_splits, power_splits
from .formula import Formula, ONE, Op

__all__ = ["RandomSource", "sample_formula", "sample_many"]

_SEED_BITS = 64


class RandomSource:
    """Seeded stream of exactly uniform integer draws.

    ``randbelow(m)`` rejection-samples fixed-width bit draws, so there is
    no modulo bias at any size of m.  Same seed, same stream.
    """

    def __init__(self, seed: int):
        if not 0 <= seed < (1 << _SEED_BITS):
            raise ValueError(f"seed must be an unsigned {_SEED_BITS}-bit integer")
        self._getrandbits = random.Random(seed).getrandbits

    def randbelow(self, m: int) -> int:
        if m <= 0:
            raise ValueError("m must be positive")
        k = m.bit_length()
        r = self._getrandbits(k)
        while r >= m:
            r = self._getrandbits(k)
        return r


def _splits(table: CountTable, n: int):
    """(op, left value, right value, weight) blocks for n, in canonical order."""
    total = table.total
    if Op.ADD in table.ops:
        for k in range(1, n):
            yield Op.ADD, k, n - k, total[k] * total[n - k]
    if Op.MUL in table.ops:
        for i, j in divisor_splits(n):
            yield Op.MUL, i, j, total[i] * total[j]
    if Op.POW in table.ops:
        for i, j in power_splits(n):
            yield Op.POW, i, j, total[i] * total[j]


def sample_formula(table: CountTable, n: int, rng: RandomSource) -> Formula:
    """One formula for n, uniform over all representations in table.ops."""
    table.check_index(n)
    if n == 1:
        return ONE
    draw = rng.randbelow(table.total[n])
    for op, left, right, weight in _splits(table, n):
        if draw < weight:
            return Formula(
                op, sample_formula(table, left, rng), sample_formula(table, right, rng)
            )
        draw -= weight
    raise AssertionError(f"split weights for n={n} do not sum to total")


def sample_many(table: CountTable, n: int, count: int, seed: int) -> list[Formula]:
    """``count`` independent uniform samples, deterministic in ``seed``."""
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = RandomSource(seed)
    return [sample_formula(table, n, rng) for _ in range(count)]
