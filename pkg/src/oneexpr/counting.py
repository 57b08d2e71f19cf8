"""Exact count tables for ones-only formula representations.

total(n) counts the formulas over a given operation alphabet that
evaluate to n, split by root operation.  Everything follows from the
convolution over splits of n: an addition-rooted formula is an ordered
pair summing to n, a multiplication-rooted one an ordered pair of proper
divisors, a power-rooted one an exact base/exponent pair, each weighted
by the counts of its parts.  Counts are exact big integers throughout;
they grow like (4.13...)^n, far past machine words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .formula import Op, OpSet, check_opset, opset_name

__all__ = [
    "CountTable",
    "build_count_table",
    "divisor_splits",
    "power_splits",
    "int_nth_root",
    "catalan",
]


def catalan(k: int) -> int:
    """The k-th Catalan number (2k)!/(k!(k+1)!); counts binary trees with
    k+1 leaves, hence pure-addition representations of n are catalan(n-1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return math.comb(2 * k, k) // (k + 1)


def divisor_splits(n: int) -> list[tuple[int, int]]:
    """Ordered factorizations (i, n//i) with both parts >= 2, ascending i."""
    if n < 4:
        return []
    small = [i for i in range(2, math.isqrt(n) + 1) if n % i == 0]
    splits = [(i, n // i) for i in small]
    for i in reversed(small):
        j = n // i
        if j != i:
            splits.append((j, i))
    return splits


def int_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) by integer Newton iteration; no floating point."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if k == 1 or n in (0, 1):
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # 2^ceil(bits/k) >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def power_splits(n: int) -> list[tuple[int, int]]:
    """Exact-power factorizations (i, j) with i**j == n, i, j >= 2,
    ascending j.  Roots are extracted and verified in integer arithmetic."""
    if n < 4:
        return []
    splits = []
    for j in range(2, n.bit_length()):
        i = int_nth_root(n, j)
        if i >= 2 and i**j == n:
            splits.append((i, j))
    return splits


@dataclass
class CountTable:
    """Representation counts for n = 1..n_max over one operation set.

    Lists are indexed directly by n (slot 0 unused).  For every n >= 2,
    total[n] == add_rooted[n] + mul_rooted[n] + pow_rooted[n]; n = 1 has
    total 1 (the bare leaf) and zero in every root split.  Splits for
    operations outside ``ops`` are identically zero.
    """

    ops: OpSet
    n_max: int
    total: list[int]
    add_rooted: list[int]
    mul_rooted: list[int]
    pow_rooted: list[int]

    def check_index(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise LookupError(
                f"n={n} outside table range 1..{self.n_max} (ops={opset_name(self.ops)})"
            )
        return n

    def totals(self) -> list[int]:
        """total(1..n_max) as a plain list (input shape for growth fits)."""
        return self.total[1:]


def build_count_table(ops: OpSet, n_max: int, base: CountTable | None = None) -> CountTable:
    """Fill a CountTable bottom-up for n = 1..n_max.

    ``base`` (same ops, any size) seeds the arrays so a table can be
    extended monotonically instead of rebuilt.  The addition convolution
    dominates at Theta(n_max^2) big-integer multiply-adds; the symmetric
    half-scan below halves the constant, nothing fancier is warranted.
    """
    ops = check_opset(ops)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if base is not None and frozenset(base.ops) != ops:
        raise ValueError("base table has a different operation set")
    if base is not None and base.n_max >= n_max:
        k = n_max + 1
        return CountTable(
            ops,
            n_max,
            base.total[:k],
            base.add_rooted[:k],
            base.mul_rooted[:k],
            base.pow_rooted[:k],
        )

    total = [0] * (n_max + 1)
    add_r = [0] * (n_max + 1)
    mul_r = [0] * (n_max + 1)
    pow_r = [0] * (n_max + 1)
    total[1] = 1
    start = 2
    if base is not None:
        w = base.n_max + 1
        total[:w] = base.total
        add_r[:w] = base.add_rooted
        mul_r[:w] = base.mul_rooted
        pow_r[:w] = base.pow_rooted
        start = w

    use_mul = Op.MUL in ops
    use_pow = Op.POW in ops
    for n in range(start, n_max + 1):
        half = n // 2
        acc = 0
        for k in range(1, half + 1):
            acc += total[k] * total[n - k]
        acc *= 2
        if n % 2 == 0:
            acc -= total[half] * total[half]
        add_r[n] = acc
        if use_mul:
            mul_r[n] = sum(total[i] * total[j] for i, j in divisor_splits(n))
        if use_pow:
            pow_r[n] = sum(total[i] * total[j] for i, j in power_splits(n))
        total[n] = add_r[n] + mul_r[n] + pow_r[n]
    return CountTable(ops, n_max, total, add_r, mul_r, pow_r)
