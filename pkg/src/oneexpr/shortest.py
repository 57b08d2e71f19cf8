"""Minimal-length formulas by dynamic programming.

For each n up to a bound, find a formula of minimal postfix token count
(the integer's complexity under the chosen operation alphabet).  Working
bottom-up, the best formula for n is one token plus the best lengths of
the two parts under some split: (k, n-k) for +, proper divisor pairs for
*, exact base/exponent pairs for ^.  Subtrees of an optimal formula never
evaluate past n (every operation here is value-monotone in both
arguments), so value splits of n cover all candidates.

Ties are broken deterministically so that downstream book files are
byte-reproducible: + beats * beats ^ at equal length, and within one
operation the candidate with the smallest left argument wins.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Formula, ONE, Op, OpSet, check_opset, opset_name
from .counting import divisor_splits, power_splits

__all__ = ["ShortestTable", "build_shortest_table"]


@dataclass
class ShortestTable:
    """Minimal token lengths and witness formulas for n = 1..n_max.

    Lists are indexed by n (slot 0 unused).  Lengths are odd; a witness
    evaluates to its index and realizes the stored length.  Witnesses
    share subtrees (the tree for n reuses the stored trees of its parts).
    """

    ops: OpSet
    n_max: int
    lengths: list[int]
    witnesses: list[Formula]

    def check_index(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise LookupError(
                f"n={n} outside table range 1..{self.n_max} (ops={opset_name(self.ops)})"
            )
        return n

    def length(self, n: int) -> int:
        """Minimal postfix token count for n (its complexity)."""
        return self.lengths[self.check_index(n)]

    def formula(self, n: int) -> Formula:
        """A minimal witness for n (the deterministic tie-break choice)."""
        return self.witnesses[self.check_index(n)]


def build_shortest_table(
    ops: OpSet, n_max: int, base: ShortestTable | None = None
) -> ShortestTable:
    """Fill a ShortestTable bottom-up for n = 1..n_max.

    ``base`` (same ops) seeds the arrays for monotone extension.  The
    additive scan runs k = 1..n/2 only: the length metric is symmetric in
    the two parts even though the witness is not.
    """
    ops = check_opset(ops)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if base is not None and frozenset(base.ops) != ops:
        raise ValueError("base table has a different operation set")
    if base is not None and base.n_max >= n_max:
        k = n_max + 1
        return ShortestTable(ops, n_max, base.lengths[:k], base.witnesses[:k])

    lengths: list[int] = [0] * (n_max + 1)
    witnesses: list[Formula] = [None] * (n_max + 1)  # type: ignore[list-item]
    lengths[1] = 1
    witnesses[1] = ONE
    start = 2
    if base is not None:
        w = base.n_max + 1
        lengths[:w] = base.lengths
        witnesses[:w] = base.witnesses
        start = w

    use_mul = Op.MUL in ops
    use_pow = Op.POW in ops
    for n in range(start, n_max + 1):
        best = lengths[1] + lengths[n - 1]
        op, bx, by = Op.ADD, 1, n - 1
        for k in range(2, n // 2 + 1):
            c = lengths[k] + lengths[n - k]
            if c < best:
                best, bx, by = c, k, n - k
        if use_mul:
            for i, j in divisor_splits(n):
                if i > j:
                    break  # mirrored pairs repeat the same length
                c = lengths[i] + lengths[j]
                if c < best:
                    op, best, bx, by = Op.MUL, c, i, j
        if use_pow:
            for i, j in reversed(power_splits(n)):  # ascending base
                c = lengths[i] + lengths[j]
                if c < best:
                    op, best, bx, by = Op.POW, c, i, j
        lengths[n] = best + 1
        witnesses[n] = Formula(op, witnesses[bx], witnesses[by])
    return ShortestTable(ops, n_max, lengths, witnesses)
