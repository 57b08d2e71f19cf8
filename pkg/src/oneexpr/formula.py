"""Arithmetic formulas built entirely from the literal 1.

A formula is a binary tree: every leaf is the literal 1, every internal
node is one of the fan-in-2 operations +, * or ^.  Bare 1 is rejected as
an operand of * and ^ (since x*1 == x == x^1, admitting it would give
every value unboundedly many spellings); construction enforces this, so
invalid trees are unrepresentable.

Trees serialize to postfix (reverse Polish) text over the four-character
alphabet ``1+*^`` and to fully parenthesized infix text.  Postfix strings
evaluate on a plain stack machine; the minimum stack size needed is the
Strahler number of the tree when operand order is free, and
:func:`min_memory_postfix` emits the operand order that achieves the
minimum subject to ^ never being swapped.

All functions walk trees with explicit stacks, so arbitrarily deep
formulas (e.g. the pure-addition spelling of a large n) are safe.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterator, TypeVar

__all__ = [
    "Op",
    "OpSet",
    "A",
    "AM",
    "AME",
    "AE",
    "OPSETS",
    "opset_name",
    "Formula",
    "ONE",
    "add",
    "mul",
    "power",
    "FormulaError",
    "CapExceededError",
    "ParseError",
    "UnknownTokenError",
    "StackUnderflowError",
    "TrailingOperandsError",
    "OneAsOperandError",
    "InfixSyntaxError",
    "evaluate",
    "leaf_count",
    "token_length",
    "to_postfix",
    "from_postfix",
    "to_infix",
    "from_infix",
    "strahler",
    "min_memory_postfix",
    "eval_postfix_with_depth",
    "brute_force_counts",
    "all_formulas",
    "representations",
]


class Op(enum.Enum):
    """The three binary operations; the enum value is the postfix token."""

    ADD = "+"
    MUL = "*"
    POW = "^"


# An operation alphabet is a frozen set of Op that always contains ADD
# (without addition nothing beyond 1 is representable).
OpSet = frozenset

A: OpSet = frozenset({Op.ADD})
AM: OpSet = frozenset({Op.ADD, Op.MUL})
AME: OpSet = frozenset({Op.ADD, Op.MUL, Op.POW})
AE: OpSet = frozenset({Op.ADD, Op.POW})

OPSETS: dict[str, OpSet] = {"a": A, "am": AM, "ame": AME, "ae": AE}
_OPSET_NAMES = {ops: name for name, ops in OPSETS.items()}


def opset_name(ops: OpSet) -> str:
    """Canonical short name ('a', 'am', 'ame', 'ae') of an operation set."""
    try:
        return _OPSET_NAMES[frozenset(ops)]
    except KeyError:
        raise ValueError(f"not a supported operation set: {ops!r}") from None


def check_opset(ops: OpSet) -> OpSet:
    ops = frozenset(ops)
    if Op.ADD not in ops or not ops <= AME:
        raise ValueError("operation set must be a subset of {+,*,^} containing +")
    return ops


class FormulaError(Exception):
    """Base class for all formula-domain errors."""

    code = "formula-error"


class CapExceededError(FormulaError):
    """An intermediate or final value exceeded the caller's value cap."""

    code = "cap-exceeded"


class ParseError(FormulaError, ValueError):
    """Base class for text-notation errors."""

    code = "syntax-error"


class UnknownTokenError(ParseError):
    code = "unknown-token"


class StackUnderflowError(ParseError):
    code = "stack-underflow"


class TrailingOperandsError(ParseError):
    code = "trailing-operands"


class OneAsOperandError(ParseError):
    """Bare 1 used as an operand of * or ^."""

    code = "one-as-operand"


class InfixSyntaxError(ParseError):
    """Malformed or ambiguous infix text (this grammar has no precedence)."""

    code = "bad-infix"


@dataclass(frozen=True, slots=True)
class Formula:
    """A node of a ones-only formula tree.

    ``op is None`` marks the leaf 1 (use the shared constant ``ONE``);
    otherwise ``left`` and ``right`` are the operand subtrees.  Instances
    are immutable and safe to share; equality is structural.
    """

    op: Op | None
    left: Formula | None = None
    right: Formula | None = None

    def __post_init__(self) -> None:
        if self.op is None:
            if self.left is not None or self.right is not None:
                raise ValueError("leaf must not have children")
        else:
            if self.left is None or self.right is None:
                raise ValueError(f"{self.op.value} node needs two operands")
            if self.op is not Op.ADD and (self.left.op is None or self.right.op is None):
                raise OneAsOperandError(
                    f"bare 1 may not be an operand of {self.op.value}"
                )

    @property
    def is_one(self) -> bool:
        return self.op is None

    def __str__(self) -> str:
        return to_infix(self)

    def __repr__(self) -> str:
        return f"Formula[{to_postfix(self)}]"


ONE = Formula(None)


def add(left: Formula, right: Formula) -> Formula:
    return Formula(Op.ADD, left, right)


def mul(left: Formula, right: Formula) -> Formula:
    return Formula(Op.MUL, left, right)


def power(base: Formula, exponent: Formula) -> Formula:
    return Formula(Op.POW, base, exponent)


_T = TypeVar("_T")


def _fold(f: Formula, leaf: _T, combine: Callable[[Formula, _T, _T], _T]) -> _T:
    """Bottom-up reduction with an explicit stack (deep trees welcome)."""
    results: list[_T] = []
    work: list[tuple[Formula, bool]] = [(f, False)]
    while work:
        node, ready = work.pop()
        if node.op is None:
            results.append(leaf)
        elif ready:
            right = results.pop()
            left = results.pop()
            results.append(combine(node, left, right))
        else:
            work.append((node, True))
            work.append((node.right, False))
            work.append((node.left, False))
    return results[0]


def _checked_apply(op: Op, left: int, right: int, value_cap: int | None) -> int:
    """Apply one operation, raising CapExceededError past the cap.

    The cap applies to every intermediate value, which keeps towers such
    as 2^2^2^... from ever being materialized: with base >= 2 the result
    is at least 2**right, so a cheap bit-length test rejects first.
    """
    if op is Op.ADD:
        value = left + right
    elif op is Op.MUL:
        value = left * right
    else:
        if value_cap is not None and right > value_cap.bit_length():
            raise CapExceededError("power exceeds value cap")
        value = left**right
    if value_cap is not None and value > value_cap:
        raise CapExceededError("value exceeds cap")
    return value


def evaluate(f: Formula, value_cap: int | None = None) -> int:
    """Exact integer value of a formula.

    With ``value_cap`` set, raises :class:`CapExceededError` as soon as any
    intermediate value exceeds it (values only grow toward the root, so an
    oversized subtree can never be part of an in-range formula).
    """
    return _fold(f, 1, lambda node, l, r: _checked_apply(node.op, l, r, value_cap))


def leaf_count(f: Formula) -> int:
    return _fold(f, 1, lambda _node, l, r: l + r)


def token_length(f: Formula) -> int:
    """Postfix token count; equals 2*leaf_count - 1 for any binary tree."""
    return 2 * leaf_count(f) - 1


def strahler(f: Formula) -> int:
    """Strahler rank: leaves are 1; a node is max of its children's ranks
    when they differ, else one more."""
    return _fold(f, 1, lambda _node, l, r: max(l, r) if l != r else l + 1)


def to_postfix(f: Formula) -> str:
    """Serialize left subtree, then right subtree, then the operator."""
    out: list[str] = []
    work: list[tuple[str, Formula]] = [("visit", f)]
    while work:
        action, node = work.pop()
        if action == "emit":
            out.append(node.op.value)
        elif node.op is None:
            out.append("1")
        else:
            work.append(("emit", node))
            work.append(("visit", node.right))
            work.append(("visit", node.left))
    return "".join(out)


def to_infix(f: Formula) -> str:
    """Fully parenthesized infix; a bare leaf prints as 1 without parens."""

    def combine(node: Formula, l: str, r: str) -> str:
        lt = l if node.left.op is None else f"({l})"
        rt = r if node.right.op is None else f"({r})"
        return f"{lt}{node.op.value}{rt}"

    return _fold(f, "1", combine)


_TOKEN_OPS = {op.value: op for op in Op}


def _postfix_tokens(s: str) -> Iterator[tuple[int, str]]:
    for pos, ch in enumerate(s):
        if ch.isspace():
            continue
        if ch != "1" and ch not in _TOKEN_OPS:
            raise UnknownTokenError(f"unknown token {ch!r} at position {pos}")
        yield pos, ch


def from_postfix(s: str) -> Formula:
    """Parse postfix text into the unique formula tree it serializes.

    Whitespace between tokens is accepted; the canonical rendering has
    none.  Raises UnknownTokenError, StackUnderflowError,
    TrailingOperandsError or OneAsOperandError on invalid input.
    """
    stack: list[Formula] = []
    for pos, tok in _postfix_tokens(s):
        if tok == "1":
            stack.append(ONE)
        else:
            if len(stack) < 2:
                raise StackUnderflowError(
                    f"operator {tok!r} at position {pos} needs two operands"
                )
            right = stack.pop()
            left = stack.pop()
            stack.append(Formula(_TOKEN_OPS[tok], left, right))
    if not stack:
        raise ParseError("empty postfix input")
    if len(stack) > 1:
        raise TrailingOperandsError(f"{len(stack)} items left on the stack")
    return stack[0]


def eval_postfix_with_depth(
    s: str, value_cap: int | None = None
) -> tuple[int, int]:
    """Run postfix text on a stack machine; return (value, max stack depth).

    Validates exactly like :func:`from_postfix`.  Only the leaf evaluates
    to 1, so a popped value of 1 under * or ^ is necessarily the bare leaf.
    """
    stack: list[int] = []
    deepest = 0
    for pos, tok in _postfix_tokens(s):
        if tok == "1":
            stack.append(1)
            deepest = max(deepest, len(stack))
        else:
            if len(stack) < 2:
                raise StackUnderflowError(
                    f"operator {tok!r} at position {pos} needs two operands"
                )
            op = _TOKEN_OPS[tok]
            right = stack.pop()
            left = stack.pop()
            if op is not Op.ADD and (left == 1 or right == 1):
                raise OneAsOperandError(
                    f"bare 1 may not be an operand of {tok!r} (position {pos})"
                )
            stack.append(_checked_apply(op, left, right, value_cap))
    if not stack:
        raise ParseError("empty postfix input")
    if len(stack) > 1:
        raise TrailingOperandsError(f"{len(stack)} items left on the stack")
    return stack[0], deepest


def from_infix(s: str) -> Formula:
    """Parse fully parenthesized infix text, e.g. ``(1+(1+1))^((1+1)+1)``.

    Operands are ``1`` or a parenthesized expression; each parenthesis
    level holds at most one operator.  There are no precedence rules, so
    text like ``1+1+1`` or ``(1+1)^(1+1)+1`` is rejected as ambiguous.
    """
    # One frame per parenthesis level: [operand_so_far, pending_op, had_op].
    frame: list = [None, None, False]
    stack: list[list] = []

    def place(operand: Formula, pos: int) -> None:
        if frame[1] is not None:
            frame[0] = Formula(frame[1], frame[0], operand)
            frame[1] = None
            frame[2] = True
        elif frame[0] is None:
            frame[0] = operand
        else:
            raise InfixSyntaxError(f"operand follows operand at position {pos}")

    for pos, ch in enumerate(s):
        if ch.isspace():
            continue
        if ch == "1":
            place(ONE, pos)
        elif ch == "(":
            stack.append(frame)
            frame = [None, None, False]
        elif ch == ")":
            if not stack:
                raise InfixSyntaxError(f"unmatched ')' at position {pos}")
            if frame[0] is None or frame[1] is not None:
                raise InfixSyntaxError(f"incomplete expression before ')' at position {pos}")
            inner = frame[0]
            frame = stack.pop()
            place(inner, pos)
        elif ch in _TOKEN_OPS:
            if frame[0] is None:
                raise InfixSyntaxError(f"operator {ch!r} lacks a left operand (position {pos})")
            if frame[2] or frame[1] is not None:
                raise InfixSyntaxError(
                    f"second operator {ch!r} at one parenthesis level (position {pos}); "
                    "this grammar has no precedence, parenthesize explicitly"
                )
            frame[1] = _TOKEN_OPS[ch]
        else:
            raise UnknownTokenError(f"unknown token {ch!r} at position {pos}")
    if stack:
        raise InfixSyntaxError("unclosed '('")
    if frame[1] is not None:
        raise InfixSyntaxError("dangling operator at end of input")
    if frame[0] is None:
        raise InfixSyntaxError("empty infix input")
    return frame[0]


def _stack_costs(f: Formula) -> dict[int, int]:
    """Minimum evaluation stack depth per node, keyed by id.

    A leaf costs 1.  Evaluating child X first, then Y with X's result
    parked on the stack, costs max(cost(X), cost(Y)+1); + and * may pick
    the cheaper order, ^ must evaluate its base first.
    """
    costs: dict[int, int] = {}
    work: list[tuple[Formula, bool]] = [(f, False)]
    while work:
        node, ready = work.pop()
        if node.op is None:
            costs[id(node)] = 1
        elif ready:
            cl = costs[id(node.left)]
            cr = costs[id(node.right)]
            if node.op is Op.POW:
                costs[id(node)] = max(cl, cr + 1)
            else:
                costs[id(node)] = max(cl, cr) if cl != cr else cl + 1
        elif id(node) not in costs:
            work.append((node, True))
            work.append((node.right, False))
            work.append((node.left, False))
    return costs


def min_memory_postfix(f: Formula) -> tuple[str, int]:
    """Postfix emission reordered for minimal stack depth.

    Operands of + and * are swapped so the deeper subtree is evaluated
    first (ties keep the left operand first); operands of ^ are never
    swapped, since a stack evaluator would then compute the wrong value.
    Returns the token string and the depth it achieves.
    """
    costs = _stack_costs(f)
    out: list[str] = []
    work: list[tuple[str, Formula]] = [("visit", f)]
    while work:
        action, node = work.pop()
        if action == "emit":
            out.append(node.op.value)
        elif node.op is None:
            out.append("1")
        else:
            first, second = node.left, node.right
            if node.op is not Op.POW and costs[id(second)] > costs[id(first)]:
                first, second = second, first
            work.append(("emit", node))
            work.append(("visit", second))
            work.append(("visit", first))
    return "".join(out), costs[id(f)]


def _level_buckets(
    ops: OpSet, max_leaves: int, value_cap: int
) -> list[dict[int, list[Formula]]]:
    """All valid formulas over ``ops``, grouped by leaf count then value.

    buckets[k][v] lists every formula with exactly k leaves and value v
    <= value_cap.  Values never shrink toward the root, so discarding
    oversized subtrees loses nothing; this is what makes exhaustive
    generation terminate even with ^ in the alphabet.
    """
    ops = check_opset(ops)
    buckets: list[dict[int, list[Formula]]] = [dict() for _ in range(max_leaves + 1)]
    if max_leaves >= 1 and value_cap >= 1:
        buckets[1] = {1: [ONE]}
    for k in range(2, max_leaves + 1):
        grown: dict[int, list[Formula]] = defaultdict(list)
        for i in range(1, k):
            for lv, lefts in buckets[i].items():
                for rv, rights in buckets[k - i].items():
                    for op in Op:
                        if op not in ops:
                            continue
                        if op is not Op.ADD and (lv == 1 or rv == 1):
                            continue
                        try:
                            v = _checked_apply(op, lv, rv, value_cap)
                        except CapExceededError:
                            continue
                        pairs = grown[v]
                        for lf in lefts:
                            for rf in rights:
                                pairs.append(Formula(op, lf, rf))
        buckets[k] = dict(grown)
    return buckets


def brute_force_counts(ops: OpSet, max_tokens: int, value_cap: int) -> dict[int, int]:
    """Count representations per value by generating every valid formula.

    Exhaustively builds all formulas over ``ops`` with at most
    ``max_tokens`` postfix tokens whose value (including every
    intermediate) stays within ``value_cap``, and tallies them by value.
    Independent of the counting recurrences: this constructs actual trees.
    """
    if max_tokens < 1 or max_tokens % 2 == 0:
        raise ValueError("max_tokens must be odd and >= 1")
    if value_cap < 1:
        raise ValueError("value_cap must be >= 1")
    counts: dict[int, int] = defaultdict(int)
    for level in _level_buckets(ops, (max_tokens + 1) // 2, value_cap):
        for v, forms in level.items():
            counts[v] += len(forms)
    return dict(counts)


def all_formulas(ops: OpSet, max_tokens: int, value_cap: int) -> Iterator[Formula]:
    """Yield every valid formula within the token and value bounds."""
    if max_tokens < 1 or max_tokens % 2 == 0:
        raise ValueError("max_tokens must be odd and >= 1")
    for level in _level_buckets(ops, (max_tokens + 1) // 2, value_cap):
        for forms in level.values():
            yield from forms


def representations(ops: OpSet, n: int) -> list[Formula]:
    """Every formula over ``ops`` that evaluates to n (exhaustive).

    A formula's value is at least its leaf count, so 2n-1 tokens bound
    the search.  Feasible only while the total count is modest.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    found: list[Formula] = []
    for level in _level_buckets(ops, n, n):
        found.extend(level.get(n, ()))
    return found
