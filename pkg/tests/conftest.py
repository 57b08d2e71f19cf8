import pytest
from hypothesis import strategies as st

from oneexpr import (
    AME,
    Formula,
    ONE,
    Op,
    OPSETS,
    build_count_table,
    build_shortest_table,
)

# Deterministic operation order for strategies.
OP_ORDER = (Op.ADD, Op.MUL, Op.POW)


@st.composite
def formula_trees(draw, ops=AME, max_leaves=16):
    """Random valid formula with a bounded leaf count.

    Splits a leaf budget top-down; * and ^ need at least two leaves per
    side, so they are only offered when the budget allows.
    """
    ops = frozenset(ops)

    def build(budget: int) -> Formula:
        if budget == 1:
            return ONE
        allowed = [op for op in OP_ORDER if op in ops and (op is Op.ADD or budget >= 4)]
        op = draw(st.sampled_from(allowed))
        if op is Op.ADD:
            left = draw(st.integers(1, budget - 1))
        else:
            left = draw(st.integers(2, budget - 2))
        return Formula(op, build(left), build(budget - left))

    return build(draw(st.integers(1, max_leaves)))


@pytest.fixture(scope="session")
def count_tables_12():
    """Count tables to n=12 for every operation alphabet."""
    return {name: build_count_table(ops, 12) for name, ops in OPSETS.items()}


@pytest.fixture(scope="session")
def ame_shortest_500():
    return build_shortest_table(AME, 500)
