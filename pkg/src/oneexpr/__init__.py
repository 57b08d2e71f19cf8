"""oneexpr: enumerate, sample, and minimize formulas built from the literal 1.

The objects of study are binary expression trees whose leaves are all 1
and whose internal nodes are +, * and ^ (with 1 never an operand of * or
^).  The package counts the representations of each integer exactly,
draws them uniformly at random, finds minimal-length representations,
estimates how fast the counting sequences grow, and emits "book" files
of minimal formulas in stack-friendly postfix.  The ``oneexpr`` console
script exposes all of it.
"""

from .formula import (
    A,
    AE,
    AM,
    AME,
    OPSETS,
    CapExceededError,
    Formula,
    FormulaError,
    InfixSyntaxError,
    ONE,
    OneAsOperandError,
    Op,
    OpSet,
    ParseError,
    StackUnderflowError,
    TrailingOperandsError,
    UnknownTokenError,
    add,
    all_formulas,
    brute_force_counts,
    eval_postfix_with_depth,
    evaluate,
    from_infix,
    from_postfix,
    leaf_count,
    min_memory_postfix,
    mul,
    opset_name,
    power,
    representations,
    strahler,
    to_infix,
    to_postfix,
    token_length,
)
from .counting import CountTable, build_count_table, catalan, divisor_splits, power_splits
from .sampling import RandomSource, sample_formula, sample_many
from .shortest import ShortestTable, build_shortest_table
from .growth import GrowthEstimate, estimate_growth
from .books import (
    BadMagicError,
    BookSpec,
    BookSummary,
    CorruptRecordError,
    VersionMismatchError,
    load_table,
    save_table,
    write_book,
)
from .plots import save_growth_figure

__version__ = "0.1.0"
