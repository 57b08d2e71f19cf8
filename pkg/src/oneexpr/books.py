"""Webbook emission and on-disk table snapshots.

A *book* is a plain-text report for one operation alphabet: a counts
section (n and its number of representations, up to K1) followed by a
formulas section (for each n up to K2, a minimal formula in its
memory-minimal postfix order, its token count, and the stack depth it
needs).  Output is deterministic byte-for-byte: tie-breaking upstream is
fixed, numbers print in full decimal, newlines are LF.

Table snapshots persist CountTable/ShortestTable instances so expensive
builds can be reloaded exactly (counts bit-exact, witnesses structurally
equal).  Files are versioned and validated on load; writes go to a
temporary file renamed into place, so concurrent readers never see a
partial file.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from typing import Union

from .counting import CountTable, build_count_table
from .formula import (
    OPSETS,
    Formula,
    OpSet,
    ParseError,
    check_opset,
    eval_postfix_with_depth,
    from_postfix,
    min_memory_postfix,
    opset_name,
    to_postfix,
)
from .shortest import ShortestTable, build_shortest_table

__all__ = [
    "BOOK_MAGIC",
    "TABLE_MAGIC",
    "FORMAT_VERSION",
    "BookSpec",
    "BookSummary",
    "write_book",
    "save_table",
    "load_table",
    "BadMagicError",
    "VersionMismatchError",
    "CorruptRecordError",
]

BOOK_MAGIC = "oneexpr-book"
TABLE_MAGIC = "oneexpr-table"
FORMAT_VERSION = 1

Table = Union[CountTable, ShortestTable]


class BadMagicError(Exception):
    """File does not start with the expected magic string."""


class VersionMismatchError(Exception):
    """File carries a format version this code does not speak."""


class CorruptRecordError(Exception):
    """A record failed validation; ``line`` is the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


@dataclass(frozen=True)
class BookSpec:
    """What to put in a book: counts to ``count_upto`` (K1), minimal
    formulas for 2..``shortest_upto`` (K2), written to ``path``."""

    ops: OpSet
    count_upto: int
    shortest_upto: int
    path: str

    def __post_init__(self) -> None:
        check_opset(self.ops)
        if self.count_upto < 1:
            raise ValueError("count_upto must be >= 1")
        if self.shortest_upto < 2:
            raise ValueError("shortest_upto must be >= 2")


@dataclass(frozen=True)
class BookSummary:
    path: str
    count_lines: int
    formula_lines: int

    @property
    def content_lines(self) -> int:
        return self.count_lines + self.formula_lines


def write_book(
    spec: BookSpec,
    counts: CountTable | None = None,
    shortest: ShortestTable | None = None,
) -> BookSummary:
    """Render and write one book; returns what was written.

    Prebuilt tables may be passed in (e.g. from a cache); they must cover
    the requested ranges with the same operation set, otherwise the
    tables are computed here.
    """
    ops = check_opset(spec.ops)
    if counts is None or frozenset(counts.ops) != ops or counts.n_max < spec.count_upto:
        counts = build_count_table(ops, spec.count_upto)
    if (
        shortest is None
        or frozenset(shortest.ops) != ops
        or shortest.n_max < spec.shortest_upto
    ):
        shortest = build_shortest_table(ops, spec.shortest_upto)

    lines = [
        f"# {BOOK_MAGIC} format {FORMAT_VERSION}",
        f"# ops {opset_name(ops)}",
        f"# count_upto {spec.count_upto}",
        f"# shortest_upto {spec.shortest_upto}",
        "# counts: n\ttotal",
    ]
    for n in range(1, spec.count_upto + 1):
        lines.append(f"{n}\t{counts.total[n]}")
    lines.append("# formulas: n\tpostfix\ttokens\tdepth")
    for n in range(2, spec.shortest_upto + 1):
        emitted, depth = min_memory_postfix(shortest.witnesses[n])
        lines.append(f"{n}\t{emitted}\t{shortest.lengths[n]}\t{depth}")
    _atomic_write(spec.path, "\n".join(lines) + "\n")
    return BookSummary(spec.path, spec.count_upto, spec.shortest_upto - 1)


def save_table(table: Table, path: str) -> None:
    """Snapshot a table; counts as decimal text, witnesses as postfix."""
    kind = "counts" if isinstance(table, CountTable) else "shortest"
    lines = [
        f"{TABLE_MAGIC} {FORMAT_VERSION}",
        f"kind {kind}",
        f"ops {opset_name(table.ops)}",
        f"max {table.n_max}",
    ]
    if isinstance(table, CountTable):
        for n in range(1, table.n_max + 1):
            lines.append(
                f"{n}\t{table.add_rooted[n]}\t{table.mul_rooted[n]}"
                f"\t{table.pow_rooted[n]}\t{table.total[n]}"
            )
    else:
        for n in range(1, table.n_max + 1):
            lines.append(f"{n}\t{table.lengths[n]}\t{to_postfix(table.witnesses[n])}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _header_field(lines: list[str], index: int, name: str) -> str:
    if index >= len(lines):
        raise CorruptRecordError(index + 1, "unexpected end of file in header")
    parts = lines[index].split(" ", 1)
    if len(parts) != 2 or parts[0] != name:
        raise CorruptRecordError(index + 1, f"expected '{name} ...' header line")
    return parts[1]


def load_table(path: str) -> Table:
    """Reload a snapshot written by :func:`save_table`, validating as it goes."""
    with open(path, "r", encoding="ascii", newline=None) as handle:
        lines = handle.read().splitlines()
    if not lines or not lines[0].startswith(TABLE_MAGIC + " "):
        raise BadMagicError(f"{path}: not a {TABLE_MAGIC} file")
    version_text = lines[0][len(TABLE_MAGIC) + 1 :]
    if version_text != str(FORMAT_VERSION):
        raise VersionMismatchError(
            f"{path}: format version {version_text!r}, this build reads {FORMAT_VERSION}"
        )
    kind = _header_field(lines, 1, "kind")
    if kind not in ("counts", "shortest"):
        raise CorruptRecordError(2, f"unknown table kind {kind!r}")
    ops_text = _header_field(lines, 2, "ops")
    if ops_text not in OPSETS:
        raise CorruptRecordError(3, f"unknown operation set {ops_text!r}")
    ops = OPSETS[ops_text]
    try:
        n_max = int(_header_field(lines, 3, "max"))
    except ValueError:
        raise CorruptRecordError(4, "max is not an integer") from None
    if n_max < 1:
        raise CorruptRecordError(4, "max must be >= 1")

    records = lines[4:]
    if len(records) != n_max:
        bad_line = len(lines) + 1 if len(records) < n_max else 4 + n_max + 1
        raise CorruptRecordError(bad_line, f"expected {n_max} records, found {len(records)}")
    if kind == "counts":
        return _load_counts(ops, n_max, records)
    return _load_shortest(ops, n_max, records)


def _load_counts(ops: OpSet, n_max: int, records: list[str]) -> CountTable:
    total = [0] * (n_max + 1)
    add_r = [0] * (n_max + 1)
    mul_r = [0] * (n_max + 1)
    pow_r = [0] * (n_max + 1)
    for offset, record in enumerate(records):
        line_no = offset + 5
        fields = record.split("\t")
        if len(fields) != 5:
            raise CorruptRecordError(line_no, "counts record needs 5 fields")
        try:
            n, a, m, p, t = (int(field) for field in fields)
        except ValueError:
            raise CorruptRecordError(line_no, "non-integer field") from None
        if n != offset + 1:
            raise CorruptRecordError(line_no, f"record out of order: n={n}")
        if min(a, m, p, t) < 0 or (t != a + m + p if n >= 2 else t != 1):
            raise CorruptRecordError(line_no, f"inconsistent counts for n={n}")
        add_r[n], mul_r[n], pow_r[n], total[n] = a, m, p, t
    return CountTable(ops, n_max, total, add_r, mul_r, pow_r)


def _load_shortest(ops: OpSet, n_max: int, records: list[str]) -> ShortestTable:
    lengths = [0] * (n_max + 1)
    witnesses: list[Formula] = [None] * (n_max + 1)  # type: ignore[list-item]
    for offset, record in enumerate(records):
        line_no = offset + 5
        fields = record.split("\t")
        if len(fields) != 3:
            raise CorruptRecordError(line_no, "shortest record needs 3 fields")
        try:
            n = int(fields[0])
            length = int(fields[1])
        except ValueError:
            raise CorruptRecordError(line_no, "non-integer field") from None
        if n != offset + 1:
            raise CorruptRecordError(line_no, f"record out of order: n={n}")
        try:
            witness = from_postfix(fields[2])
        except ParseError as exc:
            raise CorruptRecordError(line_no, f"bad witness: {exc}") from None
        if len(fields[2]) != length:
            raise CorruptRecordError(line_no, f"stated length {length} != witness")
        if eval_postfix_with_depth(fields[2])[0] != n:
            raise CorruptRecordError(line_no, f"witness does not evaluate to {n}")
        lengths[n] = length
        witnesses[n] = witness
    return ShortestTable(ops, n_max, lengths, witnesses)
