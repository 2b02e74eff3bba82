"""Decision-table ingestion: CSV parsing, categorical encoding, projection.

A decision table holds m objects described by categorical condition
attributes plus one categorical decision attribute.  Cell values are
stored as dense integer codes assigned in first-appearance order, so
downstream partitioning and traces are deterministic for a given input.

Numeric columns cannot be encoded directly; ``parse_csv`` hands them back
as :class:`RawColumn` staging data for the discretizer.  A column counts
as numeric only when explicitly flagged, or when every cell parses as a
finite number and at least one cell is written in real form (contains a
decimal point or exponent).  Integer-only columns are ambiguous -- they
are just as often category codes -- and default to categorical.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Sequence

from .errors import ParseError, SchemaError, ValidationError

MISSING_TOKENS = frozenset({"", "?"})

CATEGORICAL = "categorical"
NUMERIC = "numeric"


@dataclass(frozen=True)
class RawColumn:
    """A parsed but not yet encoded column.

    ``cells`` are strings for categorical columns and finite floats for
    numeric ones; missing values have already been rejected or dropped.
    """

    name: str
    kind: str
    cells: tuple

    def __post_init__(self):
        if self.kind not in (CATEGORICAL, NUMERIC):
            raise ValueError(f"unknown column kind {self.kind!r}")
        if self.kind == NUMERIC:
            for cell in self.cells:
                if not isinstance(cell, float) or not math.isfinite(cell):
                    raise ValidationError(
                        f"column {self.name!r}: non-finite numeric cell {cell!r}"
                    )


@dataclass(frozen=True)
class DecisionTable:
    """Immutable categorical decision table.

    Each row of ``values`` holds the condition-attribute codes in
    ``condition_attrs`` order followed by the decision code.  Codes index
    into ``domains[attr]``, the per-attribute label list in
    first-appearance order.
    """

    object_ids: tuple[str, ...]
    condition_attrs: tuple[str, ...]
    decision_attr: str
    values: tuple[tuple[int, ...], ...]
    domains: dict[str, tuple[str, ...]]

    def __post_init__(self):
        if len(self.values) < 1:
            raise ValueError("a decision table needs at least one object")
        if len(self.condition_attrs) < 1:
            raise ValueError("a decision table needs at least one condition attribute")
        if len(self.object_ids) != len(self.values):
            raise ValueError("object_ids and values disagree on object count")
        if len(set(self.object_ids)) != len(self.object_ids):
            raise ValueError("object ids must be unique")
        names = self.condition_attrs + (self.decision_attr,)
        if len(set(names)) != len(names):
            raise ValueError("attribute names must be unique")
        width = len(self.condition_attrs) + 1
        for oid, row in zip(self.object_ids, self.values):
            if len(row) != width:
                raise ValueError(f"object {oid!r}: expected {width} values, got {len(row)}")
            for attr, code in zip(names, row):
                if not 0 <= code < len(self.domains[attr]):
                    raise ValueError(f"object {oid!r}: code {code} outside domain of {attr!r}")

    @property
    def m(self) -> int:
        return len(self.values)

    def attr_position(self, attr: str) -> int:
        """Column position of ``attr`` in each values row."""
        if attr == self.decision_attr:
            return len(self.condition_attrs)
        try:
            return self.condition_attrs.index(attr)
        except ValueError:
            raise ValueError(f"unknown attribute {attr!r}") from None

    def column(self, attr: str) -> tuple[int, ...]:
        pos = self.attr_position(attr)
        return tuple(row[pos] for row in self.values)

    def decode(self, attr: str, code: int) -> str:
        return self.domains[attr][code]

    def decoded_row(self, index: int) -> tuple[str, ...]:
        """The object's cell labels (conditions then decision)."""
        names = self.condition_attrs + (self.decision_attr,)
        return tuple(self.domains[a][c] for a, c in zip(names, self.values[index]))


def _read_rows(text, delimiter: str) -> tuple[list[str], list[tuple[int, list[str]]]]:
    reader = csv.reader(text, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty file: no header row") from None
    seen = set()
    for name in header:
        if name in seen:
            raise SchemaError(f"duplicate column name {name!r} in header")
        seen.add(name)
    rows = []
    for row in reader:
        if not row:
            continue  # blank line
        if len(row) != len(header):
            raise ParseError(
                f"row {reader.line_num}: expected {len(header)} cells, got {len(row)}"
            )
        rows.append((reader.line_num, row))
    if not rows:
        raise SchemaError("no data rows after header")
    return header, rows


def _apply_missing_policy(header, rows, drop_missing: bool):
    kept = []
    for line_num, row in rows:
        missing = [name for name, cell in zip(header, row) if cell in MISSING_TOKENS]
        if not missing:
            kept.append(row)
        elif not drop_missing:
            raise ValidationError(
                f"missing value at row {line_num}, column {missing[0]!r}"
            )
    if not kept:
        raise SchemaError("no data rows left after dropping rows with missing values")
    return kept


def _parse_finite(cell: str) -> float | None:
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _looks_real(cell: str) -> bool:
    return "." in cell or "e" in cell or "E" in cell


def parse_columns(
    source: BinaryIO,
    decision_col: str | None = None,
    numeric_cols: Iterable[str] | None = None,
    *,
    delimiter: str = ",",
    drop_missing: bool = False,
) -> tuple[list[RawColumn], str]:
    """Parse a UTF-8 CSV byte stream into typed columns in header order.

    Returns the columns plus the decision column name (default: last
    column).  The decision column is always categorical; see the module
    docstring for how condition columns are typed.
    """
    text = io.TextIOWrapper(source, encoding="utf-8", newline="")
    header, numbered = _read_rows(text, delimiter)
    rows = _apply_missing_policy(header, numbered, drop_missing)

    decision = header[-1] if decision_col is None else decision_col
    if decision not in header:
        raise ValueError(f"decision column {decision!r} not in header")
    flagged = set(numeric_cols or ())
    unknown = flagged - set(header)
    if unknown:
        raise ValueError(f"numeric column {sorted(unknown)[0]!r} not in header")
    if decision in flagged:
        raise ValueError(f"decision column {decision!r} cannot be numeric")

    columns: list[RawColumn] = []
    for pos, name in enumerate(header):
        cells = [row[pos] for row in rows]
        if name == decision:
            columns.append(RawColumn(name, CATEGORICAL, tuple(cells)))
            continue
        parsed = [_parse_finite(c) for c in cells]
        all_number = all(v is not None for v in parsed)
        if name in flagged:
            if not all_number:
                bad = cells[parsed.index(None)]
                raise ValidationError(
                    f"column {name!r} flagged numeric but cell {bad!r} is not a finite number"
                )
            numeric = True
        else:
            numeric = all_number and any(_looks_real(c) for c in cells)
        if numeric:
            columns.append(RawColumn(name, NUMERIC, tuple(parsed)))
        else:
            columns.append(RawColumn(name, CATEGORICAL, tuple(cells)))
    return columns, decision


def parse_csv(
    source: BinaryIO,
    decision_col: str | None = None,
    numeric_cols: Iterable[str] | None = None,
    *,
    delimiter: str = ",",
    drop_missing: bool = False,
) -> DecisionTable | list[RawColumn]:
    """Parse a UTF-8 CSV byte stream with a header row.

    Returns a fully encoded :class:`DecisionTable` when every condition
    column is categorical, otherwise the list of :class:`RawColumn` in
    header order so the caller can discretize the numeric ones.
    """
    columns, decision = parse_columns(
        source,
        decision_col,
        numeric_cols,
        delimiter=delimiter,
        drop_missing=drop_missing,
    )
    if any(col.kind == NUMERIC for col in columns):
        return columns
    return from_columns(columns, decision)


def from_columns(columns: Sequence[RawColumn], decision_attr: str) -> DecisionTable:
    """Encode all-categorical columns into a decision table.

    Object ids are positional (``x1`` .. ``xm``); category codes are dense
    integers in first-appearance order.
    """
    by_name = {c.name: c for c in columns}
    if decision_attr not in by_name:
        raise ValueError(f"decision column {decision_attr!r} not among columns")
    for col in columns:
        if col.kind != CATEGORICAL:
            raise ValueError(f"column {col.name!r} is numeric; discretize it first")
    condition = tuple(c.name for c in columns if c.name != decision_attr)
    if not condition:
        raise SchemaError("no condition attributes besides the decision column")
    ordered = [by_name[a] for a in condition] + [by_name[decision_attr]]

    domains: dict[str, tuple[str, ...]] = {}
    encoded: list[tuple[int, ...]] = []
    code_maps = []
    for col in ordered:
        codes: dict[str, int] = {}
        for cell in col.cells:
            if cell not in codes:
                codes[cell] = len(codes)
        code_maps.append(codes)
        domains[col.name] = tuple(codes)
    m = len(ordered[0].cells)
    for i in range(m):
        encoded.append(tuple(code_maps[j][ordered[j].cells[i]] for j in range(len(ordered))))
    object_ids = tuple(f"x{i + 1}" for i in range(m))
    return DecisionTable(object_ids, condition, decision_attr, tuple(encoded), domains)


def project(table: DecisionTable, attrs: Iterable[str]) -> DecisionTable:
    """Restrict the table to ``attrs`` plus the decision column.

    Kept columns stay in table order; object order, ids, codes and the
    decision column are unchanged.
    """
    wanted = set(attrs)
    if not wanted:
        raise ValueError("projection needs at least one attribute")
    unknown = wanted - set(table.condition_attrs)
    if unknown:
        raise ValueError(f"unknown attribute {sorted(unknown)[0]!r}")
    kept = tuple(a for a in table.condition_attrs if a in wanted)
    positions = [table.attr_position(a) for a in kept]
    values = tuple(
        tuple(row[p] for p in positions) + (row[-1],) for row in table.values
    )
    domains = {a: table.domains[a] for a in kept}
    domains[table.decision_attr] = table.domains[table.decision_attr]
    return DecisionTable(table.object_ids, kept, table.decision_attr, values, domains)


def subset(table: DecisionTable, rows: Sequence[int]) -> DecisionTable:
    """Row-subset of the table (same attributes, codes and domains)."""
    if not rows:
        raise ValueError("subset needs at least one row")
    object_ids = tuple(table.object_ids[i] for i in rows)
    values = tuple(table.values[i] for i in rows)
    return DecisionTable(
        object_ids, table.condition_attrs, table.decision_attr, values, dict(table.domains)
    )
