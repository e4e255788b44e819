"""Cells, columns and frames.

A cell is a plain Python value:

* ``float`` for numbers (ints are widened on the way in),
* ``str`` for text,
* ``bool`` for logicals,
* ``None`` for a missing value.

NaN and the infinities never survive normalization; they become ``None``.
Frames and columns are immutable.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import FrameError

Value = Union[float, str, bool, None]

MISSING = None


def normalize(value: object) -> Value:
    """Coerce a Python object into the cell domain."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, float)):
        x = float(value)
        if not math.isfinite(x):
            return None
        # collapse -0.0 so that bitwise equality matches numeric equality at zero
        return 0.0 if x == 0.0 else x
    raise FrameError(f"unsupported cell type {type(value).__name__}: {value!r}")


def is_missing(value: Value) -> bool:
    return value is None


def type_name(value: Value) -> str:
    if value is None:
        return "missing"
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, float):
        return "number"
    return "text"


def values_identical(a: Value, b: Value) -> bool:
    """Same variant and same payload; numbers compare bit for bit."""
    if a is None or b is None:
        return a is None and b is None
    if type(a) is not type(b):
        return False
    if isinstance(a, float):
        return struct.pack("<d", a) == struct.pack("<d", b)
    return a == b


@dataclass(frozen=True)
class Column:
    name: str
    cells: tuple[Value, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise FrameError(f"column name must be a non-empty string, got {self.name!r}")
        object.__setattr__(self, "cells", tuple(normalize(c) for c in self.cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Value]:
        return iter(self.cells)


@dataclass(frozen=True)
class Frame:
    """Named, equal-length columns."""

    columns: tuple[Column, ...] = ()

    def __post_init__(self) -> None:
        cols = tuple(self.columns)
        seen: set[str] = set()
        for col in cols:
            if not isinstance(col, Column):
                raise FrameError(f"expected Column, got {type(col).__name__}")
            if col.name in seen:
                raise FrameError(f"duplicate column name {col.name!r}")
            seen.add(col.name)
        if cols and len({len(c) for c in cols}) > 1:
            lengths = ", ".join(f"{c.name}={len(c)}" for c in cols)
            raise FrameError(f"columns differ in length: {lengths}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_dict(cls, data: Mapping[str, Sequence[object]]) -> Frame:
        return cls(tuple(Column(name, tuple(cells)) for name, cells in data.items()))

    @classmethod
    def from_rows(cls, names: Sequence[str], rows: Iterable[Sequence[object]]) -> Frame:
        rows = [tuple(r) for r in rows]
        for i, r in enumerate(rows):
            if len(r) != len(names):
                raise FrameError(f"row {i} has {len(r)} cells, expected {len(names)}")
        return cls(tuple(Column(n, tuple(r[j] for r in rows)) for j, n in enumerate(names)))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @property
    def nrow(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def ncol(self) -> int:
        return len(self.columns)

    def __contains__(self, name: object) -> bool:
        return any(c.name == name for c in self.columns)

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise FrameError(f"no column named {name!r}")

    def __getitem__(self, name: str) -> tuple[Value, ...]:
        return self.column(name).cells

    def rows(self) -> Iterator[tuple[Value, ...]]:
        return zip(*(c.cells for c in self.columns)) if self.columns else iter(())

    def to_dict(self) -> dict[str, list[Value]]:
        return {c.name: list(c.cells) for c in self.columns}

    def with_column(self, name: str, cells: Sequence[object]) -> Frame:
        """Replace ``name`` in place, or append it when absent."""
        new = Column(name, tuple(cells))
        if name in self:
            return Frame(tuple(new if c.name == name else c for c in self.columns))
        return Frame(self.columns + (new,))

    def take(self, indices: Sequence[int]) -> Frame:
        return Frame(tuple(Column(c.name, tuple(c.cells[i] for i in indices)) for c in self.columns))

    def head(self, n: int) -> Frame:
        return self.take(range(min(max(n, 0), self.nrow)))

    def __repr__(self) -> str:
        return f"Frame({self.nrow}x{self.ncol}: {', '.join(self.names)})"


def frames_identical(a: Frame, b: Frame) -> bool:
    if a.names != b.names or a.nrow != b.nrow:
        return False
    return all(
        values_identical(x, y)
        for ca, cb in zip(a.columns, b.columns)
        for x, y in zip(ca.cells, cb.cells)
    )
