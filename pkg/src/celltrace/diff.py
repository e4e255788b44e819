"""Keyed cell-level diff between two frames, and its inverse."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import KeyViolation, ReplayError
from .frame import Column, Frame, Value, values_identical


@dataclass(frozen=True)
class KeySpec:
    column: str


@dataclass(frozen=True)
class CellChange:
    key: Value
    variable: str
    old: Value
    new: Value


def _slot(value: Value) -> tuple[type, Value]:
    # True == 1.0 in Python; keep keys of different variants apart
    return (type(value), value)


def key_index(frame: Frame, key: KeySpec, role: str = "frame") -> dict[tuple[type, Value], int]:
    """Map each key value to its row number, validating the key column."""
    if key.column not in frame:
        raise KeyViolation(f"key column {key.column!r} not found in {role}")
    index: dict[tuple[type, Value], int] = {}
    for row, value in enumerate(frame[key.column]):
        if value is None:
            raise KeyViolation(f"missing key value in {role}, row {row + 1}")
        slot = _slot(value)
        if slot in index:
            raise KeyViolation(f"duplicate key {value!r} in {role}")
        index[slot] = row
    return index


def cell_diff(old: Frame, new: Frame, key: KeySpec) -> list[CellChange]:
    """Every cell whose value differs between ``old`` and ``new``.

    Rows are matched on the key column. A cell that exists on one side only
    (added/removed column or row) is compared against a missing value.
    Output follows the column order of ``new`` (then old-only columns), and
    within a column the row order of ``new`` (then old-only rows).
    """
    old_index = key_index(old, key, "old frame")
    new_index = key_index(new, key, "new frame")

    new_keys = list(new[key.column])
    old_only = [k for k in old[key.column] if _slot(k) not in new_index]
    ordered_keys = new_keys + old_only

    names = list(new.names) + [n for n in old.names if n not in new]
    changes: list[CellChange] = []
    for name in names:
        old_cells = old[name] if name in old else None
        new_cells = new[name] if name in new else None
        for k in ordered_keys:
            slot = _slot(k)
            before = None
            after = None
            if old_cells is not None and slot in old_index:
                before = old_cells[old_index[slot]]
            if new_cells is not None and slot in new_index:
                after = new_cells[new_index[slot]]
            if not values_identical(before, after):
                changes.append(CellChange(k, name, before, after))
    return changes


def apply_changes(base: Frame, changes: Iterable[CellChange], key: KeySpec) -> Frame:
    """Write each change's ``new`` value into ``base``.

    Columns named by a change but absent from ``base`` are created, filled
    with missing values. Keys must already exist in ``base``.
    """
    index = key_index(base, key, "base frame")
    seen: dict[tuple[tuple[type, Value], str], Value] = {}
    columns = {c.name: list(c.cells) for c in base.columns}
    order = list(base.names)
    for ch in changes:
        slot = _slot(ch.key)
        if slot not in index:
            raise ReplayError(f"unknown key {ch.key!r} for variable {ch.variable!r}")
        cell = (slot, ch.variable)
        if cell in seen:
            if values_identical(seen[cell], ch.new):
                continue
            raise ReplayError(f"conflicting changes for key {ch.key!r}, variable {ch.variable!r}")
        seen[cell] = ch.new
        if ch.variable not in columns:
            columns[ch.variable] = [None] * base.nrow
            order.append(ch.variable)
        columns[ch.variable][index[slot]] = ch.new
    return Frame(tuple(Column(n, tuple(columns[n])) for n in order))


def replay(initial: Frame, steps: Sequence[Sequence[CellChange]], key: KeySpec) -> Frame:
    """Apply successive change sets, one per logged step."""
    frame = initial
    for changes in steps:
        frame = apply_changes(frame, changes, key)
    return frame
