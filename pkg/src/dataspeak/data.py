"""Tabular data ingestion and the transforms the compiler needs.

Datasets are immutable: a tuple of typed columns plus row tuples. Row order
is preserved from the source and defines "dataset order" wherever nominal
sequencing is called for. Column types are inferred whole-column so scales
always see a homogeneous domain.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping

from .diagnostics import (
    E_AGG_TYPE,
    E_CELL_TYPE,
    E_DUP_COLUMN,
    E_EMPTY_DATASET,
    E_IO,
    E_NO_COLUMNS,
    E_NONFINITE,
    E_RAGGED_ROWS,
    E_SOURCE_FORMAT,
    E_SOURCE_SHAPE,
    E_TYPE_MISMATCH,
    E_UNKNOWN_FIELD,
    PipelineError,
    error,
)
from .model import Aggregate, Channel, ChannelDef, DataSourceRef, DataValue, Filter, FilterOp, SpecDocument


class ColumnType(str, Enum):
    NUMBER = "number"
    TEXT = "text"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class Column:
    name: str
    ctype: ColumnType


Row = tuple[DataValue, ...]


@dataclass(frozen=True)
class Dataset:
    columns: tuple[Column, ...]
    rows: tuple[Row, ...]

    def index_of(self, name: str) -> int:
        """Column index for ``name``; raises a pipeline error when absent."""
        for i, col in enumerate(self.columns):
            if col.name == name:
                return i
        raise PipelineError(error(E_UNKNOWN_FIELD, f"no column named {name!r}"))

    def has_column(self, name: str) -> bool:
        return any(col.name == name for col in self.columns)

    def column_values(self, name: str) -> list[DataValue]:
        i = self.index_of(name)
        return [row[i] for row in self.rows]


#: Synthetic column prefix for aggregate results; channels that declared an
#: aggregate are rebound to ``__agg_<channel name>``.
AGG_PREFIX = "__agg_"


def aggregate_column(channel: Channel) -> str:
    return AGG_PREFIX + channel.value


def _number_from_text(text: str) -> float | None:
    """Strict numeric parse: plain int/float literals only, always finite."""
    t = text.strip()
    if not t:
        return None
    try:
        v = float(t)
    except ValueError:
        return None
    # float() accepts spellings like "nan", "inf", "1_0"; none of those are
    # numbers in tabular sources.
    if not math.isfinite(v) or "_" in t:
        return None
    return v


def _format_cell(v: DataValue) -> str:
    """Render a cell as text for columns coerced to TEXT."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if v.is_integer():
            return str(int(v))
        return repr(v)
    return str(v)


def _ingest_cell(raw: Any, where: str) -> DataValue:
    if raw is None:
        return None
    if isinstance(raw, bool):
        return raw
    if isinstance(raw, (int, float)):
        v = float(raw)
        if not math.isfinite(v):
            raise PipelineError(error(E_NONFINITE, f"non-finite number at {where}"))
        return v
    if isinstance(raw, str):
        return raw if raw != "" else None
    raise PipelineError(error(E_CELL_TYPE, f"unsupported cell type {type(raw).__name__} at {where}"))


def _infer_column(values: list[DataValue]) -> ColumnType:
    present = [v for v in values if v is not None]
    if not present:
        return ColumnType.TEXT
    if all(isinstance(v, bool) for v in present):
        return ColumnType.BOOLEAN
    numeric = True
    for v in present:
        if isinstance(v, bool):
            numeric = False
            break
        if isinstance(v, float):
            continue
        if isinstance(v, str) and _number_from_text(v) is not None:
            continue
        numeric = False
        break
    return ColumnType.NUMBER if numeric else ColumnType.TEXT


def _coerce(value: DataValue, ctype: ColumnType) -> DataValue:
    if value is None:
        return None
    if ctype is ColumnType.NUMBER:
        if isinstance(value, str):
            return _number_from_text(value)
        return value
    if ctype is ColumnType.BOOLEAN:
        return value
    return value if isinstance(value, str) else _format_cell(value)


def _build_dataset(names: list[str], raw_rows: list[list[DataValue]]) -> Dataset:
    if not raw_rows:
        raise PipelineError(error(E_EMPTY_DATASET, "data source has no rows"))
    if not names:
        raise PipelineError(error(E_NO_COLUMNS, "data source has no columns"))
    seen: set[str] = set()
    for n in names:
        if n in seen:
            raise PipelineError(error(E_DUP_COLUMN, f"duplicate column name {n!r}"))
        seen.add(n)
    types = [_infer_column([row[i] for row in raw_rows]) for i in range(len(names))]
    columns = tuple(Column(n, t) for n, t in zip(names, types))
    rows = tuple(tuple(_coerce(row[i], types[i]) for i in range(len(names))) for row in raw_rows)
    return Dataset(columns=columns, rows=rows)


def ingest_records(records: Iterable[Mapping[str, Any]]) -> Dataset:
    """Build a dataset from an array of flat objects.

    Column order is first-appearance order of keys across records; a record
    missing a key contributes a null.
    """
    names: list[str] = []
    dicts: list[Mapping[str, Any]] = []
    for i, rec in enumerate(records):
        if not isinstance(rec, Mapping):
            raise PipelineError(error(E_SOURCE_SHAPE, f"record {i} is not an object"))
        for k in rec:
            if k not in names:
                names.append(k)
        dicts.append(rec)
    raw_rows = [
        [_ingest_cell(rec.get(n), f"row {i}, column {n!r}") for n in names] for i, rec in enumerate(dicts)
    ]
    return _build_dataset(names, raw_rows)


def _load_csv(path: Path) -> Dataset:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise PipelineError(error(E_NO_COLUMNS, f"{path} is empty")) from None
        raw_rows: list[list[DataValue]] = []
        for i, row in enumerate(reader):
            if len(row) != len(header):
                raise PipelineError(
                    error(E_RAGGED_ROWS, f"row {i + 1} has {len(row)} cells, header has {len(header)}")
                )
            raw_rows.append([cell if cell != "" else None for cell in row])
    return _build_dataset(header, raw_rows)


def _load_json(path: Path) -> Dataset:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PipelineError(error(E_SOURCE_SHAPE, f"{path}: malformed JSON: {exc}")) from None
    if not isinstance(doc, list):
        raise PipelineError(error(E_SOURCE_SHAPE, f"{path}: expected a JSON array of objects"))
    if not doc:
        raise PipelineError(error(E_EMPTY_DATASET, f"{path}: no rows"))
    return ingest_records(doc)


def load_dataset(source: DataSourceRef, base_dir: Path | None = None) -> Dataset:
    """Load tabular data from inline rows or a CSV/JSON file.

    Relative paths resolve against ``base_dir`` (typically the spec file's
    directory).
    """
    if source.values is not None:
        return ingest_records(source.values)
    assert source.url is not None
    path = Path(source.url)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    suffix = path.suffix.lower()
    try:
        if suffix == ".csv":
            return _load_csv(path)
        if suffix == ".json":
            return _load_json(path)
    except OSError as exc:
        raise PipelineError(error(E_IO, f"cannot read {path}: {exc.strerror or exc}")) from None
    raise PipelineError(error(E_SOURCE_FORMAT, f"unsupported data format {suffix!r} (use .csv or .json)"))


_ORDER_OPS = {FilterOp.LT, FilterOp.LTE, FilterOp.GT, FilterOp.GTE}


def _compare(op: FilterOp, cell: Any, literal: Any) -> bool:
    if op is FilterOp.EQ:
        return cell == literal
    if op is FilterOp.NEQ:
        return cell != literal
    if op is FilterOp.LT:
        return cell < literal
    if op is FilterOp.LTE:
        return cell <= literal
    if op is FilterOp.GT:
        return cell > literal
    return cell >= literal


def apply_filter(ds: Dataset, f: Filter) -> Dataset:
    """Keep rows satisfying the predicate, order preserved.

    Comparison is numeric for NUMBER columns and lexicographic for TEXT;
    BOOLEAN columns support only eq/neq. A null cell never satisfies any
    predicate, and neither does a null literal.
    """
    idx = ds.index_of(f.field)
    ctype = ds.columns[idx].ctype
    literal = f.value
    if literal is not None:
        if ctype is ColumnType.NUMBER:
            if isinstance(literal, bool) or not isinstance(literal, (int, float)):
                raise PipelineError(
                    error(E_TYPE_MISMATCH, f"column {f.field!r} is numeric, filter value is not")
                )
            literal = float(literal)
        elif ctype is ColumnType.TEXT:
            if not isinstance(literal, str):
                raise PipelineError(
                    error(E_TYPE_MISMATCH, f"column {f.field!r} is text, filter value is not")
                )
        else:
            if not isinstance(literal, bool) or f.op in _ORDER_OPS:
                raise PipelineError(
                    error(E_TYPE_MISMATCH, f"column {f.field!r} is boolean, only eq/neq with booleans applies")
                )
    kept = tuple(
        row
        for row in ds.rows
        if row[idx] is not None and literal is not None and _compare(f.op, row[idx], literal)
    )
    return Dataset(columns=ds.columns, rows=kept)


def group_fields(spec: SpecDocument, ds: Dataset) -> list[str]:
    """Fields that act as group-by keys under aggregation.

    Every non-aggregated, field-bound channel contributes its field, and a
    text channel whose value names a column counts as field-bound. Keys keep
    dataset column order.
    """
    fields: set[str] = set()
    for ch in spec.encoding.values():
        if ch.aggregate is None and ch.field is not None:
            ds.index_of(ch.field)  # unknown field surfaces here
            fields.add(ch.field)
        elif ch.value is not None and ds.has_column(ch.value):
            fields.add(ch.value)
    return [c.name for c in ds.columns if c.name in fields]


def apply_aggregation(ds: Dataset, spec: SpecDocument) -> Dataset:
    """Group rows and append one synthetic column per aggregated channel.

    Output has one row per distinct key tuple in first-appearance order;
    with no grouping field the whole table collapses to a single row.
    """
    keys = group_fields(spec, ds)
    key_idx = [ds.index_of(k) for k in keys]
    agg_channels = [(name, ch) for name, ch in spec.encoding.items() if ch.aggregate is not None]

    groups: dict[Row, list[Row]] = {}
    for row in ds.rows:
        key = tuple(row[i] for i in key_idx)
        groups.setdefault(key, []).append(row)

    def reduce(ch: ChannelDef, members: list[Row]) -> DataValue:
        if ch.aggregate is Aggregate.COUNT:
            return float(len(members))
        assert ch.field is not None
        fi = ds.index_of(ch.field)
        if ds.columns[fi].ctype is not ColumnType.NUMBER:
            raise PipelineError(
                error(E_AGG_TYPE, f"aggregate {ch.aggregate.value!r} needs a numeric column, {ch.field!r} is not")
            )
        vals = [row[fi] for row in members if row[fi] is not None]
        if not vals:
            return None
        if ch.aggregate is Aggregate.SUM:
            return float(sum(vals))
        if ch.aggregate is Aggregate.MEAN:
            return float(sum(vals) / len(vals))
        if ch.aggregate is Aggregate.MIN:
            return float(min(vals))
        return float(max(vals))

    columns = tuple(ds.columns[i] for i in key_idx) + tuple(
        Column(aggregate_column(name), ColumnType.NUMBER) for name, _ in agg_channels
    )
    rows = tuple(
        key + tuple(reduce(ch, members) for _, ch in agg_channels) for key, members in groups.items()
    )
    return Dataset(columns=columns, rows=rows)
