"""Time-series collections: loading, validation, z-normalization.

Two on-disk formats are supported:

- ``long-csv``: UTF-8 CSV with header ``series_id,timestamp,value`` and one
  sample per row. Metadata can ride in a sidecar CSV with header
  ``series_id,key,value``.
- ``series-json``: a JSON array of objects
  ``{"id": str, "t": [numbers], "v": [numbers], "meta": {str: str}}``
  with ``t`` and ``v`` of equal length.

Timestamps are arbitrary real numbers (e.g. Modified Julian Date); there is
no calendar handling. Irregular sampling is kept as-is. All values and
timestamps must be finite.
"""

from __future__ import annotations

import csv
import io
import json
import math
import uuid
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import BinaryIO, Iterable

import numpy as np

from .errors import (
    DuplicateSampleError,
    EmptyDatasetError,
    ParseError,
    StateError,
)

LONG_CSV = "long-csv"
SERIES_JSON = "series-json"
FORMATS = (LONG_CSV, SERIES_JSON)

_CSV_HEADER = ["series_id", "timestamp", "value"]
_META_HEADER = ["series_id", "key", "value"]


@dataclass(frozen=True)
class TimeSeries:
    """One observation: ordered (timestamp, value) samples plus metadata.

    Timestamps are strictly increasing; both arrays are read-only float64
    of equal, non-zero length.
    """

    id: str
    timestamps: np.ndarray
    values: np.ndarray
    metadata: dict[str, str]

    def __post_init__(self):
        ts = np.asarray(self.timestamps, dtype=np.float64)
        vs = np.asarray(self.values, dtype=np.float64)
        if ts.size == 0:
            raise ValueError(f"series {self.id!r} has no samples")
        if ts.shape != vs.shape:
            raise ValueError(f"series {self.id!r}: timestamps and values differ in length")
        if ts.size > 1 and not np.all(np.diff(ts) > 0):
            raise ValueError(f"series {self.id!r}: timestamps not strictly increasing")
        ts.setflags(write=False)
        vs.setflags(write=False)
        object.__setattr__(self, "timestamps", ts)
        object.__setattr__(self, "values", vs)

    def __len__(self) -> int:
        return self.timestamps.size

    @property
    def span(self) -> float:
        """Time covered by the series: last timestamp minus first."""
        return float(self.timestamps[-1] - self.timestamps[0])


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of time series with distinct ids."""

    id: str
    series: tuple[TimeSeries, ...]
    normalized: bool
    created_at: datetime

    def __post_init__(self):
        object.__setattr__(self, "series", tuple(self.series))
        ids = [s.id for s in self.series]
        if len(set(ids)) != len(ids):
            raise ValueError("dataset contains duplicate series ids")

    def __len__(self) -> int:
        return len(self.series)

    def get(self, series_id: str) -> TimeSeries | None:
        for s in self.series:
            if s.id == series_id:
                return s
        return None


def _decode(source: bytes | BinaryIO | str) -> str:
    if isinstance(source, str):
        return source
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
        if isinstance(data, str):
            return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not valid UTF-8: {exc}") from None


def _parse_number(token: str, what: str, line: int) -> float:
    try:
        x = float(token)
    except ValueError:
        raise ParseError(f"non-numeric {what} {token!r}", line) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite {what} {token!r}", line)
    return x


def _load_long_csv(text: str) -> list[tuple[str, list[float], list[float]]]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDatasetError("input is empty") from None
    if [h.strip() for h in header] != _CSV_HEADER:
        raise ParseError(f"expected header {','.join(_CSV_HEADER)!r}, got {','.join(header)!r}", 1)

    order: list[str] = []
    samples: dict[str, dict[float, float]] = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line)
        sid = row[0]
        t = _parse_number(row[1], "timestamp", line)
        v = _parse_number(row[2], "value", line)
        if sid not in samples:
            order.append(sid)
            samples[sid] = {}
        if t in samples[sid]:
            raise DuplicateSampleError(f"duplicate sample ({sid!r}, {row[1]})", line)
        samples[sid][t] = v

    if not order:
        raise EmptyDatasetError("input contains no samples")

    out = []
    for sid in order:
        ts = sorted(samples[sid])
        out.append((sid, ts, [samples[sid][t] for t in ts]))
    return out


def _load_series_json(text: str) -> list[tuple[str, list[float], list[float], dict]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, list):
        raise ParseError("expected a JSON array of series objects")
    if not doc:
        raise EmptyDatasetError("input contains no series")

    seen: set[str] = set()
    out = []
    for i, entry in enumerate(doc):
        where = f"series entry {i}"
        if not isinstance(entry, dict) or "id" not in entry:
            raise ParseError(f"{where}: expected an object with an 'id' field")
        sid = str(entry["id"])
        if sid in seen:
            raise ParseError(f"{where}: duplicate series id {sid!r}")
        seen.add(sid)
        t = entry.get("t")
        v = entry.get("v")
        if not isinstance(t, list) or not isinstance(v, list) or len(t) != len(v):
            raise ParseError(f"{where}: 't' and 'v' must be lists of equal length")
        if not t:
            raise ParseError(f"{where}: series has no samples")
        pairs: dict[float, float] = {}
        for k, (tk, vk) in enumerate(zip(t, v)):
            if not isinstance(tk, (int, float)) or not math.isfinite(tk):
                raise ParseError(f"{where}: non-numeric timestamp at position {k}")
            if not isinstance(vk, (int, float)) or not math.isfinite(vk):
                raise ParseError(f"{where}: non-numeric value at position {k}")
            if float(tk) in pairs:
                raise DuplicateSampleError(f"{where}: duplicate sample ({sid!r}, {tk})")
            pairs[float(tk)] = float(vk)
        meta = entry.get("meta") or {}
        if not isinstance(meta, dict):
            raise ParseError(f"{where}: 'meta' must be an object")
        ts = sorted(pairs)
        out.append((sid, ts, [pairs[t_] for t_ in ts], {str(k): str(u) for k, u in meta.items()}))
    return out


def load_metadata(source: bytes | BinaryIO | str) -> dict[str, dict[str, str]]:
    """Parse a sidecar metadata CSV (``series_id,key,value``) into a mapping."""
    text = _decode(source)
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        return {}
    if [h.strip() for h in header] != _META_HEADER:
        raise ParseError(f"expected header {','.join(_META_HEADER)!r}, got {','.join(header)!r}", 1)
    meta: dict[str, dict[str, str]] = {}
    for line, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 fields, got {len(row)}", line)
        meta.setdefault(row[0], {})[row[1]] = row[2]
    return meta


def load_dataset(
    source: bytes | BinaryIO | str,
    format: str = LONG_CSV,
    *,
    metadata_source: bytes | BinaryIO | str | None = None,
    dataset_id: str | None = None,
) -> Dataset:
    """Load a raw (un-normalized) dataset from a byte stream.

    Series appear in first-appearance order; per-series samples are ordered
    by timestamp. Duplicate (series_id, timestamp) pairs, malformed rows,
    and empty inputs raise the errors documented in errors.py.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    text = _decode(source)

    if format == LONG_CSV:
        rows = _load_long_csv(text)
        sidecar = load_metadata(metadata_source) if metadata_source is not None else {}
        series = tuple(
            TimeSeries(sid, np.array(ts), np.array(vs), dict(sidecar.get(sid, {})))
            for sid, ts, vs in rows
        )
    else:
        entries = _load_series_json(text)
        series = tuple(
            TimeSeries(sid, np.array(ts), np.array(vs), meta) for sid, ts, vs, meta in entries
        )

    return Dataset(
        id=dataset_id or uuid.uuid4().hex[:12],
        series=series,
        normalized=False,
        created_at=datetime.now(timezone.utc),
    )


def znormalize(dataset: Dataset) -> Dataset:
    """Center and scale every series to zero mean and unit deviation.

    Uses the population (divide-by-n) standard deviation. Constant series
    map to all zeros and gain the metadata flag ``constant="true"`` so a
    consumer can warn about them. Timestamps are untouched.
    """
    if dataset.normalized:
        raise StateError(f"dataset {dataset.id!r} is already normalized")

    out = []
    for s in dataset.series:
        mean = float(s.values.mean())
        std = float(s.values.std())
        if std == 0.0:
            values = np.zeros_like(s.values)
            meta = dict(s.metadata, constant="true")
        else:
            values = (s.values - mean) / std
            meta = dict(s.metadata)
        out.append(TimeSeries(s.id, s.timestamps, values, meta))

    return replace(dataset, series=tuple(out), normalized=True)


def pooled_values(dataset: Dataset) -> np.ndarray:
    """All sample values of all series, concatenated in dataset order."""
    return np.concatenate([s.values for s in dataset.series])
