"""Shared builders for the test suite."""

from __future__ import annotations

from datetime import datetime, timezone

import numpy as np

from saxplore import Dataset, TimeSeries, word_from_text


def make_series(sid, values, timestamps=None, **meta):
    values = np.asarray(values, dtype=np.float64)
    if timestamps is None:
        timestamps = np.arange(values.size, dtype=np.float64)
    return TimeSeries(
        sid,
        np.asarray(timestamps, dtype=np.float64),
        values,
        {k: str(v) for k, v in meta.items()},
    )


def make_dataset(*series, normalized=False, dataset_id="d"):
    return Dataset(
        id=dataset_id,
        series=tuple(series),
        normalized=normalized,
        created_at=datetime.now(timezone.utc),
    )


def words_from_texts(*texts):
    """SaxWords named w0, w1, ... from their serialized forms."""
    return [word_from_text(f"w{i}", t) for i, t in enumerate(texts)]


def random_word_text(rng, omega, alpha, gap_p=0.2):
    """Random serialized word: each cell a letter or (with gap_p) a gap;
    length drawn from [1, omega]."""
    length = int(rng.integers(1, omega + 1))
    cells = []
    for _ in range(length):
        if rng.random() < gap_p:
            cells.append("_")
        else:
            cells.append(chr(ord("a") + int(rng.integers(alpha))))
    return "".join(cells)


def long_csv(series):
    """Long-format CSV bytes from {sid: (timestamps, values)}."""
    lines = ["series_id,timestamp,value"]
    for sid, (ts, vs) in series.items():
        lines.extend(f"{sid},{t},{v}" for t, v in zip(ts, vs))
    return ("\n".join(lines) + "\n").encode()
