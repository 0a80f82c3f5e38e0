"""SAX encoding: breakpoint fitting, time binning, letter assignment.

A collection is encoded in three steps. First the values of all series are
pooled and a normal distribution is fitted; its alpha-1 equal-probability
quantiles become the letter breakpoints. Then each series' time span is cut
into bins of one global width (the longest span divided by omega, so the
longest series yields exactly omega bins, shorter series fewer). Finally
each bin's mean value is mapped to a letter; a bin with no samples becomes
a GAP cell, serialized as ``_``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.stats import norm

from .dataset import Dataset, TimeSeries, pooled_values
from .errors import DegenerateDataError, InvalidValueError, StateError

GAP = -1
GAP_CHAR = "_"

_MIN_ALPHA, _MAX_ALPHA = 2, 26


@dataclass(frozen=True)
class SaxConfig:
    """Encoding parameters: alphabet size and maximum word length."""

    alpha: int
    omega: int

    def __post_init__(self):
        if not _MIN_ALPHA <= self.alpha <= _MAX_ALPHA:
            raise ValueError(f"alpha must be in [{_MIN_ALPHA}, {_MAX_ALPHA}], got {self.alpha}")
        if self.omega < 1:
            raise ValueError(f"omega must be >= 1, got {self.omega}")


@dataclass(frozen=True)
class BreakpointModel:
    """Fitted normal (mu, sigma) and its alpha-1 ascending letter boundaries."""

    mu: float
    sigma: float
    breakpoints: np.ndarray

    def __post_init__(self):
        bps = np.asarray(self.breakpoints, dtype=np.float64)
        if bps.size < 1 or np.any(np.diff(bps) <= 0):
            raise ValueError("breakpoints must be strictly increasing and non-empty")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        bps.setflags(write=False)
        object.__setattr__(self, "breakpoints", bps)

    @property
    def alpha(self) -> int:
        return self.breakpoints.size + 1


@dataclass(frozen=True, eq=False)
class SaxWord:
    """A series' symbolic form: letter indices with explicit gap cells.

    ``codes`` holds one int per time bin; values in [0, alpha) are letters,
    GAP (-1) marks an empty bin.
    """

    series_id: str
    codes: np.ndarray

    def __post_init__(self):
        codes = np.asarray(self.codes, dtype=np.int16)
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)

    def __len__(self) -> int:
        return self.codes.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, SaxWord):
            return NotImplemented
        return self.series_id == other.series_id and np.array_equal(self.codes, other.codes)

    @cached_property
    def text(self) -> str:
        """Serialized word, 'a'..'z' with '_' for gaps."""
        return "".join(GAP_CHAR if c == GAP else chr(ord("a") + c) for c in self.codes)

    @property
    def defined_count(self) -> int:
        return int(np.sum(self.codes != GAP))


def word_from_text(series_id: str, text: str) -> SaxWord:
    """Inverse of SaxWord.text."""
    codes = np.empty(len(text), dtype=np.int16)
    for i, ch in enumerate(text):
        if ch == GAP_CHAR:
            codes[i] = GAP
        elif "a" <= ch <= "z":
            codes[i] = ord(ch) - ord("a")
        else:
            raise ValueError(f"invalid word character {ch!r}")
    return SaxWord(series_id, codes)


def fit_breakpoints(dataset: Dataset, alpha: int) -> BreakpointModel:
    """Pool the values of all series, fit a normal, cut it into alpha
    equal-probability partitions.

    The returned breakpoints are mu + sigma * Phi^-1(j/alpha) for
    j = 1..alpha-1.
    """
    if not _MIN_ALPHA <= alpha <= _MAX_ALPHA:
        raise ValueError(f"alpha must be in [{_MIN_ALPHA}, {_MAX_ALPHA}], got {alpha}")
    if not dataset.normalized:
        raise StateError("breakpoints are fitted on a normalized dataset")
    pooled = pooled_values(dataset)
    if pooled.size < 2:
        raise DegenerateDataError("need at least 2 pooled values to fit breakpoints")
    mu = float(pooled.mean())
    sigma = float(pooled.std())
    if sigma == 0.0:
        raise DegenerateDataError("pooled values have zero variance")
    quantiles = np.arange(1, alpha) / alpha
    return BreakpointModel(mu=mu, sigma=sigma, breakpoints=mu + sigma * norm.ppf(quantiles))


def letter_of(value: float, model: BreakpointModel) -> int:
    """Letter index for a value: the count of breakpoints <= value.

    A value below every breakpoint maps to 0 ('a'); a value exactly on a
    breakpoint takes the higher letter.
    """
    if not math.isfinite(value):
        raise InvalidValueError(f"cannot assign a letter to {value!r}")
    return int(np.searchsorted(model.breakpoints, value, side="right"))


def _word_length(span: float, bin_width: float, omega: int) -> int:
    return min(omega, max(1, math.ceil(span / bin_width)))


def encode(
    series: TimeSeries, model: BreakpointModel, config: SaxConfig, bin_width: float
) -> SaxWord:
    """Bin one series into a SAX word.

    Bins of width ``bin_width`` are anchored at the series' own first
    timestamp; the word has min(omega, ceil(span / bin_width)) cells (one
    cell for a zero-span series). Each cell is the letter of the bin's mean
    value, or GAP when the bin holds no samples. A sample sitting exactly on
    the word's right edge counts into the final bin.
    """
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    t = series.timestamps
    length = _word_length(series.span, bin_width, config.omega)

    idx = np.floor((t - t[0]) / bin_width).astype(np.int64)
    np.clip(idx, 0, length - 1, out=idx)

    counts = np.bincount(idx, minlength=length)
    sums = np.bincount(idx, weights=series.values, minlength=length)

    codes = np.full(length, GAP, dtype=np.int16)
    filled = counts > 0
    means = sums[filled] / counts[filled]
    if not np.all(np.isfinite(means)):
        raise InvalidValueError(f"series {series.id!r} produced a non-finite bin mean")
    codes[filled] = np.searchsorted(model.breakpoints, means, side="right")
    return SaxWord(series.id, codes)


def global_bin_width(dataset: Dataset, omega: int) -> float:
    """One bin width for the whole collection: longest span / omega.

    Falls back to 1.0 when every series has zero span (single-sample data),
    so that encoding still yields one-cell words.
    """
    max_span = max(s.span for s in dataset.series)
    return max_span / omega if max_span > 0 else 1.0


def encode_dataset(dataset: Dataset, config: SaxConfig) -> tuple[BreakpointModel, list[SaxWord]]:
    """Fit breakpoints once, then encode every series with the shared
    bin width. Words come back in dataset order; the longest series yields
    exactly omega cells, shorter ones fewer."""
    if not dataset.normalized:
        raise StateError("encode_dataset expects a normalized dataset")
    model = fit_breakpoints(dataset, config.alpha)
    bin_width = global_bin_width(dataset, config.omega)
    words = [encode(s, model, config, bin_width) for s in dataset.series]
    return model, words


def words_to_json(
    model: BreakpointModel, config: SaxConfig, bin_width: float, words: list[SaxWord]
) -> dict:
    """Word-export document: model parameters plus serialized words."""
    return {
        "alpha": config.alpha,
        "omega": config.omega,
        "mu": model.mu,
        "sigma": model.sigma,
        "breakpoints": [float(b) for b in model.breakpoints],
        "bin_width": bin_width,
        "words": [{"id": w.series_id, "w": w.text} for w in words],
    }


def words_from_json(doc: dict) -> tuple[SaxConfig, BreakpointModel, float, list[SaxWord]]:
    config = SaxConfig(alpha=int(doc["alpha"]), omega=int(doc["omega"]))
    model = BreakpointModel(
        mu=float(doc["mu"]),
        sigma=float(doc["sigma"]),
        breakpoints=np.array(doc["breakpoints"], dtype=np.float64),
    )
    words = [word_from_text(entry["id"], entry["w"]) for entry in doc["words"]]
    return config, model, float(doc["bin_width"]), words
