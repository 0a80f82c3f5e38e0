"""Cluster aggregation: letter-proportion heat maps, difference maps, bands.

A cluster's heat map is an alpha x omega grid; cell (l, t) holds the
fraction of member words carrying letter l in time bin t. Gap cells and
positions past a word's end accumulate into a separate per-bin gap vector,
so every time column sums to one. Two clusters are compared by subtracting
their grids (proportions or raw counts), and each cluster's per-bin letter
ranks are summarized as mean +/- population deviation bands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeError
from .sax import GAP, SaxConfig, SaxWord

MODE_COUNTS = "counts"
MODE_PERCENT = "percent"
MODES = (MODE_COUNTS, MODE_PERCENT)

# exported alongside band stats: letters map to ordinal ranks a=0, b=1, ...
RANK_SCALE = "ordinal"


@dataclass(frozen=True, eq=False)
class HeatMap:
    """Letter proportions per time bin for one cluster."""

    alpha: int
    omega: int
    cells: np.ndarray  # (alpha, omega) in [0, 1]
    gap: np.ndarray  # (omega,) in [0, 1]
    cluster_size: int

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "omega": self.omega,
            "size": self.cluster_size,
            "cells": self.cells.tolist(),
            "gap": self.gap.tolist(),
        }


@dataclass(frozen=True, eq=False)
class BandStats:
    """Per-bin mean and population deviation of letter ranks, gaps excluded.

    mean is NaN where a bin has no letter at all (support 0); std is 0
    whenever support <= 1.
    """

    mean: np.ndarray
    std: np.ndarray
    support: np.ndarray

    def to_json(self) -> dict:
        return {
            "mean": [None if np.isnan(m) else float(m) for m in self.mean],
            "std": self.std.tolist(),
            "support": self.support.tolist(),
            "ranks": RANK_SCALE,
        }


@dataclass(frozen=True, eq=False)
class ComparisonHeatMap:
    """Signed A-minus-B difference grid plus both clusters' bands."""

    mode: str
    alpha: int
    omega: int
    size_a: int
    size_b: int
    diff: np.ndarray  # (alpha, omega); positive = cluster A
    gap_diff: np.ndarray  # (omega,)
    band_a: BandStats
    band_b: BandStats

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "alpha": self.alpha,
            "omega": self.omega,
            "size_a": self.size_a,
            "size_b": self.size_b,
            "diff": self.diff.tolist(),
            "gap_diff": self.gap_diff.tolist(),
            "band_a": self.band_a.to_json(),
            "band_b": self.band_b.to_json(),
        }


def _letter_counts(words: list[SaxWord], config: SaxConfig) -> tuple[np.ndarray, np.ndarray]:
    """Raw per-bin letter counts (alpha, omega) and gap counts (omega,).

    A position is a gap if the word has GAP there or is shorter than the
    bin index.
    """
    if not words:
        raise SizeError("cluster contains no words")
    alpha, omega = config.alpha, config.omega
    counts = np.zeros((alpha, omega), dtype=np.int64)
    gaps = np.full(omega, len(words), dtype=np.int64)
    for w in words:
        if len(w) > omega:
            raise ValueError(f"word {w.series_id!r} is longer than omega={omega}")
        codes = w.codes
        present = codes != GAP
        pos = np.flatnonzero(present)
        np.add.at(counts, (codes[pos], pos), 1)
        gaps[pos] -= 1
    return counts, gaps


def cluster_heatmap(words: list[SaxWord], config: SaxConfig) -> HeatMap:
    """Aggregate one cluster's words into letter proportions per bin."""
    counts, gaps = _letter_counts(words, config)
    size = len(words)
    return HeatMap(
        alpha=config.alpha,
        omega=config.omega,
        cells=counts / size,
        gap=gaps / size,
        cluster_size=size,
    )


def band_stats(words: list[SaxWord], config: SaxConfig) -> BandStats:
    """Mean and population deviation of per-bin letter ranks (a=0, b=1, ...)."""
    counts, _ = _letter_counts(words, config)
    support = counts.sum(axis=0)
    ranks = np.arange(config.alpha, dtype=np.float64)

    with np.errstate(invalid="ignore", divide="ignore"):
        mean = (ranks @ counts) / support
        var = (ranks**2 @ counts) / support - mean**2
    std = np.sqrt(np.maximum(var, 0.0))
    std[support <= 1] = 0.0
    mean[support == 0] = np.nan
    std[support == 0] = 0.0
    return BandStats(mean=mean, std=std, support=support)


def compare_clusters(
    a: list[SaxWord], b: list[SaxWord], mode: str, config: SaxConfig
) -> ComparisonHeatMap:
    """Difference heat map between two clusters.

    Percent mode subtracts each cluster's own proportions (entries in
    [-1, 1]); counts mode subtracts raw letter counts. Positive values
    belong to cluster A, negative to B.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    counts_a, gaps_a = _letter_counts(a, config)
    counts_b, gaps_b = _letter_counts(b, config)
    if mode == MODE_PERCENT:
        diff = counts_a / len(a) - counts_b / len(b)
        gap_diff = gaps_a / len(a) - gaps_b / len(b)
    else:
        diff = counts_a - counts_b
        gap_diff = gaps_a - gaps_b
    return ComparisonHeatMap(
        mode=mode,
        alpha=config.alpha,
        omega=config.omega,
        size_a=len(a),
        size_b=len(b),
        diff=diff,
        gap_diff=gap_diff,
        band_a=band_stats(a, config),
        band_b=band_stats(b, config),
    )
