"""Sketch-grid queries, regex search over words, id lookups, branch highlights.

A sketch is an ordered list of per-column letter sets drawn on an
alpha x omega grid. Columns compile to regular-expression pieces: a single
letter stands for itself, several letters become a character class, and an
empty column is a wildcard that accepts any letter but never a gap (a gap
is absence of data, not "any value"). The compiled pattern matches any
contiguous substring of a word's serialized letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cluster import Dendrogram, path_to_leaf
from .dataset import Dataset
from .errors import NotFoundError, PatternError
from .sax import SaxWord

SOURCE_SKETCH = "sketch"
SOURCE_ID = "id-lookup"


@dataclass(frozen=True)
class SketchPattern:
    """Ordered letter-set columns; an empty set is a wildcard column."""

    columns: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(frozenset(c) for c in self.columns))


@dataclass(frozen=True)
class QueryResult:
    matched_ids: frozenset[str]
    highlight_nodes: frozenset[str]
    pattern_source: str

    def to_json(self) -> dict:
        return {
            "matched_ids": sorted(self.matched_ids),
            "highlight_nodes": sorted(self.highlight_nodes),
            "pattern_source": self.pattern_source,
        }


def sketch_to_regex(pattern: SketchPattern, alpha: int) -> str:
    """Compile a sketch into a regex string over the letters 'a'..'z'."""
    if not pattern.columns:
        raise PatternError("sketch has no columns")
    if all(not c for c in pattern.columns):
        raise PatternError("sketch needs at least one non-empty column")
    every = "".join(chr(ord("a") + i) for i in range(alpha))
    parts = []
    for col in pattern.columns:
        if any(not 0 <= i < alpha for i in col):
            raise PatternError(f"letter index out of range for alpha={alpha}")
        if not col:
            parts.append(f"[{every}]")
        elif len(col) == 1:
            parts.append(chr(ord("a") + next(iter(col))))
        else:
            parts.append("[" + "".join(chr(ord("a") + i) for i in sorted(col)) + "]")
    return "".join(parts)


def search(pattern: str, words: list[SaxWord]) -> set[str]:
    """Series ids whose serialized word contains a match of the pattern.

    Gaps serialize as '_', which no letter class matches, so a gap always
    breaks a match.
    """
    try:
        rx = re.compile(pattern)
    except re.error as exc:
        raise PatternError(f"cannot compile pattern {pattern!r}: {exc}") from None
    return {w.series_id for w in words if rx.search(w.text)}


def highlight_branches(dendrogram: Dendrogram, matched_ids: set[str]) -> set[str]:
    """Union of the root paths of all matched leaves.

    Climbs stop at the first already-highlighted ancestor, so the work is
    linear in the number of distinct highlighted nodes.
    """
    seen: set[int] = set()
    for sid in matched_ids:
        index = dendrogram.node_index(sid)
        if not dendrogram.is_leaf(index):
            raise NotFoundError(f"{sid!r} is not a leaf")
        while index != -1 and index not in seen:
            seen.add(index)
            index = dendrogram.parent(index)
    return {dendrogram.node_id(i) for i in seen}


def lookup_by_id(dataset: Dataset, dendrogram: Dendrogram, series_id: str) -> QueryResult:
    """Locate one observation and light up its root path."""
    if dataset.get(series_id) is None:
        raise NotFoundError(f"unknown series id {series_id!r}")
    path = path_to_leaf(dendrogram, series_id)
    return QueryResult(
        matched_ids=frozenset({series_id}),
        highlight_nodes=frozenset(path),
        pattern_source=SOURCE_ID,
    )


def sketch_query(
    pattern: SketchPattern, alpha: int, words: list[SaxWord], dendrogram: Dendrogram
) -> QueryResult:
    """Compile, search, and resolve highlights in one step."""
    rx = sketch_to_regex(pattern, alpha)
    matched = search(rx, words)
    return QueryResult(
        matched_ids=frozenset(matched),
        highlight_nodes=frozenset(highlight_branches(dendrogram, matched)),
        pattern_source=SOURCE_SKETCH,
    )
