"""Pipeline sessions: one dataset + config pair and everything derived from it.

A session runs normalize -> fit -> encode -> distance matrix -> agglomerate
-> prune once, synchronously, then serves reads off the derived artifacts.
Everything except the tree view is immutable after creation, so concurrent
reads need no coordination; expansion goes through the session lock
(last-writer-wins). Heat maps and comparisons are memoized per session.

The store keeps sessions in memory and can write each one through to a
JSON file, keyed by session id. A cached file stores the raw samples plus
the words and merge list, so reloading skips the distance matrix and
linkage work and reproduces the session bit-for-bit.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .cluster import (
    Dendrogram,
    Merge,
    TreeView,
    agglomerate,
    distance_matrix,
    expand_node,
    prune_tree,
    relabel,
)
from .dataset import Dataset, TimeSeries, znormalize
from .errors import NotFoundError, OversizeError, PatternError
from .heatmap import band_stats, cluster_heatmap, compare_clusters
from .query import QueryResult, SketchPattern, lookup_by_id, sketch_query
from .sax import (
    BreakpointModel,
    SaxConfig,
    SaxWord,
    encode_dataset,
    global_bin_width,
    word_from_text,
)

DEFAULT_MIN_FRACTION = 0.02
DEFAULT_MAX_POINTS = 500
DEFAULT_MAX_SERIES = 10_000


def decimate_indices(values: np.ndarray, max_points: int = DEFAULT_MAX_POINTS) -> np.ndarray:
    """Indices of a transport-sized subset of a series.

    Always keeps the first and last sample, then the minimum and maximum of
    each decimation window, so isolated spikes survive the shrink. Returns
    all indices when the series already fits.
    """
    n = values.size
    if n <= max_points:
        return np.arange(n)
    if max_points < 4:
        raise ValueError(f"max_points must be at least 4, got {max_points}")
    keep = {0, n - 1}
    for w in np.array_split(np.arange(1, n - 1), (max_points - 2) // 2):
        if w.size:
            keep.add(int(w[np.argmin(values[w])]))
            keep.add(int(w[np.argmax(values[w])]))
    return np.array(sorted(keep), dtype=np.int64)


@dataclass(eq=False)
class Session:
    """Derived artifacts of one pipeline run, addressable by node/series id."""

    id: str
    raw: Dataset
    normalized: Dataset
    config: SaxConfig
    model: BreakpointModel
    bin_width: float
    words: list[SaxWord]
    dendrogram: Dendrogram
    view: TreeView
    created_at: datetime
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _heatmaps: dict[str, dict] = field(default_factory=dict, repr=False)
    _comparisons: dict[tuple[str, str, str], dict] = field(default_factory=dict, repr=False)

    @property
    def n_series(self) -> int:
        return len(self.raw)

    def info(self) -> dict:
        return {
            "id": self.id,
            "dataset_id": self.raw.id,
            "n_series": self.n_series,
            "alpha": self.config.alpha,
            "omega": self.config.omega,
            "mu": self.model.mu,
            "sigma": self.model.sigma,
            "breakpoints": [float(b) for b in self.model.breakpoints],
            "bin_width": self.bin_width,
            "min_fraction": self.view.min_fraction,
            "created_at": self.created_at.isoformat(),
        }

    def tree_json(self) -> dict:
        return self.view.to_json()

    def words_for(self, node_id: str) -> list[SaxWord]:
        """Words of every leaf under a node (any node of the dendrogram,
        visible or not)."""
        index = self.dendrogram.node_index(node_id)
        by_id = {w.series_id: w for w in self.words}
        return [by_id[sid] for sid in self.dendrogram.member_ids(index)]

    def heatmap_json(self, node_id: str) -> dict:
        if node_id not in self._heatmaps:
            doc = cluster_heatmap(self.words_for(node_id), self.config).to_json()
            self._heatmaps[node_id] = doc
        return self._heatmaps[node_id]

    def compare_json(self, a: str, b: str, mode: str) -> dict:
        key = (a, b, mode)
        if key not in self._comparisons:
            cmp = compare_clusters(self.words_for(a), self.words_for(b), mode, self.config)
            self._comparisons[key] = cmp.to_json()
        return self._comparisons[key]

    def band_json(self, node_id: str) -> dict:
        return band_stats(self.words_for(node_id), self.config).to_json()

    def _member_payload(self, series_id: str, max_points: int) -> dict:
        raw = self.raw.get(series_id)
        z = self.normalized.get(series_id)
        if raw is None or z is None:
            raise NotFoundError(f"unknown series id {series_id!r}")
        sel = decimate_indices(raw.values, max_points)
        word = next(w for w in self.words if w.series_id == series_id)
        return {
            "id": series_id,
            "word": word.text,
            "meta": dict(z.metadata),
            "n_samples": len(raw),
            "downsampled": sel.size < len(raw),
            "t": raw.timestamps[sel].tolist(),
            "v": raw.values[sel].tolist(),
            "z": z.values[sel].tolist(),
        }

    def series_json(self, series_id: str, max_points: int = DEFAULT_MAX_POINTS) -> dict:
        return self._member_payload(series_id, max_points)

    def cluster_detail_json(self, node_id: str, max_points: int = DEFAULT_MAX_POINTS) -> dict:
        """Members of a node with transport-ready samples, metadata, words."""
        index = self.dendrogram.node_index(node_id)
        member_ids = self.dendrogram.member_ids(index)
        return {
            "node": node_id,
            "size": len(member_ids),
            "members": [self._member_payload(sid, max_points) for sid in member_ids],
        }

    def run_query(self, request: dict) -> QueryResult:
        """Dispatch a query request document: sketch search or id lookup."""
        qtype = request.get("type")
        if qtype == "sketch":
            columns = request.get("columns")
            if not isinstance(columns, list) or not all(isinstance(c, list) for c in columns):
                raise PatternError("sketch query needs 'columns': a list of letter-index lists")
            try:
                pattern = SketchPattern(tuple(frozenset(int(i) for i in c) for c in columns))
            except (TypeError, ValueError):
                raise PatternError("sketch columns must hold integer letter indices") from None
            return sketch_query(pattern, self.config.alpha, self.words, self.dendrogram)
        if qtype == "id":
            series_id = request.get("id")
            if not isinstance(series_id, str):
                raise PatternError("id query needs a string 'id'")
            return lookup_by_id(self.normalized, self.dendrogram, series_id)
        raise PatternError(f"unknown query type {qtype!r}; expected 'sketch' or 'id'")

    def to_json(self) -> dict:
        """Everything needed to restore the session without recomputing."""
        expanded = sorted(self.dendrogram.node_id(i) for i in self.view.expanded)
        return {
            "id": self.id,
            "created_at": self.created_at.isoformat(),
            "dataset_id": self.raw.id,
            "alpha": self.config.alpha,
            "omega": self.config.omega,
            "min_fraction": self.view.min_fraction,
            "mu": self.model.mu,
            "sigma": self.model.sigma,
            "breakpoints": [float(b) for b in self.model.breakpoints],
            "bin_width": self.bin_width,
            "series": [
                {
                    "id": s.id,
                    "t": s.timestamps.tolist(),
                    "v": s.values.tolist(),
                    "meta": dict(s.metadata),
                }
                for s in self.raw.series
            ],
            "words": [{"id": w.series_id, "w": w.text} for w in self.words],
            "merges": [[m.left, m.right, m.height, m.node] for m in self.dendrogram.merges],
            "expanded": expanded,
        }


def build_session(
    raw: Dataset,
    config: SaxConfig,
    *,
    session_id: str | None = None,
    min_fraction: float = DEFAULT_MIN_FRACTION,
) -> Session:
    """Run the full pipeline over a raw dataset."""
    normalized = znormalize(raw)
    model, words = encode_dataset(normalized, config)
    bin_width = global_bin_width(normalized, config.omega)
    matrix = distance_matrix(words, config.omega)
    dendrogram = relabel(agglomerate(matrix), [w.series_id for w in words])
    view = prune_tree(dendrogram, len(raw), min_fraction)
    return Session(
        id=session_id or uuid.uuid4().hex,
        raw=raw,
        normalized=normalized,
        config=config,
        model=model,
        bin_width=bin_width,
        words=words,
        dendrogram=dendrogram,
        view=view,
        created_at=datetime.now(timezone.utc),
    )


def session_from_json(doc: dict) -> Session:
    """Restore a session from its cache document.

    Raw samples are re-normalized (cheap and bit-deterministic); the stored
    words and merge list stand in for the distance matrix and linkage work.
    """
    created_at = datetime.fromisoformat(doc["created_at"])
    raw = Dataset(
        id=doc["dataset_id"],
        series=tuple(
            TimeSeries(s["id"], np.array(s["t"]), np.array(s["v"]), dict(s["meta"]))
            for s in doc["series"]
        ),
        normalized=False,
        created_at=created_at,
    )
    normalized = znormalize(raw)
    config = SaxConfig(alpha=int(doc["alpha"]), omega=int(doc["omega"]))
    model = BreakpointModel(
        mu=float(doc["mu"]),
        sigma=float(doc["sigma"]),
        breakpoints=np.array(doc["breakpoints"], dtype=np.float64),
    )
    words = [word_from_text(w["id"], w["w"]) for w in doc["words"]]
    dendrogram = Dendrogram(
        leaves=tuple(w.series_id for w in words),
        merges=tuple(Merge(int(l), int(r), float(h), int(n)) for l, r, h, n in doc["merges"]),
    )
    view = prune_tree(dendrogram, len(raw), float(doc["min_fraction"]))
    expanded = {dendrogram.node_index(nid) for nid in doc.get("expanded", [])}
    if expanded:
        shown = frozenset().union(*(dendrogram.children(i) for i in expanded))
        view = replace(view, visible=view.visible | shown, expanded=frozenset(expanded))
    return Session(
        id=doc["id"],
        raw=raw,
        normalized=normalized,
        config=config,
        model=model,
        bin_width=float(doc["bin_width"]),
        words=words,
        dendrogram=dendrogram,
        view=view,
        created_at=created_at,
    )


class SessionStore:
    """In-memory session registry with an optional write-through file cache.

    With a cache directory set, every created or expanded session is written
    to ``<dir>/<session id>.json`` and lookups fall back to that file, so a
    restarted process can keep serving old session ids.
    """

    def __init__(
        self,
        max_series: int = DEFAULT_MAX_SERIES,
        cache_dir: str | Path | None = None,
    ):
        self.max_series = max_series
        self.cache_dir = Path(cache_dir) if cache_dir else None
        if self.cache_dir is not None:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(
        self,
        raw: Dataset,
        alpha: int,
        omega: int,
        min_fraction: float = DEFAULT_MIN_FRACTION,
    ) -> Session:
        if len(raw) > self.max_series:
            raise OversizeError(
                f"dataset has {len(raw)} series; this service accepts at most {self.max_series}"
            )
        session = build_session(raw, SaxConfig(alpha=alpha, omega=omega), min_fraction=min_fraction)
        with self._lock:
            self._sessions[session.id] = session
        self._persist(session)
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is not None:
            return session
        session = self._load(session_id)
        if session is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        with self._lock:
            return self._sessions.setdefault(session_id, session)

    def expand(self, session_id: str, node_id: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            session.view = expand_node(session.view, node_id)
        self._persist(session)
        return session

    def _path(self, session_id: str) -> Path:
        return self.cache_dir / f"{session_id}.json"

    def _persist(self, session: Session) -> None:
        if self.cache_dir is None:
            return
        tmp = self._path(session.id).with_suffix(".json.tmp")
        tmp.write_text(json.dumps(session.to_json()), encoding="utf-8")
        tmp.replace(self._path(session.id))

    def _load(self, session_id: str) -> Session | None:
        if self.cache_dir is None or not session_id.isalnum():
            return None
        path = self._path(session_id)
        if not path.exists():
            return None
        return session_from_json(json.loads(path.read_text(encoding="utf-8")))
