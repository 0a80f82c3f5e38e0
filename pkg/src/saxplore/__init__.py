"""saxplore: explore time-series collections through their SAX words.

The pipeline: z-normalize each series, fit letter breakpoints on the
pooled values, bin every series into a SAX word (gaps where a bin is
empty), cluster the words under a gap-tolerant distance with complete
linkage, and serve the pruned merge tree, per-cluster letter heat maps,
cluster comparisons, and sketch/id queries over HTTP or the CLI.
"""

from .cluster import (
    Dendrogram,
    DistanceMatrix,
    TreeView,
    agglomerate,
    dendrogram_for_words,
    distance_matrix,
    expand_node,
    path_to_leaf,
    prune_tree,
    word_distance,
)
from .dataset import Dataset, TimeSeries, load_dataset, znormalize
from .errors import (
    DegenerateDataError,
    DuplicateSampleError,
    EmptyDatasetError,
    InvalidValueError,
    NotFoundError,
    OversizeError,
    ParseError,
    PatternError,
    SaxploreError,
    SizeError,
    StateError,
)
from .heatmap import (
    BandStats,
    ComparisonHeatMap,
    HeatMap,
    band_stats,
    cluster_heatmap,
    compare_clusters,
)
from .query import (
    QueryResult,
    SketchPattern,
    highlight_branches,
    lookup_by_id,
    search,
    sketch_query,
    sketch_to_regex,
)
from .sax import (
    GAP,
    GAP_CHAR,
    BreakpointModel,
    SaxConfig,
    SaxWord,
    encode,
    encode_dataset,
    fit_breakpoints,
    global_bin_width,
    letter_of,
    word_from_text,
    words_from_json,
    words_to_json,
)
from .session import Session, SessionStore, build_session
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "BandStats",
    "BreakpointModel",
    "ComparisonHeatMap",
    "Dataset",
    "DegenerateDataError",
    "Dendrogram",
    "DistanceMatrix",
    "DuplicateSampleError",
    "EmptyDatasetError",
    "GAP",
    "GAP_CHAR",
    "HeatMap",
    "InvalidValueError",
    "NotFoundError",
    "OversizeError",
    "ParseError",
    "PatternError",
    "QueryResult",
    "SaxConfig",
    "SaxWord",
    "SaxploreError",
    "Session",
    "SessionStore",
    "SizeError",
    "SketchPattern",
    "StateError",
    "TimeSeries",
    "TreeView",
    "agglomerate",
    "band_stats",
    "build_session",
    "cluster_heatmap",
    "compare_clusters",
    "create_app",
    "dendrogram_for_words",
    "distance_matrix",
    "encode",
    "encode_dataset",
    "expand_node",
    "fit_breakpoints",
    "global_bin_width",
    "highlight_branches",
    "letter_of",
    "load_dataset",
    "lookup_by_id",
    "path_to_leaf",
    "prune_tree",
    "search",
    "sketch_query",
    "sketch_to_regex",
    "word_distance",
    "word_from_text",
    "words_from_json",
    "words_to_json",
    "znormalize",
]
