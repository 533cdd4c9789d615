"""Continuous top-k set-similarity join over sliding windows."""

from .engine import (
    ALGORITHMS,
    LEFT,
    MODES,
    RIGHT,
    EngineConfig,
    JoinEngine,
    brute_force_topk,
)
from .inverted_index import InvertedIndex, PostingList
from .records import (
    RecordSet,
    SlidingWindow,
    StreamFormatError,
    TokenDictionary,
    intern_record,
    iter_stream,
    overlap_count,
    read_records,
)
from .similarity import (
    SimilarityKind,
    at_least_as_good,
    is_better,
    min_overlap,
    positional_upper_bound,
    set_similarity,
    sim,
    sort_key,
    worst_score,
)
from .stock import FullStock, MinimalStock, StockEntry

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "MODES",
    "LEFT",
    "RIGHT",
    "EngineConfig",
    "JoinEngine",
    "brute_force_topk",
    "InvertedIndex",
    "PostingList",
    "RecordSet",
    "SlidingWindow",
    "StreamFormatError",
    "TokenDictionary",
    "intern_record",
    "iter_stream",
    "overlap_count",
    "read_records",
    "SimilarityKind",
    "at_least_as_good",
    "is_better",
    "min_overlap",
    "positional_upper_bound",
    "set_similarity",
    "sim",
    "sort_key",
    "worst_score",
    "FullStock",
    "MinimalStock",
    "StockEntry",
    "__version__",
]
