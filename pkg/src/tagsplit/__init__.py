"""Hierarchical word-class induction from class-bigram mutual information.

The pipeline: tokenize text (corpus), pool rare words under pseudo-word
banners and encode everything as dense ids (corpus), count word bigrams
(bigram), then split classes level by level, greedily moving words between
sibling classes to maximize average class mutual information (objective,
splitter).  Each word ends up with a bit-string tag describing its path
down the class tree.  The elman module provides a synthetic grammar and a
purity metric for end-to-end checks; cli wires it all to the shell.
"""

__version__ = "0.1.0"

from .bigram import (
    BigramStore,
    ClassMatrix,
    ContextBank,
    ContextVectors,
    apply_move,
    class_matrix,
    context_vectors,
    count_bigrams,
)
from .corpus import (
    BOUNDARY_TOKEN,
    TokenizerOptions,
    TokenStream,
    Vocabulary,
    build_vocabulary,
    classify_rare,
    tokenize,
)
from .errors import (
    ConfigError,
    ConsistencyError,
    CoverageError,
    IngestionError,
    TagsplitError,
    UndefinedObjectiveError,
)
from .objective import EPSILON, LogEvalCounter, MoveDelta, acmi, delta_acmi
from .splitter import (
    MAX_LEVELS,
    STRATEGIES,
    ClusterConfig,
    ClusterState,
    LevelStats,
    Partition,
    TagRow,
    TagTable,
    cluster,
    init_level,
    oracle_min_moves,
    run_level,
)

__all__ = [
    "BOUNDARY_TOKEN",
    "BigramStore",
    "ClassMatrix",
    "ClusterConfig",
    "ClusterState",
    "ConfigError",
    "ConsistencyError",
    "ContextBank",
    "ContextVectors",
    "CoverageError",
    "EPSILON",
    "IngestionError",
    "LevelStats",
    "LogEvalCounter",
    "MAX_LEVELS",
    "MoveDelta",
    "Partition",
    "STRATEGIES",
    "TagRow",
    "TagTable",
    "TagsplitError",
    "TokenStream",
    "TokenizerOptions",
    "UndefinedObjectiveError",
    "Vocabulary",
    "acmi",
    "apply_move",
    "build_vocabulary",
    "class_matrix",
    "classify_rare",
    "cluster",
    "context_vectors",
    "count_bigrams",
    "delta_acmi",
    "init_level",
    "oracle_min_moves",
    "run_level",
    "tokenize",
]
