"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration / ingestion / coverage
problems exit with 2, internal consistency failures with 3.
"""


class TagsplitError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(TagsplitError):
    """A parameter is outside its documented range (e.g. top_k = 0)."""


class IngestionError(TagsplitError):
    """Input data cannot be used (empty corpus, undecodable bytes, ...)."""


class ConsistencyError(TagsplitError):
    """An internal invariant was violated, e.g. a count went negative.

    Signals stale context vectors or corrupted clustering state; never a
    user error.
    """


class UndefinedObjectiveError(TagsplitError):
    """The objective is undefined because the matrix holds no bigrams."""


class CoverageError(TagsplitError):
    """A tag table does not cover every word required by an evaluation."""
