"""Shared fixtures and independent brute-force oracles.

The oracles recompute everything from the raw id stream with plain Python
loops, deliberately avoiding the package's sparse stores and incremental
updates so the two routes stay independent.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np
import pytest

from tagsplit import TokenStream, count_bigrams


def make_stream(ids, breaks=()) -> TokenStream:
    return TokenStream(
        ids=np.asarray(ids, dtype=np.int32),
        breaks=np.asarray(list(breaks), dtype=np.int64),
    )


def pair_counts_oracle(ids, breaks=()) -> Counter:
    """Adjacent in-segment pairs tallied by a direct scan."""
    breaks = set(int(b) for b in breaks)
    pairs: Counter = Counter()
    for i in range(1, len(ids)):
        if i in breaks:
            continue
        pairs[(int(ids[i - 1]), int(ids[i]))] += 1
    return pairs


def class_matrix_oracle(ids, assignment, C, breaks=()) -> np.ndarray:
    """Class-bigram table recomputed from the raw stream."""
    N = np.zeros((C, C), dtype=np.int64)
    for (w, v), c in pair_counts_oracle(ids, breaks).items():
        N[int(assignment[w]), int(assignment[v])] += c
    return N


def context_oracle(ids, assignment, w, C, breaks=()) -> tuple[np.ndarray, np.ndarray, int]:
    """One word's class-context vectors recomputed from the raw stream."""
    left = np.zeros(C, dtype=np.int64)
    right = np.zeros(C, dtype=np.int64)
    self_count = 0
    for (u, v), c in pair_counts_oracle(ids, breaks).items():
        if u == w:
            left[int(assignment[v])] += c
        if v == w:
            right[int(assignment[u])] += c
        if u == w and v == w:
            self_count = c
    return left, right, self_count


def acmi_oracle(N) -> float:
    """Term-by-term evaluation of the mutual-information sum."""
    N = np.asarray(N)
    T = N.sum()
    row = N.sum(axis=1)
    col = N.sum(axis=0)
    total = 0.0
    for i in range(N.shape[0]):
        for j in range(N.shape[1]):
            if N[i, j] > 0:
                p = N[i, j] / T
                total += p * math.log2(p / ((row[i] / T) * (col[j] / T)))
    return total


def random_instance(seed, V=None, length=None, C=4):
    """A random stream + assignment + store + matrix, reproducible by seed."""
    rng = np.random.default_rng(seed)
    V = V or int(rng.integers(5, 51))
    length = length or int(rng.integers(2 * V, 2001))
    ids = rng.integers(0, V, length).astype(np.int32)
    n_breaks = int(rng.integers(0, max(1, length // 50)))
    breaks = np.unique(rng.integers(1, length, n_breaks)) if n_breaks else []
    stream = make_stream(ids, breaks)
    assignment = rng.integers(0, C, V).astype(np.int32)
    store = count_bigrams(stream, V)
    return stream, assignment, store


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
