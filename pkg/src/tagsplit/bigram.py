"""Word-level bigram counts and the dense class-bigram contingency matrix.

BigramStore holds exact integer counts of adjacent in-segment token pairs,
mirrored as successor and predecessor lists per word.  ClassMatrix is the
C x C table of bigram counts by (left class, right class) with row/column
marginals; moving one word between classes touches only two rows and two
columns, so the matrix is maintained incrementally (apply_move) and kept
bit-identical to a from-scratch rebuild.  ContextBank caches, per word, the
class-context count vectors the incremental update needs.

All counts are int64; probabilities appear only in the objective module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import TokenStream
from .errors import ConsistencyError

MAX_CLASSES = 1024  # dense storage bound: class ids fit a 10-bit path


class BigramStore:
    """Immutable sparse adjacency counts plus the total bigram count T."""

    def __init__(self, V: int, left: np.ndarray, right: np.ndarray, counts: np.ndarray):
        self.V = V
        self.T = int(counts.sum())
        # flat unique triples (left word, right word, count), lex-sorted
        order = np.lexsort((right, left))
        self.left, self.right, self.counts = left[order], right[order], counts[order]
        self._succ_bounds = np.searchsorted(self.left, np.arange(V + 1))
        order_p = np.lexsort((self.left, self.right))
        self._pred_left = self.left[order_p]
        self._pred_right = self.right[order_p]
        self._pred_counts = self.counts[order_p]
        self._pred_bounds = np.searchsorted(self._pred_right, np.arange(V + 1))
        self.succ_total = np.zeros(V, dtype=np.int64)
        np.add.at(self.succ_total, self.left, self.counts)
        self.pred_total = np.zeros(V, dtype=np.int64)
        np.add.at(self.pred_total, self.right, self.counts)
        self.self_count = np.zeros(V, dtype=np.int64)
        diag = self.left == self.right
        self.self_count[self.left[diag]] = self.counts[diag]

    def succ(self, w: int) -> tuple[np.ndarray, np.ndarray]:
        """(successor ids, counts) for bigrams (w, v)."""
        lo, hi = self._succ_bounds[w], self._succ_bounds[w + 1]
        return self.right[lo:hi], self.counts[lo:hi]

    def pred(self, w: int) -> tuple[np.ndarray, np.ndarray]:
        """(predecessor ids, counts) for bigrams (v, w)."""
        lo, hi = self._pred_bounds[w], self._pred_bounds[w + 1]
        return self._pred_left[lo:hi], self._pred_counts[lo:hi]

    def pair_count(self, w: int, v: int) -> int:
        ids, cnts = self.succ(w)
        i = np.searchsorted(ids, v)
        if i < len(ids) and ids[i] == v:
            return int(cnts[i])
        return 0


def count_bigrams(stream: TokenStream, V: int | None = None) -> BigramStore:
    """Count adjacent in-segment pairs once each; breaks sever pairs."""
    ids = np.asarray(stream.ids, dtype=np.int64)
    if V is None:
        V = int(ids.max()) + 1 if len(ids) else 0
    if len(ids) < 2:
        empty = np.zeros(0, dtype=np.int64)
        return BigramStore(V, empty, empty, empty)
    lw = ids[:-1].copy()
    rw = ids[1:].copy()
    keep = np.ones(len(lw), dtype=bool)
    br = np.asarray(stream.breaks, dtype=np.int64)
    br = br[(br > 0) & (br < len(ids))]
    keep[br - 1] = False
    lw, rw = lw[keep], rw[keep]
    key = lw * V + rw
    uniq, cnt = np.unique(key, return_counts=True)
    return BigramStore(V, uniq // V, uniq % V, cnt.astype(np.int64))


class ClassMatrix:
    """Dense C x C class-bigram counts with row/column marginals."""

    def __init__(self, C: int, counts: np.ndarray | None = None):
        if C < 1 or C > MAX_CLASSES:
            raise ValueError(f"class count must be in 1..{MAX_CLASSES}, got {C}")
        self.C = C
        self.counts = np.zeros((C, C), dtype=np.int64) if counts is None else counts
        self.row = self.counts.sum(axis=1)
        self.col = self.counts.sum(axis=0)
        self.T = int(self.counts.sum())

    def copy(self) -> "ClassMatrix":
        m = ClassMatrix(self.C, self.counts.copy())
        return m

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ClassMatrix)
            and self.C == other.C
            and np.array_equal(self.counts, other.counts)
        )


def class_matrix(store: BigramStore, assignment: np.ndarray, C: int) -> ClassMatrix:
    """Tally the class-bigram table from scratch under an assignment."""
    assignment = np.asarray(assignment)
    if len(assignment) < store.V:
        raise ValueError("assignment shorter than vocabulary")
    if len(assignment) and int(assignment.max()) >= C:
        raise ValueError("assignment contains a class id >= C")
    counts = np.zeros((C, C), dtype=np.int64)
    np.add.at(counts, (assignment[store.left], assignment[store.right]), store.counts)
    return ClassMatrix(C, counts)


@dataclass
class ContextVectors:
    """Class-context counts for one word under a fixed assignment.

    left[c]  = number of bigrams (w, v) with v currently in class c
    right[c] = number of bigrams (v, w) with v currently in class c
    self_count = f(w, w), which appears in both vectors at w's own class.
    """

    word: int
    left: np.ndarray
    right: np.ndarray
    self_count: int

    @property
    def succ_total(self) -> int:
        return int(self.left.sum())

    @property
    def pred_total(self) -> int:
        return int(self.right.sum())


def context_vectors(store: BigramStore, assignment: np.ndarray, w: int, C: int) -> ContextVectors:
    """Compute one word's context vectors by a pass over its sparse lists."""
    if w < 0 or w >= store.V:
        raise ValueError(f"unknown word id {w}")
    left = np.zeros(C, dtype=np.int64)
    ids, cnts = store.succ(w)
    np.add.at(left, assignment[ids], cnts)
    right = np.zeros(C, dtype=np.int64)
    ids, cnts = store.pred(w)
    np.add.at(right, assignment[ids], cnts)
    return ContextVectors(w, left, right, int(store.self_count[w]))


class ContextBank:
    """Cached context vectors for every word, repaired incrementally.

    When word u commits a move only the rows of u's sparse neighbours
    change, keeping per-candidate scoring independent of corpus size.
    """

    def __init__(self, store: BigramStore, assignment: np.ndarray, C: int):
        self.store = store
        self.C = C
        a = np.asarray(assignment)
        self.left = np.zeros((store.V, C), dtype=np.int64)
        np.add.at(self.left, (store.left, a[store.right]), store.counts)
        self.right = np.zeros((store.V, C), dtype=np.int64)
        np.add.at(self.right, (store.right, a[store.left]), store.counts)

    def vectors(self, w: int) -> ContextVectors:
        return ContextVectors(
            w, self.left[w], self.right[w], int(self.store.self_count[w])
        )

    def move(self, w: int, frm: int, to: int) -> None:
        """Repair neighbours' vectors after w moved frm -> to."""
        ids, cnts = self.store.pred(w)
        self.left[ids, frm] -= cnts
        self.left[ids, to] += cnts
        ids, cnts = self.store.succ(w)
        self.right[ids, frm] -= cnts
        self.right[ids, to] += cnts


def apply_move(matrix: ClassMatrix, ctx: ContextVectors, frm: int, to: int) -> None:
    """Shift one word's bigram mass between classes, in place.

    Equivalent to deleting the word's mass under frm and re-inserting it
    under to; the result is integer-identical to a from-scratch rebuild
    under the post-move assignment.
    """
    if frm == to:
        raise ValueError("apply_move requires frm != to")
    N = matrix.counts
    L, R, f = ctx.left, ctx.right, ctx.self_count
    N[frm, :] -= L
    N[to, :] += L
    N[:, frm] -= R
    N[:, to] += R
    # the row/column updates park the (w,w) mass on the off-diagonal
    # intersections; land it on (to,to) exactly once
    N[to, to] += f
    N[to, frm] -= f
    N[frm, to] -= f
    N[frm, frm] += f
    sL = int(L.sum())
    sR = int(R.sum())
    matrix.row[frm] -= sL
    matrix.row[to] += sL
    matrix.col[frm] -= sR
    matrix.col[to] += sR
    if (
        N[frm, :].min() < 0
        or N[to, :].min() < 0
        or N[:, frm].min() < 0
        or N[:, to].min() < 0
    ):
        raise ConsistencyError(
            f"apply_move drove a count negative (word {ctx.word}, {frm}->{to}); "
            "context vectors are stale"
        )
