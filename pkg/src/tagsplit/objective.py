"""Average class mutual information (ACMI) and its incremental delta.

ACMI is the mutual information, in bits, between the class of a token and
the class of its successor:

    sum over cells with N(i,j) > 0 of  p(i,j) * log2(p(i,j) / (pl(i)*pr(j)))

with p(i,j) = N(i,j)/T and directional (left/right) marginals.  Zero cells
contribute nothing, so empty classes are representable.

Moving one word between classes changes only two rows and two columns of
the matrix, so the change in ACMI is evaluated over those cells alone,
before and after: at most 8(C-1) log-term evaluations per candidate move
instead of a full C^2 rescan.  Logarithms are the expensive unit; an
optional counter exposes exactly how many were taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bigram import ClassMatrix, ContextVectors
from .errors import ConsistencyError, UndefinedObjectiveError

# Improvement threshold: deltas in (-EPSILON, EPSILON] are non-improving,
# so floating-point noise can never drive the search loops.
EPSILON = 1e-12


class LogEvalCounter:
    """Counts log-term evaluations inside delta_acmi."""

    __slots__ = ("last_call", "total", "calls")

    def __init__(self) -> None:
        self.last_call = 0
        self.total = 0
        self.calls = 0

    def _begin(self) -> None:
        self.last_call = 0
        self.calls += 1

    def _add(self, n: int) -> None:
        self.last_call += n
        self.total += n


@dataclass(frozen=True)
class MoveDelta:
    word: int
    frm: int
    to: int
    delta: float


def acmi(matrix: ClassMatrix) -> float:
    """Full-matrix ACMI in bits; requires at least one bigram."""
    if matrix.T == 0:
        raise UndefinedObjectiveError("ACMI is undefined on an empty matrix (T = 0)")
    N = matrix.counts
    i, j = np.nonzero(N)
    x = N[i, j].astype(np.float64)
    T = float(matrix.T)
    ratio = (x * T) / (matrix.row[i].astype(np.float64) * matrix.col[j].astype(np.float64))
    value = float(np.dot(x / T, np.log2(ratio)))
    if value < 0.0:
        if value < -1e-9:
            raise ConsistencyError(f"ACMI evaluated to {value}, below zero")
        value = 0.0
    return value


def _cell_term(x: int, rm: int, cm: int, T: float, counter: LogEvalCounter | None) -> float:
    if x <= 0:
        return 0.0
    if counter is not None:
        counter._add(1)
    return (x / T) * math.log2((x * T) / (float(rm) * float(cm)))


def _lines_sum(
    row_a, row_b, rm_a, rm_b,
    col_a, col_b, cm_a, cm_b,
    rows_marg, cols_marg, a, b, T,
    counter: LogEvalCounter | None,
) -> float:
    """Term sum over rows {a, b} and columns {a, b} of one matrix state.

    The four intersection cells are evaluated exactly once, from the
    explicit corner values in row_a/row_b.  One fused masked pass covers
    the remaining 4C - 8 cells, so a call evaluates at most 4(C - 1)
    log terms.
    """
    C = len(row_a)
    vals = np.concatenate((row_a, row_b, col_a, col_b)).astype(np.float64)
    # zero the corners inside every block; they get scalar treatment below
    for base in (0, C, 2 * C, 3 * C):
        vals[base + a] = 0.0
        vals[base + b] = 0.0
    line = np.repeat(np.array([rm_a, rm_b, cm_a, cm_b], dtype=np.float64), C)
    cross = np.concatenate((cols_marg, cols_marg, rows_marg, rows_marg)).astype(np.float64)
    m = vals > 0.0
    s = 0.0
    if m.any():
        x = vals[m]
        if counter is not None:
            counter._add(int(m.sum()))
        s = float(np.dot(x, np.log2((x * T) / (line[m] * cross[m])))) / T
    s += _cell_term(int(row_a[a]), rm_a, cm_a, T, counter)
    s += _cell_term(int(row_a[b]), rm_a, cm_b, T, counter)
    s += _cell_term(int(row_b[a]), rm_b, cm_a, T, counter)
    s += _cell_term(int(row_b[b]), rm_b, cm_b, T, counter)
    return s


def pair_before_sum(
    matrix: ClassMatrix, a: int, b: int, counter: LogEvalCounter | None = None
) -> float:
    """Term sum over rows {a, b} and columns {a, b} of the current matrix.

    This is the "before" half of delta_acmi; it depends only on the class
    pair, so a search loop can share it across every candidate word of the
    pair within one scoring pass.
    """
    N = matrix.counts
    return _lines_sum(
        N[a, :], N[b, :], int(matrix.row[a]), int(matrix.row[b]),
        N[:, a], N[:, b], int(matrix.col[a]), int(matrix.col[b]),
        matrix.row, matrix.col, a, b, float(matrix.T),
        counter,
    )


def delta_acmi(
    matrix: ClassMatrix,
    ctx: ContextVectors,
    frm: int,
    to: int,
    counter: LogEvalCounter | None = None,
    before_sum: float | None = None,
) -> MoveDelta:
    """Change in ACMI if ctx.word moved frm -> to; the matrix is untouched.

    Only cells in rows {frm, to} and columns {frm, to} can change, so the
    sum of their terms is evaluated under the current counts and under the
    post-move counts; everything else cancels exactly.  At most 8(C-1) log
    terms are taken per call.  Callers scoring many words of the same class
    pair against one matrix state may pass a shared pair_before_sum().
    """
    if frm == to:
        raise ValueError("delta_acmi requires frm != to")
    if matrix.T == 0:
        raise UndefinedObjectiveError("ACMI is undefined on an empty matrix (T = 0)")
    if counter is not None:
        counter._begin()
    N = matrix.counts
    row, col = matrix.row, matrix.col
    T = float(matrix.T)
    a, b = frm, to
    L, R, f = ctx.left, ctx.right, ctx.self_count
    sL = int(L.sum())
    sR = int(R.sum())

    if before_sum is None:
        before_sum = _lines_sum(
            N[a, :], N[b, :], int(row[a]), int(row[b]),
            N[:, a], N[:, b], int(col[a]), int(col[b]),
            row, col, a, b, T,
            counter,
        )

    row_a2 = N[a, :] - L
    row_b2 = N[b, :] + L
    col_a2 = N[:, a] - R
    col_b2 = N[:, b] + R
    # exact post-move corner cells; the (w,w) mass lands on (to,to)
    row_a2[a] = col_a2[a] = N[a, a] - L[a] - R[a] + f
    row_a2[b] = col_b2[a] = N[a, b] - L[b] + R[a] - f
    row_b2[a] = col_a2[b] = N[b, a] + L[a] - R[b] - f
    row_b2[b] = col_b2[b] = N[b, b] + L[b] + R[b] + f
    rm_a2, rm_b2 = int(row[a]) - sL, int(row[b]) + sL
    cm_a2, cm_b2 = int(col[a]) - sR, int(col[b]) + sR

    if min(row_a2.min(), row_b2.min(), col_a2.min(), col_b2.min()) < 0:
        raise ConsistencyError(
            f"negative post-move count for word {ctx.word} ({frm}->{to}); "
            "context vectors are stale"
        )

    row2 = row.copy()
    col2 = col.copy()
    row2[a], row2[b] = rm_a2, rm_b2
    col2[a], col2[b] = cm_a2, cm_b2
    after = _lines_sum(
        row_a2, row_b2, rm_a2, rm_b2,
        col_a2, col_b2, cm_a2, cm_b2,
        row2, col2, a, b, T,
        counter,
    )
    return MoveDelta(ctx.word, frm, to, after - before_sum)
