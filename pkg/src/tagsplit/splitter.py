"""Top-down binary splitting of word classes by greedy ACMI ascent.

Each level appends one bit to every word's class id: class c splits into
children 2c (bit 0) and 2c+1 (bit 1), and a local search moves words
between sibling children while the move improves average class mutual
information.  Three strategies are provided:

  m     random initial bit per word per level; each iteration commits the
        single best move over all words.
  znr   non-random initialization: every word starts in the bit-0 child
        and the bit-1 child starts empty, so the search only has to exile
        the minority.  One best move per iteration, as for m.
  znrp  znr plus parallel moves: each iteration commits one best candidate
        per parent class; if the combined batch lowered the objective,
        moves are retracted one at a time, lowest-scoring first, until it
        no longer sits below the iteration-start value.

Classes reduced to a single word are carried down unchanged (bit 0) and
their word's tag stops growing at that depth.  Pinned words take their
prescribed bits, contribute fully to all counts, and are never moved.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .bigram import BigramStore, ContextBank, apply_move, class_matrix
from .corpus import Vocabulary
from .errors import ConfigError, ConsistencyError, IngestionError
from .objective import EPSILON, acmi, delta_acmi, pair_before_sum

MAX_LEVELS = 10  # 2**10 = 1024 classes, the dense-matrix bound

STRATEGY_RANDOM = "m"
STRATEGY_NONRANDOM = "znr"
STRATEGY_PARALLEL = "znrp"
STRATEGIES = (STRATEGY_RANDOM, STRATEGY_NONRANDOM, STRATEGY_PARALLEL)


@dataclass
class ClusterConfig:
    """Knobs for a clustering run; see module docstring for strategies."""

    strategy: str = STRATEGY_PARALLEL
    levels: int = MAX_LEVELS
    seed: int = 0
    epsilon: float = EPSILON
    max_iterations_per_level: int | None = None  # defaults to 4*V
    pinned: dict[str, str] | None = None  # surface -> bit path

    def __post_init__(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ConfigError(
                f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}"
            )
        if not 1 <= self.levels <= MAX_LEVELS:
            raise ConfigError(
                f"levels must be between 1 and {MAX_LEVELS} "
                f"(at most 2^{MAX_LEVELS} = 1024 classes), got {self.levels}"
            )
        if self.epsilon < 0:
            raise ConfigError("epsilon must be non-negative")
        if self.pinned:
            for surface, path in self.pinned.items():
                if not path or set(path) - {"0", "1"}:
                    raise ConfigError(
                        f"pinned path for {surface!r} must be a non-empty bit string, "
                        f"got {path!r}"
                    )


@dataclass
class Partition:
    """Word -> class assignment at one level; ids are accumulated bit paths."""

    level: int
    class_of: np.ndarray  # int32, values < 2**level

    @property
    def C(self) -> int:
        return 1 << self.level

    @staticmethod
    def root(V: int) -> "Partition":
        return Partition(0, np.zeros(V, dtype=np.int32))


@dataclass(frozen=True)
class TagRow:
    surface: str
    bits: str
    frequency: int
    class_id: int


@dataclass
class TagTable:
    rows: list[TagRow]

    def bits_by_surface(self) -> dict[str, str]:
        return {r.surface: r.bits for r in self.rows}

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class LevelStats:
    level: int
    iterations: int
    committed_moves: int
    retracted_moves: int
    acmi_before: float
    acmi_after: float
    wall_time: float
    capped: bool = False
    acmi_trace: list[float] = field(default_factory=list)
    moved_words: list[int] = field(default_factory=list)


def init_level(
    partition: Partition,
    strategy: str,
    seed: int = 0,
    pinned_bits: dict[int, int] | None = None,
    frozen: np.ndarray | None = None,
) -> Partition:
    """Assign every word its next bit, producing the level-L+1 partition.

    Strategy m draws bits from a generator seeded by (seed, level); znr and
    znrp put every word in the bit-0 child.  Words flagged frozen ride
    along with bit 0; pinned_bits overrides both.
    """
    if partition.level + 1 > MAX_LEVELS:
        raise ConfigError(
            f"cannot split beyond level {MAX_LEVELS} (1024-class cap)"
        )
    V = len(partition.class_of)
    if strategy == STRATEGY_RANDOM:
        rng = np.random.default_rng((seed, partition.level))
        bits = rng.integers(0, 2, V, dtype=np.int32)
    elif strategy in (STRATEGY_NONRANDOM, STRATEGY_PARALLEL):
        bits = np.zeros(V, dtype=np.int32)
    else:
        raise ConfigError(f"unknown strategy {strategy!r}")
    if frozen is not None:
        bits[frozen] = 0
    if pinned_bits:
        for w, b in pinned_bits.items():
            bits[w] = b
    class_of = (partition.class_of.astype(np.int32) << 1) + bits
    return Partition(partition.level + 1, class_of)


class ClusterState:
    """Mutable search state for one level: matrix, context cache, assignment.

    Single-writer: commits are serialized; scoring reads a consistent
    snapshot between commits.
    """

    def __init__(
        self,
        store: BigramStore,
        assignment: np.ndarray,
        level: int,
        pinned_mask: np.ndarray | None = None,
        epsilon: float = EPSILON,
        max_iterations: int | None = None,
    ):
        self.store = store
        self.level = level
        self.C = 1 << level
        self.assignment = np.asarray(assignment, dtype=np.int32).copy()
        self.matrix = class_matrix(store, self.assignment, self.C)
        self.bank = ContextBank(store, self.assignment, self.C)
        self.class_sizes = np.bincount(self.assignment, minlength=self.C)
        self.pinned_mask = (
            np.zeros(store.V, dtype=bool) if pinned_mask is None else pinned_mask
        )
        self.epsilon = epsilon
        self.max_iterations = 4 * store.V if max_iterations is None else max_iterations
        self.acmi = acmi(self.matrix)
        self.moves_log: list[tuple[int, int, int]] = []

    def eligible_words(self) -> np.ndarray:
        """Unpinned words whose class still has company (movable)."""
        movable = ~self.pinned_mask & (self.class_sizes[self.assignment] >= 2)
        return np.nonzero(movable)[0]

    def _shift(self, w: int, frm: int, to: int) -> None:
        apply_move(self.matrix, self.bank.vectors(w), frm, to)
        self.bank.move(w, frm, to)
        self.assignment[w] = to
        self.class_sizes[frm] -= 1
        self.class_sizes[to] += 1

    def commit(self, w: int, to: int) -> None:
        frm = int(self.assignment[w])
        self._shift(w, frm, to)
        self.moves_log.append((w, frm, to))

    def retract(self, w: int, back_to: int) -> None:
        self._shift(w, int(self.assignment[w]), back_to)


def _pair_before(state: ClusterState, cache: dict[int, float], parent: int) -> float:
    # the before half of the delta depends only on the sibling pair, so all
    # of a pair's candidates share it within one scoring pass
    s = cache.get(parent)
    if s is None:
        s = cache[parent] = pair_before_sum(state.matrix, 2 * parent, 2 * parent + 1)
    return s


def _single_move_iteration(state: ClusterState) -> tuple[bool, int, int]:
    best_w = -1
    best_d = state.epsilon
    a = state.assignment
    before: dict[int, float] = {}
    for w in state.eligible_words():
        frm = int(a[w])
        d = delta_acmi(
            state.matrix,
            state.bank.vectors(w),
            frm,
            frm ^ 1,
            before_sum=_pair_before(state, before, frm >> 1),
        ).delta
        if d > best_d:
            best_d, best_w = d, int(w)
    if best_w < 0:
        return False, 0, 0
    state.commit(best_w, int(a[best_w]) ^ 1)
    state.acmi += best_d
    return True, 1, 0


def _parallel_iteration(state: ClusterState) -> tuple[bool, int, int]:
    # score against the matrix and context vectors frozen at iteration
    # start, so the per-parent selections are order-independent
    a = state.assignment
    best: dict[int, tuple[float, int]] = {}
    before: dict[int, float] = {}
    for w in state.eligible_words():
        frm = int(a[w])
        parent = frm >> 1
        d = delta_acmi(
            state.matrix,
            state.bank.vectors(w),
            frm,
            frm ^ 1,
            before_sum=_pair_before(state, before, parent),
        ).delta
        if d > state.epsilon and (parent not in best or d > best[parent][0]):
            best[parent] = (d, int(w))
    if not best:
        return False, 0, 0
    acmi_start = state.acmi
    committed: list[tuple[float, int, int]] = []  # (frozen delta, word, old class)
    for parent in sorted(best):
        d, w = best[parent]
        frm = int(a[w])
        state.commit(w, frm ^ 1)
        committed.append((d, w, frm))
    state.acmi = acmi(state.matrix)
    n_retracted = 0
    if state.acmi < acmi_start:
        committed.sort(key=lambda t: (t[0], t[1]))  # lowest scoring word first
        for d, w, frm in committed:
            if state.acmi >= acmi_start:
                break
            state.retract(w, frm)
            state.acmi = acmi(state.matrix)
            n_retracted += 1
    net = len(committed) - n_retracted
    progressed = net > 0 and (state.acmi - acmi_start) > state.epsilon
    return progressed, len(committed), n_retracted


def run_level(state: ClusterState, strategy: str) -> LevelStats:
    """Greedy ACMI ascent at one level until no move improves it."""
    t0 = time.perf_counter()
    acmi_before = state.acmi
    iterations = committed = retracted = 0
    capped = False
    trace: list[float] = []
    step = (
        _parallel_iteration if strategy == STRATEGY_PARALLEL else _single_move_iteration
    )
    while True:
        if iterations >= state.max_iterations:
            capped = True
            break
        progressed, n_c, n_r = step(state)
        committed += n_c
        retracted += n_r
        if not progressed:
            break
        iterations += 1
        trace.append(state.acmi)
    exact = acmi(state.matrix)
    if abs(exact - state.acmi) > 1e-6:
        raise ConsistencyError(
            f"running ACMI drifted from recomputed value by {abs(exact - state.acmi)}"
        )
    state.acmi = exact
    return LevelStats(
        level=state.level,
        iterations=iterations,
        committed_moves=committed,
        retracted_moves=retracted,
        acmi_before=acmi_before,
        acmi_after=exact,
        wall_time=time.perf_counter() - t0,
        capped=capped,
        acmi_trace=trace,
        moved_words=[w for w, _, _ in state.moves_log],
    )


def _resolve_pins(vocab: Vocabulary, config: ClusterConfig) -> dict[int, str]:
    pins: dict[int, str] = {}
    for surface, path in (config.pinned or {}).items():
        if surface not in vocab.index:
            raise ConfigError(f"pinned word {surface!r} is not in the vocabulary")
        pins[vocab.index[surface]] = path[: config.levels]
    return pins


def cluster(
    vocab: Vocabulary, store: BigramStore, config: ClusterConfig
) -> tuple[TagTable, list[LevelStats]]:
    """Run init + search for levels 1..s and emit the structured tags.

    znr and znrp runs are bit-identical across repeated invocations; m
    depends only on config.seed.
    """
    V = vocab.size
    if V < 2:
        raise IngestionError(f"need at least 2 vocabulary entries, got {V}")
    if store.T == 0:
        raise IngestionError("empty corpus: no bigrams to cluster on")
    pins = _resolve_pins(vocab, config)
    pinned_mask = np.zeros(V, dtype=bool)
    for w in pins:
        pinned_mask[w] = True

    partition = Partition.root(V)
    frozen_depth = np.full(V, -1, dtype=np.int32)
    stats: list[LevelStats] = []
    for level in range(1, config.levels + 1):
        sizes = np.bincount(partition.class_of, minlength=partition.C)
        lonely = sizes[partition.class_of] <= 1
        for w in np.nonzero(lonely & (frozen_depth < 0))[0]:
            # a pinned word keeps following its path before freezing
            if pinned_mask[w] and len(pins[int(w)]) > partition.level:
                continue
            frozen_depth[w] = partition.level
        pinned_bits = {
            w: int(path[level - 1]) for w, path in pins.items() if len(path) >= level
        }
        partition = init_level(
            partition,
            config.strategy,
            seed=config.seed,
            pinned_bits=pinned_bits,
            frozen=frozen_depth >= 0,
        )
        state = ClusterState(
            store,
            partition.class_of,
            level,
            pinned_mask=pinned_mask,
            epsilon=config.epsilon,
            max_iterations=config.max_iterations_per_level,
        )
        stats.append(run_level(state, config.strategy))
        partition = Partition(level, state.assignment)

    s = config.levels
    depths = np.where(frozen_depth >= 0, frozen_depth, s)
    rows = []
    for e in vocab.entries:
        d = int(depths[e.word_id])
        cid = int(partition.class_of[e.word_id]) >> (s - d)
        rows.append(TagRow(e.surface, format(cid, f"0{d}b"), e.frequency, cid))
    return TagTable(rows), stats


def oracle_min_moves(
    V: int, target: tuple[int, int], trials: int = 100, seed: int = 0
) -> float:
    """Monte-Carlo mean of the minimum moves from random bits to a target split.

    Per trial each word draws a uniform bit; the cost is the smaller, over
    the two ways of labelling the classes, of the number of words on the
    wrong side of the (n1, n2) target partition.
    """
    n1, n2 = target
    if n1 + n2 != V or n1 < 0 or n2 < 0:
        raise ConfigError(f"target {target} does not partition V={V}")
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    total = 0
    for _ in range(trials):
        bits = rng.integers(0, 2, V)
        wrong = int((bits[:n1] == 1).sum() + (bits[n1:] == 0).sum())
        total += min(wrong, V - wrong)
    return total / trials
