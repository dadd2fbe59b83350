"""Symmetry-reduced exhaustive search over 2-edge-colorings of K_{b,b}.

Cells of the b x b matrix are colored in row-major order, red before blue.
A branch dies as soon as the last colored edge closes a red C_{2m} or a blue
C_{2n}; only cycles through that edge need checking because colors are never
removed along a branch.

Symmetry breaking (red = 1 > blue = 0):

* rows are lexicographically non-increasing,
* columns are lexicographically non-increasing,
* when m == n, cell (0, 0) is red.

Row and column lex orders can be imposed together: alternately sorting rows
and columns strictly increases the matrix in a fixed total order, so every
orbit under row/column permutations holds a doubly-sorted member. With the
sorted order the first row is a red prefix, so (0, 0) is blue only for the
all-blue coloring, whose color swap is the all-red one.

A "holds" verdict is a search attestation; unlike counterexamples it carries
no independently checkable certificate.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional

from .bigraph import BipartiteGraph, MAX_SIDE, TwoColoring, VertexSet, full_mask, graph_to_json
from .constructions import lower_bound_board, lower_bound_coloring
from .cycles import cycle_through_edge_exists, find_cycle

log = logging.getLogger(__name__)

Verdict = Literal["holds", "counterexample", "timeout"]

CHECK_INTERVAL = 1 << 8
DEFAULT_SPLIT_ROWS = 2


@dataclass(frozen=True)
class RamseyQuery:
    b: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.b < 1 or self.b > MAX_SIDE:
            raise ValueError(f"b must be in [1, {MAX_SIDE}]")
        if self.m < 2 or self.n < 2:
            raise ValueError("m and n must be >= 2")


@dataclass
class SearchStats:
    nodes: int = 0
    prunes_red: int = 0
    prunes_blue: int = 0
    prunes_sym: int = 0
    elapsed_ms: float = 0.0
    workers: int = 1
    deterministic: bool = False
    resource_exhausted: bool = False
    seeded: bool = False

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.prunes_red += other.prunes_red
        self.prunes_blue += other.prunes_blue
        self.prunes_sym += other.prunes_sym


@dataclass
class SearchOutcome:
    query: RamseyQuery
    verdict: Verdict
    witness: Optional[TwoColoring] = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __post_init__(self) -> None:
        if (self.verdict == "counterexample") != (self.witness is not None):
            raise ValueError("a witness is present exactly for counterexample verdicts")

    def witness_is_valid(self) -> bool:
        if self.witness is None:
            return False
        q = self.query
        return (
            self.witness.board == (q.b, q.b)
            and find_cycle(self.witness.red, q.m) is None
            and find_cycle(self.witness.blue(), q.n) is None
        )

    def to_json(self, compact: bool = False) -> dict:
        stats = {
            "nodes": self.stats.nodes,
            "prunes_red": self.stats.prunes_red,
            "prunes_blue": self.stats.prunes_blue,
            "prunes_sym": self.stats.prunes_sym,
            "elapsed_ms": round(self.stats.elapsed_ms, 3),
            "workers": self.stats.workers,
        }
        if self.stats.resource_exhausted:
            stats["resource_exhausted"] = True
        if self.stats.seeded:
            stats["seeded"] = True
        return {
            "query": asdict(self.query),
            "verdict": self.verdict,
            "witness": None if self.witness is None else graph_to_json(self.witness.red, compact),
            "stats": stats,
        }


class _Timeout(Exception):
    pass


class _Cancelled(Exception):
    pass


class _Searcher:
    """Mutable DFS state for one query; one instance per worker."""

    def __init__(self, b: int, m: int, n: int, deadline: float, cancel=None, symmetry: bool = True):
        self.b, self.m, self.n = b, m, n
        self.symmetry = symmetry
        self.deadline = deadline
        self.cancel = cancel
        self.red_rows = [0] * b
        self.blue_rows = [0] * b
        self.red_cols = [0] * b
        self.blue_cols = [0] * b
        self.stats = SearchStats()

    def load(self, prefix: tuple[int, ...]) -> None:
        """Apply a red-row prefix (fully colored rows)."""
        full = full_mask(self.b)
        for r, red in enumerate(prefix):
            self.red_rows[r] = red
            self.blue_rows[r] = full & ~red
            for c in range(self.b):
                if red >> c & 1:
                    self.red_cols[c] |= 1 << r
                else:
                    self.blue_cols[c] |= 1 << r

    def run(self, start_row: int, stop_row: int, collect: Optional[list] = None) -> Optional[tuple[int, ...]]:
        """DFS from the first cell of ``start_row``.

        Reaching ``stop_row`` either records the red-row prefix into
        ``collect`` (work splitting) or, when ``collect`` is None and
        ``stop_row == b``, returns it as a counterexample.
        """
        b, m, n = self.b, self.m, self.n
        red_rows, blue_rows = self.red_rows, self.blue_rows
        red_cols, blue_cols = self.red_cols, self.blue_cols
        stats = self.stats
        sym = self.symmetry
        swap_fix = sym and m == n
        start = start_row * b
        end = stop_row * b
        # choice[p]: 0 = try red next, 1 = try blue next, 2 = exhausted
        choice = [0] * (end + 1)
        p = start
        nodes = 0
        since_check = CHECK_INTERVAL - 1  # check on the first node too
        while True:
            if p == end:
                prefix = tuple(red_rows[:stop_row])
                if collect is None:
                    stats.nodes += nodes
                    return prefix
                collect.append(prefix)
                p -= 1
                if p < start:
                    break
                r, c = divmod(p, b)
                self._undo(r, c, choice[p] == 1)
                continue
            opt = choice[p]
            if opt == 2:
                choice[p] = 0
                p -= 1
                if p < start:
                    break
                r, c = divmod(p, b)
                self._undo(r, c, choice[p] == 1)
                continue
            choice[p] = opt + 1
            r, c = divmod(p, b)
            red = opt == 0
            nodes += 1
            since_check += 1
            if since_check >= CHECK_INTERVAL:
                since_check = 0
                if time.monotonic() > self.deadline:
                    stats.nodes += nodes
                    raise _Timeout
                if self.cancel is not None and self.cancel.is_set():
                    stats.nodes += nodes
                    raise _Cancelled
            v = 1 if red else 0
            # column lex: if columns c-1, c agree on rows < r, need cell <= left neighbour
            if sym and c and not ((red_cols[c - 1] ^ red_cols[c]) & ((1 << r) - 1)):
                if v > (red_rows[r] >> (c - 1) & 1):
                    stats.prunes_sym += 1
                    continue
            # row lex: if rows r-1, r agree on columns < c, need cell <= cell above
            if sym and r and not ((red_rows[r - 1] ^ red_rows[r]) & ((1 << c) - 1)):
                if v > (red_rows[r - 1] >> c & 1):
                    stats.prunes_sym += 1
                    continue
            if swap_fix and p == 0 and not red:
                stats.prunes_sym += 1
                continue
            if red:
                red_rows[r] |= 1 << c
                red_cols[c] |= 1 << r
                if cycle_through_edge_exists(red_rows, red_cols, r, c, m):
                    red_rows[r] &= ~(1 << c)
                    red_cols[c] &= ~(1 << r)
                    stats.prunes_red += 1
                    continue
            else:
                blue_rows[r] |= 1 << c
                blue_cols[c] |= 1 << r
                if cycle_through_edge_exists(blue_rows, blue_cols, r, c, n):
                    blue_rows[r] &= ~(1 << c)
                    blue_cols[c] &= ~(1 << r)
                    stats.prunes_blue += 1
                    continue
            p += 1
        stats.nodes += nodes
        return None

    def _undo(self, r: int, c: int, was_red: bool) -> None:
        if was_red:
            self.red_rows[r] &= ~(1 << c)
            self.red_cols[c] &= ~(1 << r)
        else:
            self.blue_rows[r] &= ~(1 << c)
            self.blue_cols[c] &= ~(1 << r)


def _coloring_from_rows(b: int, red_rows: tuple[int, ...]) -> TwoColoring:
    return TwoColoring.from_red(BipartiteGraph(b, b, tuple(red_rows)))


def seeded_counterexample(q: RamseyQuery) -> Optional[TwoColoring]:
    """The known extremal coloring cut down to K_{b,b}, or None if b is too large."""
    board = lower_bound_board(q.m, q.n)
    if q.b > board:
        return None
    _, coloring = lower_bound_coloring(q.m, q.n)
    keep = VertexSet("left", full_mask(q.b)), VertexSet("right", full_mask(q.b))
    sub = coloring.restrict(*keep)
    if find_cycle(sub.red, q.m) is not None or find_cycle(sub.blue(), q.n) is not None:
        raise AssertionError("restricted construction contains a forbidden cycle")
    return sub


# -- worker-side entry points ---------------------------------------------------

_worker_cancel = None


def _worker_init(cancel) -> None:
    global _worker_cancel
    _worker_cancel = cancel


def _solve_subtree(b: int, m: int, n: int, prefix: tuple[int, ...], deadline: float, symmetry: bool):
    s = _Searcher(b, m, n, deadline, _worker_cancel, symmetry)
    if time.monotonic() > deadline:
        return "timeout", None, s.stats
    s.load(prefix)
    try:
        found = s.run(len(prefix), b)
        status = "done"
    except _Timeout:
        found, status = None, "timeout"
    except _Cancelled:
        found, status = None, "cancelled"
    except MemoryError:
        found, status = None, "exhausted"
    return status, found, s.stats


def _split(
    b: int, m: int, n: int, rows: int, deadline: float, symmetry: bool, stats: SearchStats
) -> list[tuple[int, ...]]:
    s = _Searcher(b, m, n, deadline, symmetry=symmetry)
    prefixes: list[tuple[int, ...]] = []
    s.run(0, rows, collect=prefixes)
    stats.merge(s.stats)
    return prefixes


def decide(
    q: RamseyQuery,
    budget: float = 300.0,
    workers: int = 1,
    deterministic: bool = False,
    use_seed: bool = True,
    split_rows: int = DEFAULT_SPLIT_ROWS,
    symmetry: bool = True,
) -> SearchOutcome:
    """Does every 2-coloring of K_{b,b} hold a red C_2m or a blue C_2n?

    ``use_seed`` short-circuits with the known extremal coloring when it fits
    on the board; it is ignored in deterministic mode, whose counterexample is
    the first in search order. ``symmetry=False`` drops the lex and
    color-swap constraints (for cross-checking only; far slower).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.monotonic()
    deadline = t0 + budget
    stats = SearchStats(workers=workers, deterministic=deterministic)

    def finish(verdict: Verdict, witness: Optional[TwoColoring] = None) -> SearchOutcome:
        stats.elapsed_ms = (time.monotonic() - t0) * 1000.0
        out = SearchOutcome(q, verdict, witness, stats)
        if verdict == "counterexample" and not out.witness_is_valid():
            raise AssertionError("search returned an invalid counterexample")
        return out

    if use_seed and not deterministic:
        seed = seeded_counterexample(q)
        if seed is not None:
            stats.seeded = True
            return finish("counterexample", seed)

    try:
        if workers == 1 or q.b <= split_rows:
            s = _Searcher(q.b, q.m, q.n, deadline, symmetry=symmetry)
            try:
                found = s.run(0, q.b)
            finally:
                stats.merge(s.stats)
            if found is None:
                return finish("holds")
            return finish("counterexample", _coloring_from_rows(q.b, found))
        return _decide_parallel(q, deadline, workers, deterministic, split_rows, symmetry, stats, finish)
    except _Timeout:
        return finish("timeout")
    except MemoryError:
        stats.resource_exhausted = True
        return finish("timeout")


def _decide_parallel(q, deadline, workers, deterministic, split_rows, symmetry, stats, finish) -> SearchOutcome:
    prefixes = _split(q.b, q.m, q.n, split_rows, deadline, symmetry, stats)
    log.debug("split %s into %d subtrees", q, len(prefixes))
    if not prefixes:
        return finish("holds")
    ctx = mp.get_context("spawn")
    cancel = ctx.Event()
    best: Optional[tuple[int, tuple[int, ...]]] = None
    timed_out = exhausted = False
    with ProcessPoolExecutor(workers, mp_context=ctx, initializer=_worker_init, initargs=(cancel,)) as pool:
        futures = {
            pool.submit(_solve_subtree, q.b, q.m, q.n, pre, deadline, symmetry): idx
            for idx, pre in enumerate(prefixes)
        }
        pending = set(futures)
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                if fut.cancelled():
                    continue
                status, found, sub = fut.result()
                stats.merge(sub)
                idx = futures[fut]
                if status == "timeout":
                    timed_out = True
                elif status == "exhausted":
                    exhausted = True
                if found is not None and (best is None or idx < best[0]):
                    best = (idx, found)
            if best is not None and not deterministic:
                cancel.set()
            if deterministic and best is not None:
                # subtrees after the best one cannot hold an earlier witness
                for fut in list(pending):
                    if futures[fut] > best[0]:
                        fut.cancel()
            if timed_out:
                cancel.set()
                for fut in pending:
                    fut.cancel()
        for fut in futures:
            fut.cancel()
    if best is not None and (not deterministic or not timed_out):
        return finish("counterexample", _coloring_from_rows(q.b, best[1]))
    if timed_out or exhausted:
        stats.resource_exhausted = exhausted
        return finish("timeout")
    return finish("holds")


@dataclass
class BRResult:
    m: int
    n: int
    value: Optional[int]
    outcomes: list[SearchOutcome]


def compute_br(
    m: int,
    n: int,
    max_b: int,
    budget: float = 300.0,
    workers: int = 1,
    use_seed: bool = True,
) -> BRResult:
    """Smallest b <= max_b at which ``decide`` holds, scanning b upward.

    ``budget`` is shared by the whole scan. Any timeout ends the scan with
    value None and the partial per-b table.
    """
    if max_b > MAX_SIDE:
        raise ValueError(f"max_b must be <= {MAX_SIDE}")
    deadline = time.monotonic() + budget
    outcomes: list[SearchOutcome] = []
    for b in range(1, max_b + 1):
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return BRResult(m, n, None, outcomes)
        out = decide(RamseyQuery(b, m, n), remaining, workers, use_seed=use_seed)
        outcomes.append(out)
        if out.verdict == "timeout":
            return BRResult(m, n, None, outcomes)
        if out.verdict == "holds":
            return BRResult(m, n, b, outcomes)
    return BRResult(m, n, None, outcomes)
