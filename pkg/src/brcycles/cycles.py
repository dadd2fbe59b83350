"""Exact-length even-cycle detection and the two cycle-extension procedures.

A cycle x_1 y_1 x_2 y_2 ... x_k y_k x_1 is stored as its left sequence
``(x_1, ..., x_k)`` and right sequence ``(y_1, ..., y_k)``; y_i is adjacent
to x_i and to x_{i+1 mod k}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Optional, Sequence

from .bigraph import BipartiteGraph, bits

ORACLE_MAX_SIDE = 6


class HypothesisUnmet(Exception):
    """The lemma's hypothesis does not hold for the given input."""


@dataclass(frozen=True)
class CycleWitness:
    half_length: int
    left_seq: tuple[int, ...]
    right_seq: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.half_length
        if k < 2:
            raise ValueError("a bipartite cycle needs half-length >= 2")
        if len(self.left_seq) != k or len(self.right_seq) != k:
            raise ValueError("sequence lengths must equal half_length")
        if len(set(self.left_seq)) != k or len(set(self.right_seq)) != k:
            raise ValueError("cycle vertices must be distinct")

    @classmethod
    def make(cls, left: Sequence[int], right: Sequence[int]) -> "CycleWitness":
        return cls(len(left), tuple(left), tuple(right)).normalized()

    def edges(self) -> list[tuple[int, int]]:
        k = self.half_length
        out = []
        for i in range(k):
            out.append((self.left_seq[i], self.right_seq[i]))
            out.append((self.left_seq[(i + 1) % k], self.right_seq[i]))
        return out

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def is_valid_in(self, g: BipartiteGraph) -> bool:
        if max(self.left_seq) >= g.left_size or max(self.right_seq) >= g.right_size:
            return False
        return all(g.has_edge(i, j) for i, j in self.edges())

    def contains_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edge_set()

    def normalized(self) -> "CycleWitness":
        """Rotate so x_1 is the least left vertex, reflect so y_1 < y_k."""
        k = self.half_length
        L, R = list(self.left_seq), list(self.right_seq)
        s = L.index(min(L))
        L, R = L[s:] + L[:s], R[s:] + R[:s]
        if R[0] > R[-1]:
            # x_1 y_k x_k y_{k-1} ... x_2 y_1 x_1
            L = [L[0]] + L[:0:-1]
            R = R[::-1]
        return CycleWitness(k, tuple(L), tuple(R))

    def to_json(self) -> dict:
        w = self.normalized()
        return {"k": w.half_length, "left": list(w.left_seq), "right": list(w.right_seq)}

    @classmethod
    def from_json(cls, data: dict) -> "CycleWitness":
        try:
            k, left, right = data["k"], data["left"], data["right"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"witness JSON missing field {exc}") from None
        w = cls(k, tuple(left), tuple(right))
        return w


# -- detection ----------------------------------------------------------------


def _close_path(
    rows: Sequence[int],
    cols: Sequence[int],
    x: int,
    y: int,
    k: int,
    allowed_left: int,
    allowed_right: int,
) -> Optional[tuple[list[int], list[int]]]:
    """Path y -> x_2 -> y_2 -> ... -> x_k -> y_k -> x closing a 2k-cycle through xy.

    Returns (left vertices after x, right vertices after y) or None.
    """
    targets = rows[x] & allowed_right & ~(1 << y)
    if not targets:
        return None
    left_path: list[int] = []
    right_path: list[int] = []

    def dfs(r: int, depth: int, used_l: int, used_r: int) -> bool:
        # `depth` left vertices chosen so far; the next is x_{depth+2}
        cand = cols[r] & allowed_left & ~used_l
        last = depth + 1 == k - 1
        for lv in bits(cand):
            nxt = rows[lv] & allowed_right & ~used_r
            if last:
                hit = nxt & targets
                if hit:
                    left_path.append(lv)
                    right_path.append((hit & -hit).bit_length() - 1)
                    return True
                continue
            left_path.append(lv)
            for rv in bits(nxt):
                right_path.append(rv)
                if dfs(rv, depth + 1, used_l | 1 << lv, used_r | 1 << rv):
                    return True
                right_path.pop()
            left_path.pop()
        return False

    if dfs(y, 0, 1 << x, 1 << y):
        return left_path, right_path
    return None


def cycle_through_edge_exists(
    rows: Sequence[int], cols: Sequence[int], x: int, y: int, k: int
) -> bool:
    """Boolean through-edge check on raw row/column masks (search hot path)."""
    return _close_path(rows, cols, x, y, k, -1, -1) is not None


def find_cycle_through_edge(
    g: BipartiteGraph, k: int, e: tuple[int, int]
) -> Optional[CycleWitness]:
    if k < 2:
        raise ValueError("k must be >= 2")
    x, y = e
    if not (0 <= x < g.left_size and 0 <= y < g.right_size) or not g.has_edge(x, y):
        raise ValueError(f"{e} is not an edge of the graph")
    found = _close_path(g.rows, g.columns(), x, y, k, -1, -1)
    if found is None:
        return None
    left_rest, right_rest = found
    # x y x_2 y_2 ... x_k y_k x: y joins x and x_2, y_k joins x_k and x
    return CycleWitness.make([x] + left_rest, [y] + right_rest)


def _two_core(rows: Sequence[int], cols: Sequence[int]) -> tuple[int, int]:
    """Left and right masks of the 2-core: cycle vertices all have degree >= 2."""
    left = sum(1 << i for i, r in enumerate(rows) if r)
    right = sum(1 << j for j, c in enumerate(cols) if c)
    changed = True
    while changed:
        changed = False
        for i in bits(left):
            if (rows[i] & right).bit_count() < 2:
                left &= ~(1 << i)
                changed = True
        for j in bits(right):
            if (cols[j] & left).bit_count() < 2:
                right &= ~(1 << j)
                changed = True
    return left, right


def find_cycle(g: BipartiteGraph, k: int) -> Optional[CycleWitness]:
    """A cycle of length exactly 2k, anchored at its least left vertex."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > g.left_size or k > g.right_size:
        return None
    rows = g.rows
    cols = g.columns()
    core_left, core_right = _two_core(rows, cols)
    if core_left.bit_count() < k or core_right.bit_count() < k:
        return None
    for x in bits(core_left):
        # lefts strictly above the anchor
        allowed_left = core_left & ~((1 << (x + 1)) - 1)
        if allowed_left.bit_count() < k - 1:
            break
        for y in bits(rows[x] & core_right):
            found = _close_path(rows, cols, x, y, k, allowed_left, core_right)
            if found is not None:
                left_rest, right_rest = found
                return CycleWitness.make([x] + left_rest, [y] + right_rest)
    return None


# -- brute-force oracle -------------------------------------------------------


def _oracle_arrangements(g: BipartiteGraph, k: int):
    if g.left_size > ORACLE_MAX_SIDE or g.right_size > ORACLE_MAX_SIDE:
        raise ValueError(f"oracle refuses graphs above {ORACLE_MAX_SIDE} per side")
    if k < 2:
        raise ValueError("k must be >= 2")
    for lset in combinations(range(g.left_size), k):
        for rset in combinations(range(g.right_size), k):
            for lrest in permutations(lset[1:]):
                left = (lset[0],) + lrest
                for right in permutations(rset):
                    yield left, right


def _oracle_valid(g: BipartiteGraph, left, right) -> bool:
    k = len(left)
    rows = g.rows
    for i in range(k):
        if not (rows[left[i]] >> right[i] & 1 and rows[left[(i + 1) % k]] >> right[i] & 1):
            return False
    return True


def oracle_find_cycle(g: BipartiteGraph, k: int) -> Optional[CycleWitness]:
    """Brute force over vertex selections and cyclic orders; independent of find_cycle."""
    for left, right in _oracle_arrangements(g, k):
        if _oracle_valid(g, left, right):
            return CycleWitness(k, left, right)
    return None


def oracle_count_cycles(g: BipartiteGraph, k: int) -> int:
    """Number of distinct 2k-cycle subgraphs (as edge sets)."""
    seen = set()
    for left, right in _oracle_arrangements(g, k):
        if _oracle_valid(g, left, right):
            seen.add(CycleWitness(k, left, right).edge_set())
    return len(seen)


def complete_cycle_count(n: int, k: int) -> int:
    """Closed form for the number of 2k-cycles in K_{n,n}."""
    return math.comb(n, k) ** 2 * math.factorial(k) * math.factorial(k - 1) // 2


# -- cycle extension ----------------------------------------------------------


def _check_off_cycle(g: BipartiteGraph, c: CycleWitness, x: int, y: int) -> None:
    if x in c.left_seq or y in c.right_seq:
        raise ValueError("x and y must not lie on the cycle")
    if not (0 <= x < g.left_size and 0 <= y < g.right_size):
        raise ValueError("x or y outside the graph")


def extend_lemma1(
    g: BipartiteGraph, c: CycleWitness, x: int, y: int
) -> Optional[CycleWitness]:
    """Insert x and y into ``c`` to get a cycle two vertices longer.

    Pattern C' (x_i, x_{i+1} ~ y and y_i, y_{i+1} ~ x) is tried at every i
    before falling back to C'' (xy an edge, x_i ~ y, y_i ~ x).
    """
    _check_off_cycle(g, c, x, y)
    if not c.is_valid_in(g):
        raise ValueError("cycle is not valid in the graph")
    k = c.half_length
    L, R = c.left_seq, c.right_seq
    nx, ny = g.rows[x], g.columns()[y]

    def rotated(t: int) -> tuple[list[int], list[int]]:
        return list(L[t:] + L[:t]), list(R[t:] + R[:t])

    for t in range(k):
        u = (t + 1) % k
        if ny >> L[t] & 1 and ny >> L[u] & 1 and nx >> R[t] & 1 and nx >> R[u] & 1:
            Lr, Rr = rotated(t)
            # x_t y x_{t+1} y_t x y_{t+1} x_{t+2} ...
            w = CycleWitness.make(Lr[:2] + [x] + Lr[2:], [y] + Rr)
            assert w.is_valid_in(g)
            return w
    if g.has_edge(x, y):
        for t in range(k):
            if ny >> L[t] & 1 and nx >> R[t] & 1:
                Lr, Rr = rotated(t)
                # x_t y x y_t x_{t+1} ...
                w = CycleWitness.make(Lr[:1] + [x] + Lr[1:], [y] + Rr)
                assert w.is_valid_in(g)
                return w
    return None


def lemma2_hypothesis(g: BipartiteGraph, c: CycleWitness, x: int, y: int) -> bool:
    k = c.half_length
    on_x = sum(1 for j in c.right_seq if g.has_edge(x, j))
    on_y = sum(1 for i in c.left_seq if g.has_edge(i, y))
    if g.has_edge(x, y):
        need = math.ceil(k / 2) + 1
    else:
        need = k - 1
    return on_x >= need and on_y >= need


def extend_lemma2(
    g: BipartiteGraph, c: CycleWitness, x: int, y: int
) -> CycleWitness:
    """Cycle of half-length k+1 through V(c) + {x, y} under the lemma's degree hypothesis.

    Raises HypothesisUnmet when the neighbour counts fall short. When xy is not
    an edge the one-step insertion can miss; the fallback is an exact search
    on the induced subgraph spanned by c, x and y.
    """
    k = c.half_length
    if k < 4:
        raise HypothesisUnmet("the lemma needs a cycle of half-length >= 4")
    if g.left_size < k + 1 or g.right_size < k + 1:
        raise HypothesisUnmet("the host needs at least k+1 vertices per side")
    _check_off_cycle(g, c, x, y)
    if not lemma2_hypothesis(g, c, x, y):
        raise HypothesisUnmet("x or y has too few neighbours on the cycle")
    w = extend_lemma1(g, c, x, y)
    if w is not None:
        return w
    w = _spanning_cycle(g, list(c.left_seq) + [x], list(c.right_seq) + [y])
    if w is None:
        raise AssertionError("lemma hypothesis holds but no longer cycle exists")
    return w


def _spanning_cycle(
    g: BipartiteGraph, lefts: Sequence[int], rights: Sequence[int]
) -> Optional[CycleWitness]:
    """Hamiltonian cycle of the subgraph induced on the given vertices."""
    k = len(lefts)
    allowed_l = sum(1 << i for i in lefts)
    allowed_r = sum(1 << j for j in rights)
    rows, cols = g.rows, g.columns()
    x0 = min(lefts)
    for y in bits(rows[x0] & allowed_r):
        found = _close_path(rows, cols, x0, y, k, allowed_l, allowed_r)
        if found is not None:
            return CycleWitness.make([x0] + found[0], [y] + found[1])
    return None
