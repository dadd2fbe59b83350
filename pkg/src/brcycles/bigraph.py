"""Bitset-row bipartite graphs and 2-edge-colorings of K_{b,b}.

Left vertices x_1..x_L map to indices 0..L-1, right vertices y_1..y_R to
0..R-1. Row ``i`` is an int whose bit ``j`` is set when (x_i, y_j) is an edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Literal, Optional, Sequence

MAX_SIDE = 64

Side = Literal["left", "right"]


class GraphFormatError(ValueError):
    """A serialized graph is malformed; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def bits(mask: int) -> Iterator[int]:
    """Yield set bit indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class VertexSet:
    side: Side
    mask: int

    @classmethod
    def of(cls, side: Side, indices: Iterable[int]) -> "VertexSet":
        return cls(side, mask_of(indices))

    def indices(self) -> list[int]:
        return list(bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()


@dataclass(frozen=True)
class BipartiteGraph:
    left_size: int
    right_size: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not (0 <= self.left_size <= MAX_SIDE and 0 <= self.right_size <= MAX_SIDE):
            raise ValueError(f"side sizes must be in [0, {MAX_SIDE}]")
        if len(self.rows) != self.left_size:
            raise ValueError("rows must have exactly left_size entries")
        limit = full_mask(self.right_size)
        for r in self.rows:
            if r < 0 or r & ~limit:
                raise ValueError("row has a bit at or beyond right_size")

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, left: int, right: Optional[int] = None) -> "BipartiteGraph":
        right = left if right is None else right
        return cls(left, right, (0,) * left)

    @classmethod
    def complete(cls, left: int, right: Optional[int] = None) -> "BipartiteGraph":
        right = left if right is None else right
        return cls(left, right, (full_mask(right),) * left)

    @classmethod
    def from_edges(
        cls, left: int, right: int, edges: Iterable[tuple[int, int]]
    ) -> "BipartiteGraph":
        rows = [0] * left
        for i, j in edges:
            if not (0 <= i < left and 0 <= j < right):
                raise ValueError(f"edge ({i}, {j}) out of range for {left}x{right}")
            rows[i] |= 1 << j
        return cls(left, right, tuple(rows))

    # -- queries ------------------------------------------------------------

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j in bits(r)]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)

    def columns(self) -> tuple[int, ...]:
        """Per-right-vertex bitmask of adjacent left vertices."""
        cols = [0] * self.right_size
        for i, r in enumerate(self.rows):
            for j in bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def neighbors(self, side: Side, v: int) -> VertexSet:
        if side == "left":
            return VertexSet("right", self.rows[v])
        return VertexSet("left", self.columns()[v])

    def degree(self, side: Side, v: int) -> int:
        return len(self.neighbors(side, v))

    def degrees(self, side: Side) -> list[int]:
        if side == "left":
            return [r.bit_count() for r in self.rows]
        return [c.bit_count() for c in self.columns()]

    def max_degree(self) -> int:
        return max(self.degrees("left") + self.degrees("right"), default=0)

    def min_degree(self) -> int:
        return min(self.degrees("left") + self.degrees("right"), default=0)

    # -- derived graphs -----------------------------------------------------

    def with_edge(self, i: int, j: int) -> "BipartiteGraph":
        rows = list(self.rows)
        rows[i] |= 1 << j
        return BipartiteGraph(self.left_size, self.right_size, tuple(rows))

    def without_edge(self, i: int, j: int) -> "BipartiteGraph":
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        return BipartiteGraph(self.left_size, self.right_size, tuple(rows))

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(self.right_size, self.left_size, self.columns())

    def relabel(self, left_perm: Sequence[int], right_perm: Sequence[int]) -> "BipartiteGraph":
        """Image under x_i -> x_{left_perm[i]}, y_j -> y_{right_perm[j]}."""
        rows = [0] * self.left_size
        for i, r in enumerate(self.rows):
            rows[left_perm[i]] = mask_of(right_perm[j] for j in bits(r))
        return BipartiteGraph(self.left_size, self.right_size, tuple(rows))


def complement(g: BipartiteGraph) -> BipartiteGraph:
    full = full_mask(g.right_size)
    return BipartiteGraph(g.left_size, g.right_size, tuple(full & ~r for r in g.rows))


def _compress(mask: int, keep: Sequence[int]) -> int:
    out = 0
    for pos, j in enumerate(keep):
        if mask >> j & 1:
            out |= 1 << pos
    return out


def induced(g: BipartiteGraph, xs: VertexSet, ys: VertexSet) -> BipartiteGraph:
    """Subgraph induced on ``xs`` (left) and ``ys`` (right), reindexed ascending."""
    if xs.side != "left" or ys.side != "right":
        raise ValueError("induced expects a left-side set and a right-side set")
    if xs.mask >> g.left_size or ys.mask >> g.right_size:
        raise ValueError("vertex set exceeds graph dimensions")
    keep = ys.indices()
    rows = tuple(_compress(g.rows[i], keep) for i in xs.indices())
    return BipartiteGraph(len(xs), len(ys), rows)


def contains_complete(
    g: BipartiteGraph, a: int, b: int
) -> Optional[tuple[VertexSet, VertexSet]]:
    """Lexicographically first (left set, right set) spanning a K_{a,b}, or None.

    Left sets are tried in ascending ``combinations`` order; for each, the
    first right ``b``-subset of the common neighbourhood is taken, which is
    the least right set for that left set.
    """
    if a > g.left_size or b > g.right_size:
        raise ValueError("K_{a,b} larger than the host graph")
    if a == 0 or b == 0:
        return VertexSet("left", full_mask(a)), VertexSet("right", full_mask(b))
    for xs in combinations(range(g.left_size), a):
        common = full_mask(g.right_size)
        for i in xs:
            common &= g.rows[i]
        if common.bit_count() >= b:
            ys = list(bits(common))[:b]
            return VertexSet.of("left", xs), VertexSet.of("right", ys)
    return None


def _iso_same_orientation(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    if sorted(g.degrees("left")) != sorted(h.degrees("left")):
        return False
    if sorted(g.degrees("right")) != sorted(h.degrees("right")):
        return False
    n = g.left_size
    g_deg = g.degrees("left")
    h_deg = h.degrees("left")
    g_cols = g.columns()
    h_cols = h.columns()
    used = [False] * n
    # image[i] = h-row assigned to g-row i
    image = [0] * n

    def columns_match(depth: int) -> bool:
        # Column patterns restricted to the first `depth` mapped rows must agree
        # as multisets; any right bijection then exists for that prefix.
        g_pat = sorted(_compress(c, range(depth)) for c in g_cols)
        h_pat = sorted(_compress(c, image[:depth]) for c in h_cols)
        return g_pat == h_pat

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        for t in range(n):
            if used[t] or h_deg[t] != g_deg[depth]:
                continue
            used[t] = True
            image[depth] = t
            if columns_match(depth + 1) and extend(depth + 1):
                return True
            used[t] = False
        return False

    return extend(0)


def are_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Whether some side permutations (or a side swap) carry ``g`` onto ``h``."""
    if g.edge_count() != h.edge_count():
        return False
    if (g.left_size, g.right_size) == (h.left_size, h.right_size):
        if _iso_same_orientation(g, h):
            return True
    if (g.left_size, g.right_size) == (h.right_size, h.left_size):
        return _iso_same_orientation(g.transpose(), h)
    return False


@dataclass(frozen=True)
class TwoColoring:
    """Red subgraph of K_{b_left, b_right}; blue is everything else."""

    board: tuple[int, int]
    red: BipartiteGraph

    def __post_init__(self) -> None:
        if (self.red.left_size, self.red.right_size) != tuple(self.board):
            raise ValueError("red graph dimensions do not match the board")

    @classmethod
    def from_red(cls, red: BipartiteGraph) -> "TwoColoring":
        return cls((red.left_size, red.right_size), red)

    def blue(self) -> BipartiteGraph:
        return complement(self.red)

    def restrict(self, xs: VertexSet, ys: VertexSet) -> "TwoColoring":
        return TwoColoring.from_red(induced(self.red, xs, ys))


# -- JSON ---------------------------------------------------------------------


def graph_to_json(g: BipartiteGraph, compact: bool = False) -> dict:
    out: dict = {"left": g.left_size, "right": g.right_size}
    if compact:
        out["rows_hex"] = [format(r, "x") for r in g.rows]
    else:
        out["edges"] = [[i, j] for i, j in g.edges()]
    return out


def _require_int(data: dict, key: str, lo: int, hi: int) -> int:
    if key not in data:
        raise GraphFormatError(key, "missing")
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool) or not lo <= v <= hi:
        raise GraphFormatError(key, f"expected an integer in [{lo}, {hi}]")
    return v


def graph_from_json(data: dict) -> BipartiteGraph:
    """Parse and validate the graph JSON object; raises GraphFormatError."""
    if not isinstance(data, dict):
        raise GraphFormatError("<root>", "expected a JSON object")
    left = _require_int(data, "left", 0, MAX_SIDE)
    right = _require_int(data, "right", 0, MAX_SIDE)
    if "edges" not in data and "rows_hex" not in data:
        raise GraphFormatError("edges", "need 'edges' or 'rows_hex'")

    from_edges = from_hex = None
    if "edges" in data:
        edges = data["edges"]
        if not isinstance(edges, list):
            raise GraphFormatError("edges", "expected a list")
        pairs = []
        for e in edges:
            if (
                not isinstance(e, list)
                or len(e) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in e)
            ):
                raise GraphFormatError("edges", f"bad edge entry {e!r}")
            i, j = e
            if not 0 <= i < left:
                raise GraphFormatError("edges", f"left index {i} out of range [0, {left})")
            if not 0 <= j < right:
                raise GraphFormatError("edges", f"right index {j} out of range [0, {right})")
            pairs.append((i, j))
        if pairs != sorted(set(pairs)):
            raise GraphFormatError("edges", "edges must be sorted with no duplicates")
        from_edges = BipartiteGraph.from_edges(left, right, pairs)
    if "rows_hex" in data:
        rows_hex = data["rows_hex"]
        if not isinstance(rows_hex, list) or len(rows_hex) != left:
            raise GraphFormatError("rows_hex", f"expected a list of {left} hex strings")
        rows = []
        for s in rows_hex:
            if not isinstance(s, str) or not s or s != s.lower():
                raise GraphFormatError("rows_hex", f"bad hex row {s!r}")
            try:
                r = int(s, 16)
            except ValueError:
                raise GraphFormatError("rows_hex", f"bad hex row {s!r}") from None
            if r >> right:
                raise GraphFormatError("rows_hex", f"row {s!r} sets a bit >= {right}")
            rows.append(r)
        from_hex = BipartiteGraph(left, right, tuple(rows))
    if from_edges is not None and from_hex is not None and from_edges != from_hex:
        raise GraphFormatError("rows_hex", "inconsistent with 'edges'")
    return from_edges if from_edges is not None else from_hex
