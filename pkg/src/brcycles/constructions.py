"""Extremal colorings that certify lower bounds, and the K_{3,4} forcing check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal, Optional

from .bigraph import (
    BipartiteGraph,
    TwoColoring,
    contains_complete,
    full_mask,
    graph_from_json,
    graph_to_json,
)
from .cycles import CycleWitness, HypothesisUnmet, find_cycle


class ConstructionError(AssertionError):
    """A construction failed its own absence check."""


@dataclass(frozen=True)
class ConstructionReport:
    construction_id: str
    coloring: TwoColoring
    checked_red_k: int
    checked_blue_k: int
    red_cycle_absent: bool
    blue_cycle_absent: bool

    @property
    def board(self) -> int:
        return self.coloring.board[0]

    @property
    def passed(self) -> bool:
        return self.red_cycle_absent and self.blue_cycle_absent

    def to_json(self, compact: bool = False) -> dict:
        return {
            "id": self.construction_id,
            "board": self.board,
            "red_k": self.checked_red_k,
            "blue_k": self.checked_blue_k,
            "coloring": graph_to_json(self.coloring.red, compact=compact),
            "red_absent": self.red_cycle_absent,
            "blue_absent": self.blue_cycle_absent,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionReport":
        red = graph_from_json(data["coloring"])
        return cls(
            construction_id=data["id"],
            coloring=TwoColoring.from_red(red),
            checked_red_k=data["red_k"],
            checked_blue_k=data["blue_k"],
            red_cycle_absent=data["red_absent"],
            blue_cycle_absent=data["blue_absent"],
        )


def check_coloring(construction_id: str, coloring: TwoColoring, m: int, n: int) -> ConstructionReport:
    """Run both absence checks; the flags are computed, never assumed."""
    return ConstructionReport(
        construction_id=construction_id,
        coloring=coloring,
        checked_red_k=m,
        checked_blue_k=n,
        red_cycle_absent=find_cycle(coloring.red, m) is None,
        blue_cycle_absent=find_cycle(coloring.blue(), n) is None,
    )


def recheck_report(report: ConstructionReport) -> bool:
    """Independently recompute a report's flags and compare."""
    fresh = check_coloring(
        report.construction_id, report.coloring, report.checked_red_k, report.checked_blue_k
    )
    return (
        fresh.red_cycle_absent == report.red_cycle_absent
        and fresh.blue_cycle_absent == report.blue_cycle_absent
        and report.coloring.board[0] == report.coloring.board[1]
    )


def theorem4_construction(m: int, n: int) -> TwoColoring:
    """K_{m+n-2, m+n-2}: the first m-1 rows red, the remaining n-1 rows blue."""
    if m < 2 or n < 2:
        raise ValueError("m and n must be >= 2")
    b = m + n - 2
    full = full_mask(b)
    rows = tuple(full if i < m - 1 else 0 for i in range(b))
    return TwoColoring.from_red(BipartiteGraph(b, b, rows))


# Red neighbourhoods of x_1..x_7 (0-based right indices).
_FIGURE1_ADJ = (
    (0, 1, 2),
    (0, 1, 2),
    (0, 1, 2),
    (0, 1, 2, 3, 4, 5, 6),
    (4, 5, 6),
    (4, 5, 6),
    (4, 5, 6),
)


def figure1_graph() -> TwoColoring:
    """The 7x7 coloring with neither a red nor a blue C_8."""
    edges = [(i, j) for i, adj in enumerate(_FIGURE1_ADJ) for j in adj]
    return TwoColoring.from_red(BipartiteGraph.from_edges(7, 7, edges))


def lower_bound_board(m: int, n: int) -> int:
    if m < 2 or n < 2:
        raise ValueError("m and n must be >= 2")
    return 7 if (m, n) == (4, 4) else m + n - 2


def lower_bound_coloring(m: int, n: int) -> tuple[str, TwoColoring]:
    lower_bound_board(m, n)
    if (m, n) == (4, 4):
        return "figure1", figure1_graph()
    return f"theorem4(m={m},n={n})", theorem4_construction(m, n)


def lower_bound_certificate(m: int, n: int) -> ConstructionReport:
    """Checked report for the strongest known coloring: BR(C_2m, C_2n) > board."""
    cid, coloring = lower_bound_coloring(m, n)
    report = check_coloring(cid, coloring, m, n)
    if not report.passed:
        raise ConstructionError(f"{cid} contains a forbidden cycle")
    return report


# -- K_{3,4} forcing ----------------------------------------------------------


@dataclass(frozen=True)
class Proposition1Verdict:
    side: Literal["red", "blue", "neither"]
    witness: Optional[CycleWitness]


def proposition1_check(g: BipartiteGraph) -> Proposition1Verdict:
    """Which color of the 8x8 coloring (g, complement) holds a C_8.

    Red is tried first. A "neither" verdict would refute the forcing claim.
    """
    if (g.left_size, g.right_size) != (8, 8):
        raise HypothesisUnmet("graph must be 8x8")
    if contains_complete(g, 3, 4) is None:
        raise HypothesisUnmet("graph does not contain K_{3,4}")
    w = find_cycle(g, 4)
    if w is not None:
        return Proposition1Verdict("red", w)
    coloring = TwoColoring.from_red(g)
    w = find_cycle(coloring.blue(), 4)
    if w is not None:
        return Proposition1Verdict("blue", w)
    return Proposition1Verdict("neither", None)


def planted_k34(rng: random.Random, density: float = 0.5) -> BipartiteGraph:
    """8x8 graph with K_{3,4} on {0,1,2} x {0,1,2,3}; other slots i.i.d. red with ``density``."""
    rows = []
    for i in range(8):
        if density == 0.5:
            r = rng.getrandbits(8)
        else:
            r = sum(1 << j for j in range(8) if rng.random() < density)
        if i < 3:
            r |= 0b1111
        rows.append(r)
    return BipartiteGraph(8, 8, tuple(rows))


@dataclass(frozen=True)
class SweepReport:
    seed: int
    samples: int
    red: int
    blue: int
    neither: int
    counterexamples: tuple[BipartiteGraph, ...]


def proposition1_sweep(samples: int, seed: int = 0, density: float = 0.5) -> SweepReport:
    rng = random.Random(seed)
    counts = {"red": 0, "blue": 0, "neither": 0}
    bad = []
    for _ in range(samples):
        g = planted_k34(rng, density)
        v = proposition1_check(g)
        counts[v.side] += 1
        if v.side == "neither":
            bad.append(g)
    return SweepReport(seed, samples, counts["red"], counts["blue"], counts["neither"], tuple(bad))
