"""Bipartite Ramsey numbers of even cycles: constructions, cycle tools and search."""

from .bigraph import (
    BipartiteGraph,
    TwoColoring,
    VertexSet,
    are_isomorphic,
    complement,
    contains_complete,
    induced,
)
from .constructions import (
    ConstructionReport,
    figure1_graph,
    lower_bound_certificate,
    proposition1_check,
    theorem4_construction,
)
from .cycles import (
    CycleWitness,
    HypothesisUnmet,
    extend_lemma1,
    extend_lemma2,
    find_cycle,
    find_cycle_through_edge,
    oracle_find_cycle,
)
from .search import RamseyQuery, SearchOutcome, compute_br, decide, seeded_counterexample

__all__ = [
    "BipartiteGraph",
    "ConstructionReport",
    "CycleWitness",
    "HypothesisUnmet",
    "RamseyQuery",
    "SearchOutcome",
    "TwoColoring",
    "VertexSet",
    "are_isomorphic",
    "complement",
    "compute_br",
    "contains_complete",
    "decide",
    "extend_lemma1",
    "extend_lemma2",
    "figure1_graph",
    "find_cycle",
    "find_cycle_through_edge",
    "induced",
    "lower_bound_certificate",
    "oracle_find_cycle",
    "proposition1_check",
    "seeded_counterexample",
    "theorem4_construction",
]
