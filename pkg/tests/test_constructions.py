import random

import pytest

from brcycles.bigraph import BipartiteGraph, are_isomorphic, complement
from brcycles.constructions import (
    ConstructionError,
    ConstructionReport,
    check_coloring,
    figure1_graph,
    lower_bound_board,
    lower_bound_certificate,
    planted_k34,
    proposition1_check,
    proposition1_sweep,
    recheck_report,
    theorem4_construction,
)
from brcycles.cycles import HypothesisUnmet, find_cycle


def test_theorem4_small_cases():
    c = theorem4_construction(4, 2)
    assert c.board == (4, 4)
    assert c.red.rows == (0xF, 0xF, 0xF, 0)
    assert find_cycle(c.red, 4) is None and find_cycle(c.blue(), 2) is None

    c = theorem4_construction(2, 2)
    assert c.board == (2, 2) and c.red.rows == (0b11, 0)
    assert find_cycle(c.red, 2) is None and find_cycle(c.blue(), 2) is None


def test_theorem4_m4_n5():
    c = theorem4_construction(4, 5)
    assert c.board == (7, 7)
    assert c.red.rows[:3] == (0x7F,) * 3 and c.red.rows[3:] == (0,) * 4
    assert find_cycle(c.red, 4) is None and find_cycle(c.blue(), 5) is None
    # one row fewer would not be tight: a larger cycle in each color does fit
    assert find_cycle(c.red, 3) is not None and find_cycle(c.blue(), 4) is not None


def test_theorem4_rejects_small_parameters():
    with pytest.raises(ValueError):
        theorem4_construction(1, 2)


def test_figure1_adjacency():
    red = figure1_graph().red
    expected = {0: {0, 1, 2}, 1: {0, 1, 2}, 2: {0, 1, 2}, 3: set(range(7)), 4: {4, 5, 6}, 5: {4, 5, 6}, 6: {4, 5, 6}}
    for i, adj in expected.items():
        assert red.neighbors("left", i).indices() == sorted(adj)
    assert red.edge_count() == 25
    assert figure1_graph().blue().edge_count() == 24


def test_figure1_claims():
    c = figure1_graph()
    assert find_cycle(c.red, 4) is None
    assert find_cycle(c.blue(), 4) is None
    assert are_isomorphic(c.blue(), c.red.without_edge(3, 3))
    # only the x_4 y_4 deletion is claimed; the full graph is not isomorphic
    assert not are_isomorphic(c.blue(), c.red)


def test_figure1_reflection_symmetry():
    red = figure1_graph().red
    flip = [6 - i for i in range(7)]
    assert red.relabel(flip, flip) == red
    assert are_isomorphic(red, red.relabel(flip, flip))


def test_lower_bound_certificate_figure1():
    rep = lower_bound_certificate(4, 4)
    assert rep.construction_id == "figure1"
    assert rep.board == 7 and rep.passed


@pytest.mark.parametrize("n", range(5, 13))
def test_lower_bound_certificate_c8_family(n):
    rep = lower_bound_certificate(4, n)
    assert rep.board == n + 2
    assert rep.red_cycle_absent and rep.blue_cycle_absent


def test_lower_bound_board_rule():
    assert lower_bound_certificate(2, 2).board == 2
    for m in range(2, 8):
        for n in range(2, 8):
            assert lower_bound_board(m, n) == (7 if (m, n) == (4, 4) else m + n - 2)


def test_report_json_round_trip_and_recheck():
    rep = lower_bound_certificate(4, 4)
    for compact in (False, True):
        data = rep.to_json(compact=compact)
        assert set(data) == {"id", "board", "red_k", "blue_k", "coloring", "red_absent", "blue_absent"}
        back = ConstructionReport.from_json(data)
        assert back == rep
        assert recheck_report(back)


def test_recheck_catches_forged_report():
    forged = check_coloring("forged", theorem4_construction(4, 2), 3, 2)
    assert not forged.red_cycle_absent
    data = forged.to_json() | {"red_absent": True}
    assert not recheck_report(ConstructionReport.from_json(data))


def test_lower_bound_certificate_raises_on_defect(monkeypatch):
    import brcycles.constructions as mod

    monkeypatch.setattr(mod, "theorem4_construction", lambda m, n: theorem4_construction(m + 1, n))
    with pytest.raises(ConstructionError):
        lower_bound_certificate(3, 3)


def test_proposition1_on_complete_graph():
    v = proposition1_check(BipartiteGraph.complete(8))
    assert v.side == "red" and v.witness.half_length == 4


def test_proposition1_on_padded_k34():
    g = BipartiteGraph.from_edges(8, 8, [(i, j) for i in range(3) for j in range(4)])
    v = proposition1_check(g)
    assert v.side == "blue"
    assert v.witness.is_valid_in(complement(g))


def test_proposition1_hypothesis_unmet():
    with pytest.raises(HypothesisUnmet):
        proposition1_check(BipartiteGraph.empty(8))
    with pytest.raises(HypothesisUnmet):
        proposition1_check(BipartiteGraph.complete(7))


def test_planted_sampler_keeps_k34():
    rng = random.Random(3)
    for _ in range(100):
        g = planted_k34(rng)
        assert all(g.rows[i] & 0b1111 == 0b1111 for i in range(3))


@pytest.mark.parametrize("density", [0.05, 0.1, 0.2])
def test_proposition1_sparse_sweeps(density):
    # sparse red forces most samples onto the blue side
    rep = proposition1_sweep(1500, seed=11, density=density)
    assert rep.neither == 0
    assert rep.red + rep.blue == 1500


def test_sweep_is_reproducible():
    a = proposition1_sweep(200, seed=5)
    b = proposition1_sweep(200, seed=5)
    assert (a.red, a.blue, a.neither) == (b.red, b.blue, b.neither)
