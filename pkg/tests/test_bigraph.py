import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brcycles.bigraph import (
    BipartiteGraph,
    GraphFormatError,
    TwoColoring,
    VertexSet,
    are_isomorphic,
    bits,
    complement,
    contains_complete,
    graph_from_json,
    graph_to_json,
    induced,
)
from brcycles.constructions import figure1_graph


@st.composite
def graphs(draw, max_side=6):
    left = draw(st.integers(0, max_side))
    right = draw(st.integers(0, max_side))
    rows = draw(st.lists(st.integers(0, (1 << right) - 1), min_size=left, max_size=left))
    return BipartiteGraph(left, right, tuple(rows))


def fig1():
    return figure1_graph().red


def test_rejects_out_of_range_bits():
    with pytest.raises(ValueError):
        BipartiteGraph(2, 3, (0b1000, 0))
    with pytest.raises(ValueError):
        BipartiteGraph(2, 3, (0,))
    with pytest.raises(ValueError):
        BipartiteGraph(65, 1, (0,) * 65)


def test_complement_of_empty_is_complete():
    assert complement(BipartiteGraph.empty(3)) == BipartiteGraph.complete(3)


def test_figure1_edge_counts():
    g = fig1()
    # adjacency lists as drawn: 3*3 + 7 + 3*3
    assert g.edge_count() == 9 + 7 + 9 == 25
    assert complement(g).edge_count() == 49 - 25
    assert complement(complement(g)) == g


@given(graphs())
def test_complement_partitions_host(g):
    h = complement(g)
    assert g.edge_count() + h.edge_count() == g.left_size * g.right_size
    for a, b in zip(g.rows, h.rows):
        assert a & b == 0


@given(graphs())
def test_degree_sums(g):
    assert sum(g.degrees("left")) == sum(g.degrees("right")) == g.edge_count()
    for v in range(g.left_size):
        assert g.degree("left", v) == len(g.neighbors("left", v).indices())


@given(graphs(), st.data())
def test_induced_commutes_with_complement(g, data):
    xs = VertexSet.of("left", data.draw(st.sets(st.integers(0, max(g.left_size - 1, 0)))) if g.left_size else [])
    ys = VertexSet.of("right", data.draw(st.sets(st.integers(0, max(g.right_size - 1, 0)))) if g.right_size else [])
    assert complement(induced(g, xs, ys)) == induced(complement(g), xs, ys)


def test_induced_examples():
    k34 = induced(BipartiteGraph.complete(5), VertexSet.of("left", [0, 1, 2]), VertexSet.of("right", [0, 1, 2, 3]))
    assert k34 == BipartiteGraph.complete(3, 4)
    g = fig1()
    assert induced(g, VertexSet.of("left", [0, 1, 2]), VertexSet.of("right", [0, 1, 2])) == BipartiteGraph.complete(3)
    assert induced(g, VertexSet.of("left", [4, 5, 6]), VertexSet.of("right", [0, 1, 2])) == BipartiteGraph.empty(3)


def test_induced_keeps_ascending_order():
    g = BipartiteGraph.from_edges(3, 3, [(2, 0), (0, 2)])
    h = induced(g, VertexSet.of("left", [0, 2]), VertexSet.of("right", [0, 2]))
    assert h.edges() == [(0, 1), (1, 0)]


def test_induced_side_mismatch():
    g = BipartiteGraph.complete(3)
    with pytest.raises(ValueError):
        induced(g, VertexSet.of("right", [0]), VertexSet.of("right", [0]))


def _brute_complete(g, a, b):
    for xs in itertools.combinations(range(g.left_size), a):
        for ys in itertools.combinations(range(g.right_size), b):
            if all(g.has_edge(i, j) for i in xs for j in ys):
                return list(xs), list(ys)
    return None


def test_contains_complete_examples():
    xs, ys = contains_complete(BipartiteGraph.complete(3, 4), 3, 4)
    assert (xs.indices(), ys.indices()) == ([0, 1, 2], [0, 1, 2, 3])
    assert contains_complete(BipartiteGraph.empty(4), 1, 1) is None
    # 35 * 35 subset pairs
    assert _brute_complete(fig1(), 3, 4) is None
    assert contains_complete(fig1(), 3, 4) is None
    xs, ys = contains_complete(fig1(), 4, 3)
    assert (xs.indices(), ys.indices()) == _brute_complete(fig1(), 4, 3) == ([0, 1, 2, 3], [0, 1, 2])


@settings(max_examples=200)
@given(graphs(max_side=5), st.integers(1, 3), st.integers(1, 3))
def test_contains_complete_matches_brute_force(g, a, b):
    if a > g.left_size or b > g.right_size:
        return
    got = contains_complete(g, a, b)
    want = _brute_complete(g, a, b)
    if want is None:
        assert got is None
    else:
        assert (got[0].indices(), got[1].indices()) == want


def test_isomorphism_examples():
    g = fig1()
    assert are_isomorphic(g, g)
    assert not are_isomorphic(BipartiteGraph.complete(3), BipartiteGraph.empty(3))
    assert are_isomorphic(complement(g), g.without_edge(3, 3))
    assert not are_isomorphic(BipartiteGraph.complete(2, 3), BipartiteGraph.complete(3, 3))


def test_isomorphism_allows_side_swap():
    g = BipartiteGraph.from_edges(2, 3, [(0, 0), (0, 1), (0, 2)])
    h = BipartiteGraph.from_edges(3, 2, [(0, 1), (1, 1), (2, 1)])
    assert are_isomorphic(g, h)
    # star centred on the right vs on the left of a square board
    s = BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (2, 0)])
    assert are_isomorphic(s, s.transpose())


def test_isomorphism_rejects_same_degrees():
    # 2K_2 + 2K_2 arranged as C_8 vs two C_4: both 2-regular on 4+4
    c8 = BipartiteGraph.from_edges(4, 4, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (0, 3)])
    two_c4 = BipartiteGraph.from_edges(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
    assert not are_isomorphic(c8, two_c4)


def _canonical_3x3(g):
    # brute-force canonical form over all permutations and the transpose
    forms = []
    for h in (g, g.transpose()):
        for lp in itertools.permutations(range(3)):
            for rp in itertools.permutations(range(3)):
                forms.append(h.relabel(lp, rp).rows)
    return min(forms)


def test_isomorphism_matches_brute_canonical_form():
    all_3x3 = [BipartiteGraph(3, 3, tuple((c >> (3 * i)) & 7 for i in range(3))) for c in range(1 << 9)]
    rng = random.Random(0)
    for _ in range(3000):
        g, h = rng.choice(all_3x3), rng.choice(all_3x3)
        assert are_isomorphic(g, h) == (_canonical_3x3(g) == _canonical_3x3(h))


def test_isomorphism_is_an_equivalence_on_4x4_samples():
    rng = random.Random(1)
    pool = [BipartiteGraph(4, 4, tuple(rng.getrandbits(4) for _ in range(4))) for _ in range(60)]
    for g in pool:
        lp, rp = rng.sample(range(4), 4), rng.sample(range(4), 4)
        assert are_isomorphic(g, g)
        assert are_isomorphic(g, g.relabel(lp, rp))
    for g, h, k in itertools.islice(itertools.product(pool, repeat=3), 4000):
        gh, hk = are_isomorphic(g, h), are_isomorphic(h, k)
        assert gh == are_isomorphic(h, g)
        if gh and hk:
            assert are_isomorphic(g, k)


def test_json_round_trip_both_forms():
    g = fig1()
    for compact in (False, True):
        data = graph_to_json(g, compact=compact)
        assert graph_from_json(data) == g
    both = graph_to_json(g) | {"rows_hex": graph_to_json(g, compact=True)["rows_hex"]}
    assert graph_from_json(both) == g


def test_rows_hex_is_little_endian():
    g = BipartiteGraph.from_edges(2, 6, [(0, 0), (0, 5), (1, 1)])
    assert graph_to_json(g, compact=True)["rows_hex"] == ["21", "2"]


@pytest.mark.parametrize(
    "data, field",
    [
        ({"left": 2, "right": 2, "edges": [[0, 2]]}, "edges"),
        ({"left": 2, "right": 2, "edges": [[1, 0], [0, 0]]}, "edges"),
        ({"left": 2, "right": 2, "edges": [[0, 0], [0, 0]]}, "edges"),
        ({"left": 2, "edges": []}, "right"),
        ({"left": 2, "right": 2}, "edges"),
        ({"left": 2, "right": 2, "rows_hex": ["4", "0"]}, "rows_hex"),
        ({"left": 2, "right": 2, "rows_hex": ["1"]}, "rows_hex"),
        ({"left": 2, "right": 2, "edges": [[0, 0]], "rows_hex": ["2", "0"]}, "rows_hex"),
        ({"left": 70, "right": 2, "edges": []}, "left"),
    ],
)
def test_json_rejects_malformed(data, field):
    with pytest.raises(GraphFormatError) as exc:
        graph_from_json(data)
    assert exc.value.field == field


def test_two_coloring_blue_is_complement():
    c = figure1_graph()
    red, blue = c.red, c.blue()
    for r, b in zip(red.rows, blue.rows):
        assert r | b == 0x7F and r & b == 0
    with pytest.raises(ValueError):
        TwoColoring((3, 3), BipartiteGraph.empty(2))


def test_bits_ascending():
    assert list(bits(0b101001)) == [0, 3, 5]
