import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from endscope.catalog import catalog_family
from endscope.metric import (INF, DistanceMatrix, WeightedGraph, ball, cap_metric, format_rational,
                             shortest_path_metric, to_ext_rational, validate_metric)

from oracles import bfs_hops, floyd_warshall, is_metric, random_graph_metric, triangle_violations

F = Fraction


def grid_5x5():
    """The 5x5 grid, built independently of the catalog."""
    verts = [(i, j) for i in range(5) for j in range(5)]
    edges = [((i, j), (i + 1, j), 1) for i in range(4) for j in range(5)]
    edges += [((i, j), (i, j + 1), 1) for i in range(5) for j in range(4)]
    return verts, edges


def test_single_point_is_valid():
    assert validate_metric(DistanceMatrix.from_rows([[0]])).valid


def test_triangle_violation_witness():
    m = DistanceMatrix.from_rows([[0, 1, 3], [1, 0, 1], [3, 1, 0]], points="abc")
    report = validate_metric(m)
    assert not report.valid
    assert [(v.kind, v.witness) for v in report.violations] == [("triangle", ("a", "b", "c"))]


def test_reports_every_axiom():
    m = DistanceMatrix.from_rows([[1, 2, 0], [3, 0, 1], [0, 1, 0]])
    kinds = validate_metric(m).kinds()
    assert {"diagonal", "symmetry", "positivity"} <= kinds


def test_grid_metric_valid_against_brute_force():
    verts, edges = grid_5x5()
    m = shortest_path_metric(WeightedGraph(verts, edges))
    assert validate_metric(m).valid
    oracle = floyd_warshall(verts, edges)
    assert not triangle_violations(oracle)
    assert [list(r) for r in m.rows] == oracle


def test_shortest_path_examples():
    g = WeightedGraph(("a", "b"), (("a", "b", F(1, 2)),))
    assert shortest_path_metric(g)("a", "b") == F(1, 2)
    g = WeightedGraph("abc", (("a", "b", 1), ("b", "c", 1)))
    assert shortest_path_metric(g)("a", "c") == 2


def test_grid_corner_to_corner_matches_bfs():
    verts, edges = grid_5x5()
    adj = {v: [] for v in verts}
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    assert bfs_hops(adj, (0, 0))[(4, 4)] == 8
    assert shortest_path_metric(WeightedGraph(verts, edges))((0, 0), (4, 4)) == 8


def test_disconnected_pairs_are_infinite():
    g = WeightedGraph("abc", (("a", "b", 1),))
    m = shortest_path_metric(g)
    assert m("a", "c") == INF and m.has_infinite()
    assert "infinite" in validate_metric(m).kinds()


@pytest.mark.parametrize("w", [0, -1, "-1/2"])
def test_nonpositive_weights_rejected(w):
    with pytest.raises(ValueError):
        WeightedGraph("ab", (("a", "b", w),))


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_ext_rational(0.5)


def test_cap_inactive_below_cap():
    m = DistanceMatrix.from_rows([[0, 1], [1, 0]])
    assert cap_metric(m, 2) == m


def test_cap_turns_infinity_into_cap():
    g = WeightedGraph("ab", ())
    capped = cap_metric(shortest_path_metric(g), 1)
    assert capped("a", "b") == 1
    assert validate_metric(capped).valid


@pytest.mark.parametrize("c", [0, -1])
def test_cap_rejects_nonpositive(c):
    with pytest.raises(ValueError):
        cap_metric(DistanceMatrix.from_rows([[0]]), c)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 9), c=st.fractions(F(1, 4), 5))
def test_cap_output_is_always_a_metric(seed, n, c):
    rng = random.Random(seed)
    d = random_graph_metric(rng, n)
    # drop a random set of rows' connections to force infinite entries
    if n > 2 and rng.random() < 0.5:
        cut = rng.randrange(1, n)
        d = [[d[i][j] if (i < cut) == (j < cut) else INF for j in range(n)] for i in range(n)]
    capped = cap_metric(DistanceMatrix.from_rows(d), c)
    assert validate_metric(capped).valid
    assert is_metric([list(r) for r in capped.rows])


def test_ball_is_open():
    m = DistanceMatrix.from_rows([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    assert ball(m, 0, 1) == {0}
    assert ball(m, 0, F(3, 2)) == {0, 1}
    assert ball(m, 0, 2) == {0, 1}


def test_ball_in_capped_space_beyond_cap_is_everything():
    space = catalog_family("paper_example", {"m": 6, "w": "1/3"}, 2)
    assert ball(space, space.basepoint, F(11, 10)) == set(space.points)


def test_ball_grid_center_radius_two():
    verts, edges = grid_5x5()
    m = shortest_path_metric(WeightedGraph(verts, edges))
    adj = {v: [] for v in verts}
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    hops = bfs_hops(adj, (2, 2))
    expected = {v for v, h in hops.items() if h < 2}
    assert len(expected) == 5
    assert ball(m, (2, 2), 2) == expected


def test_ball_unknown_point():
    with pytest.raises(KeyError):
        ball(DistanceMatrix.from_rows([[0]]), 7, 1)


def test_ball_monotone_in_radius():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 8)
        m = DistanceMatrix.from_rows(random_graph_metric(rng, n))
        radii = sorted({F(k, 2) for k in range(1, 12)})
        for x in m.points:
            balls = [ball(m, x, r) for r in radii]
            assert all(a <= b for a, b in zip(balls, balls[1:]))


def test_path_metric_triangle_exhaustive_n30():
    rng = random.Random(11)
    d = None
    for n in (10, 20, 30):
        edges = [(i, rng.randrange(i), rng.randint(1, 5)) for i in range(1, n)]
        edges += [(rng.randrange(n), rng.randrange(n), F(rng.randint(1, 9), 3)) for _ in range(n)]
        edges = [e for e in edges if e[0] != e[1]]
        m = shortest_path_metric(WeightedGraph(tuple(range(n)), tuple(edges)))
        d = [list(r) for r in m.rows]
        assert not triangle_violations(d)
        assert validate_metric(m).valid


def test_serialization_round_trip_is_exact():
    rng = random.Random(5)
    for _ in range(50):
        q = F(rng.randint(-10 ** 12, 10 ** 12), rng.randint(1, 10 ** 9))
        assert to_ext_rational(format_rational(q)) == q
        assert format_rational(to_ext_rational(format_rational(q))) == format_rational(q)
    assert to_ext_rational(format_rational(INF)) == INF
