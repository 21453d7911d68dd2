"""Graph construction, degree statistics, balls, cores, and the edge-list format."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specbound import (
    EdgeWeights,
    Graph,
    InputError,
    PreconditionError,
    average_degree,
    ball,
    connected_components,
    delete_ball,
    format_edge_list,
    induced_subgraph,
    parse_edge_list,
    second_order_average_degree,
    two_core,
)


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


PETERSEN_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)


def petersen():
    return Graph(10, PETERSEN_EDGES)


def random_graph(rng, n_lo=1, n_hi=10, p=None):
    n = rng.randint(n_lo, n_hi)
    p = rng.uniform(0.2, 0.8) if p is None else p
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(InputError):
            Graph(3, [(0, 0)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(InputError):
            Graph(3, [(0, 1), (1, 0)])

    def test_rejects_foreign_vertex(self):
        with pytest.raises(InputError):
            Graph(3, [(0, 3)])

    def test_adjacency_symmetric_and_sorted(self):
        g = Graph(4, [(2, 0), (3, 1), (0, 1)])
        assert g.neighbors(0) == (1, 2)
        for u in g.vertices:
            for v in g.neighbors(u):
                assert u in g.neighbors(v)

    def test_edge_count_is_half_degree_sum(self):
        rng = random.Random(0)
        for _ in range(20):
            g = random_graph(rng)
            assert 2 * g.edge_count == sum(g.degree(v) for v in g.vertices)


class TestDegreeStats:
    def test_degree_examples(self):
        assert all(cycle(4).degree(v) == 2 for v in range(4))
        assert all(complete(4).degree(v) == 3 for v in range(4))
        assert star(3).degree(0) == 3
        assert star(3).degree(1) == 1

    def test_degree_unknown_vertex(self):
        with pytest.raises(InputError):
            cycle(4).degree(9)

    def test_average_degree_examples(self):
        assert average_degree(cycle(6)) == 2
        assert average_degree(path(3)) == Fraction(4, 3)
        assert average_degree(star(3)) == Fraction(3, 2)

    def test_average_degree_empty_graph(self):
        with pytest.raises(PreconditionError):
            average_degree(Graph(0))

    def test_second_order_examples(self):
        assert second_order_average_degree(cycle(7)) == 2  # regular
        assert second_order_average_degree(petersen()) == 3
        assert second_order_average_degree(star(3)) == 2  # (9+3)/6
        assert second_order_average_degree(path(3)) == Fraction(3, 2)  # (1+4+1)/4

    def test_second_order_edgeless(self):
        with pytest.raises(PreconditionError):
            second_order_average_degree(Graph(3))


class TestBalls:
    def test_ball_cycle_radius1(self):
        b = ball(cycle(6), 0, 1)
        assert b.original_ids == (0, 1, 5)
        assert b.edge_count == 2  # path on v and its two neighbors

    def test_ball_petersen_radius2_is_everything(self):
        assert ball(petersen(), 3, 2).n == 10

    def test_ball_radius0(self):
        b = ball(cycle(6), 2, 0)
        assert b.n == 1 and b.edge_count == 0 and b.original_ids == (2,)

    def test_delete_ball_cycle(self):
        # hand deletion: C6 minus the closed neighborhood of 0 is the path 2-3-4
        rest = delete_ball(cycle(6), 0, 1)
        assert rest.original_ids == (2, 3, 4)
        assert rest.edges() == [(0, 1), (1, 2)]

    def test_delete_ball_petersen_is_c6(self):
        # exhaustive oracle: remainder must be connected and 2-regular on 6
        # vertices, which characterizes the 6-cycle
        for v in range(10):
            rest = delete_ball(petersen(), v, 1)
            assert rest.n == 6 and rest.edge_count == 6
            assert all(rest.degree(u) == 2 for u in rest.vertices)
            assert len(connected_components(rest)) == 1

    def test_delete_ball_complete_is_empty(self):
        assert delete_ball(complete(4), 0, 1).n == 0

    def test_ball_nesting_and_partition(self):
        rng = random.Random(1)
        for _ in range(30):
            g = random_graph(rng, 2, 9)
            v = rng.randrange(g.n)
            prev = set()
            for r in range(4):
                cur = set(ball(g, v, r).original_ids)
                assert prev <= cur
                rest = set(delete_ball(g, v, r).original_ids)
                assert cur | rest == set(g.vertices) and not cur & rest
                prev = cur


class TestTwoCore:
    def test_tree_has_empty_core(self):
        assert two_core(path(7)).n == 0
        assert two_core(star(4)).n == 0

    def test_cycle_with_pendant(self):
        g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
        core = two_core(g)
        assert core.original_ids == (0, 1, 2, 3, 4)
        assert core.edge_count == 5

    def test_cycle_is_own_core(self):
        assert two_core(cycle(4)).n == 4

    def test_idempotent_and_min_degree(self):
        rng = random.Random(2)
        for _ in range(30):
            g = random_graph(rng, 1, 10)
            core = two_core(g)
            if core.n:
                assert core.min_degree() >= 2
            again = two_core(core)
            assert again.n == core.n and again.edges() == core.edges()

    def test_maximality_against_subset_oracle(self):
        # brute force over all induced subgraphs with min degree >= 2
        rng = random.Random(3)
        for _ in range(15):
            g = random_graph(rng, 1, 9)
            core_set = set(two_core(g).original_ids)
            for mask in range(1, 1 << g.n):
                subset = [v for v in range(g.n) if mask >> v & 1]
                sub = induced_subgraph(g, subset)
                if sub.n and sub.min_degree() >= 2:
                    assert set(subset) <= core_set

    def test_core_average_degree_does_not_drop(self):
        rng = random.Random(4)
        seen = 0
        while seen < 25:
            g = random_graph(rng, 3, 10)
            if g.n == 0 or average_degree(g) < 2:
                continue
            seen += 1
            core = two_core(g)
            assert core.n > 0
            assert average_degree(core) >= average_degree(g)


class TestComponentsAndInduced:
    def test_disjoint_cycles(self):
        g = Graph(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
        parts = connected_components(g)
        assert [p.n for p in parts] == [3, 4]
        assert parts[0].original_ids == (0, 1, 2)

    def test_connected_graph_single_component(self):
        assert len(connected_components(cycle(5))) == 1

    def test_empty_graph(self):
        assert connected_components(Graph(0)) == []

    def test_induced_identity(self):
        g = petersen()
        h = induced_subgraph(g, range(10))
        assert h.edges() == g.edges()

    def test_induced_empty(self):
        assert induced_subgraph(petersen(), []).n == 0

    def test_induced_triangle_of_k4(self):
        h = induced_subgraph(complete(4), [0, 1, 3])
        assert h.n == 3 and h.edge_count == 3
        assert h.original_ids == (0, 1, 3)

    def test_induced_foreign_vertex(self):
        with pytest.raises(InputError):
            induced_subgraph(cycle(4), [0, 7])


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(2, 8),
    picks=st.sets(st.tuples(st.integers(0, 7), st.integers(0, 7))),
    v=st.integers(0, 7),
    r=st.integers(0, 3),
)
def test_ball_union_reaches_component(n, picks, v, r):
    edges = {(min(a, b), max(a, b)) for a, b in picks if a != b and a < n and b < n}
    g = Graph(n, sorted(edges))
    v = v % n
    cur = set(ball(g, v, r).original_ids)
    nxt = set(ball(g, v, r + 1).original_ids)
    assert cur <= nxt
    comp = next(
        set(c.original_ids) for c in connected_components(g) if v in c.original_ids
    )
    assert set(ball(g, v, n).original_ids) == comp


class TestEdgeWeights:
    def test_positive_required(self):
        with pytest.raises(InputError, match="positive"):
            EdgeWeights({(0, 1): -0.5})
        with pytest.raises(InputError, match="positive"):
            EdgeWeights({(0, 1): 0.0})

    def test_lookup_is_unordered(self):
        w = EdgeWeights({(1, 0): 0.25})
        assert w.get(0, 1) == w.get(1, 0) == 0.25

    def test_domain_must_match(self):
        g = cycle(4)
        with pytest.raises(InputError):
            EdgeWeights({(0, 1): 1.0}).validate_for(g)
        extra = {e: 1.0 for e in g.edges()}
        extra[(0, 2)] = 1.0
        with pytest.raises(InputError):
            EdgeWeights(extra).validate_for(g)

    def test_restrict_uses_original_ids(self):
        g = cycle(5)
        w = EdgeWeights({e: 1.0 + 0.1 * i for i, e in enumerate(g.edges())})
        b = ball(g, 0, 1)  # vertices 0, 1, 4
        sub = w.restrict(b)
        ids = b.original_ids
        for a, c in b.edges():
            assert sub.get(a, c) == w.get(ids[a], ids[c])


class TestEdgeListFormat:
    def test_round_trip_unweighted(self):
        g = petersen()
        parsed, w = parse_edge_list(format_edge_list(g))
        assert w is None
        assert parsed.n == g.n and parsed.edges() == g.edges()

    def test_round_trip_weighted_bit_exact(self):
        g = cycle(5)
        rng = random.Random(5)
        w = EdgeWeights({e: rng.uniform(0.1, 2.0) for e in g.edges()})
        parsed, pw = parse_edge_list(format_edge_list(g, w))
        assert parsed.edges() == g.edges()
        for u, v in g.edges():
            assert pw.get(u, v) == w.get(u, v)

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\n3 2\n0 1\n# another\n1 2\n"
        g, w = parse_edge_list(text)
        assert g.n == 3 and g.edge_count == 2 and w is None

    def test_error_carries_line_number(self):
        with pytest.raises(InputError, match="line 3"):
            parse_edge_list("3 2\n0 1\n1 x\n")
        with pytest.raises(InputError, match="line 4"):
            parse_edge_list("# hi\n3 2\n0 1\n1 2 -0.5\n")

    def test_header_mismatch(self):
        with pytest.raises(InputError, match="promises 3"):
            parse_edge_list("4 3\n0 1\n1 2\n")

    def test_mixed_weighting_rejected(self):
        with pytest.raises(InputError, match="mixed"):
            parse_edge_list("3 2\n0 1 0.5\n1 2\n")
