import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclepack.graph import (
    NotAForest,
    build_graph,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    induced_subgraph,
    join,
    omega,
    path_graph,
    sigma_t,
    to_mask,
)
from cyclepack.lemmas import (
    DEGREE_PATTERNS,
    AugmentedSystem,
    ComponentReducingTriangle,
    ForestTriangleInstance,
    LemmaViolation,
    MissingLeaf,
    NotATree,
    NotLargeDegree,
    OutcomeContext,
    PreconditionUnmet,
    ShorterCycle,
    TreeCycleInstance,
    TwoDisjointCycles,
    leaf_count,
    leafset_degree_upper_bound,
    lemma_degree_sequence_shorten,
    lemma_forest_augment,
    lemma_forest_triangle,
    lemma_short_cycle_path_connected,
    lemma_short_cycle_two_paths,
    lemma_tree_cycle,
    lemma_triangle_path_external,
    run_instance,
    tree_leaf_lower_bound,
    verify_outcome,
)
from cyclepack.lemmas.generators import GENERATORS, gen_deg_seq_shorten, gen_forest_triangle, instances
from cyclepack.packing import Cycle, CycleSystem, degree_sequence_between, enumerate_cycles, find_disjoint_cycles

from .strategies import forests


def _edges(*groups):
    return [e for grp in groups for e in grp]


def _full(xs, ys):
    return [(x, y) for x in xs for y in ys]


class TestForestTriangle:
    def test_two_edges_full_join(self):
        # forest 0-1, 2-3; triangle 4 5 6; every leaf sees the whole triangle
        g = build_graph(7, _edges([(0, 1), (2, 3)], Cycle.of((4, 5, 6)).edges(), _full(range(4), (4, 5, 6))))
        out = lemma_forest_triangle(ForestTriangleInstance(g, (0, 1, 2, 3), Cycle.of((4, 5, 6)), (0, 1, 2, 3)))
        assert isinstance(out, TwoDisjointCycles)
        assert verify_outcome(g, out)

    def test_leaves_from_one_component(self):
        star = [(0, 1), (0, 2), (0, 3)]
        g = build_graph(8, _edges(star, Cycle.of((5, 6, 7)).edges(), _full((1, 2, 3), (5, 6, 7))))
        out = lemma_forest_triangle(ForestTriangleInstance(g, (0, 1, 2, 3, 4), Cycle.of((5, 6, 7)), (1, 2, 3)))
        assert isinstance(out, PreconditionUnmet)
        assert "single component" in out.reason

    def test_threshold_not_met(self):
        # t = 3 leaves with exactly 2t = 6 edges to the triangle
        g = build_graph(8, _edges([(0, 1)], Cycle.of((5, 6, 7)).edges(), [(0, 5), (0, 6), (1, 5), (1, 6), (2, 5), (2, 6)]))
        out = lemma_forest_triangle(ForestTriangleInstance(g, (0, 1, 2, 3, 4), Cycle.of((5, 6, 7)), (0, 1, 2)))
        assert isinstance(out, PreconditionUnmet)
        assert "2t + 1" in out.reason


def _direct_small_case(inst):
    """Outcome tags allowed when three leaves send at least seven edges to a triangle,
    found by listing every cycle pair and every triangle of G[F + C]."""
    g = inst.g
    sub = induced_subgraph(g, inst.forest_vertices + inst.triangle.vertices)
    inside = list(enumerate_cycles(sub.graph))
    tags = set()
    if any(not a.mask & b.mask for a, b in itertools.combinations(inside, 2)):
        tags.add(TwoDisjointCycles.tag)
    forest = to_mask(sub.from_parent[v] for v in inst.forest_vertices)
    base = omega(sub.graph, forest)
    if any(len(c) == 3 and omega(sub.graph, sub.graph.vertex_mask & ~c.mask) < base for c in inside):
        tags.add(ComponentReducingTriangle.tag)
    return tags


def test_three_leaf_case_agrees_with_direct_check():
    rng = random.Random(2)
    seen = 0
    while seen < 100:
        inst = gen_forest_triangle(rng)
        if len(inst.leaves) != 3:
            continue
        seen += 1
        tags = _direct_small_case(inst)
        out = lemma_forest_triangle(inst)
        assert tags, "the small case itself would be false here"
        assert out.tag in tags
        if TwoDisjointCycles.tag in tags:
            assert out.tag == TwoDisjointCycles.tag


class TestTreeCycle:
    def _star_and_hexagon(self, joins):
        star = [(0, 1), (0, 2), (0, 3)]
        return build_graph(10, _edges(star, Cycle.of(range(4, 10)).edges(), joins))

    def test_full_join(self):
        g = self._star_and_hexagon(_full((1, 2, 3), range(4, 10)))
        out = lemma_tree_cycle(TreeCycleInstance(g, (0, 1, 2, 3), Cycle.of(range(4, 10)), (1, 2, 3)))
        assert isinstance(out, ShorterCycle | TwoDisjointCycles)
        assert verify_outcome(g, out)

    def test_exactly_2t(self):
        g = self._star_and_hexagon([(1, 4), (1, 7), (2, 5), (2, 8), (3, 6), (3, 9)])
        out = lemma_tree_cycle(TreeCycleInstance(g, (0, 1, 2, 3), Cycle.of(range(4, 10)), (1, 2, 3)))
        assert isinstance(out, PreconditionUnmet)

    def test_two_leaves(self):
        g = build_graph(5, _edges([(0, 1)], Cycle.of((2, 3, 4)).edges(), _full((0, 1), (2, 3, 4))))
        out = lemma_tree_cycle(TreeCycleInstance(g, (0, 1), Cycle.of((2, 3, 4)), (0, 1)))
        assert isinstance(out, PreconditionUnmet)

    def test_not_a_leaf(self):
        g = self._star_and_hexagon(_full((0, 1, 2), range(4, 10)))
        out = lemma_tree_cycle(TreeCycleInstance(g, (0, 1, 2, 3), Cycle.of(range(4, 10)), (0, 1, 2)))
        assert isinstance(out, PreconditionUnmet)


def _two_star_instance():
    """Triangle 0 1 2, stars centred at 3 (7 leaves) and 11 (6 leaves), every star leaf
    joined to all of the triangle: 18 vertices, sigma_5 = 20."""
    leaves_a, leaves_b = range(4, 11), range(12, 18)
    edges = _edges(
        Cycle.of((0, 1, 2)).edges(),
        [(3, x) for x in leaves_a],
        [(11, x) for x in leaves_b],
        _full(list(leaves_a) + list(leaves_b), (0, 1, 2)),
    )
    return build_graph(18, edges)


class TestForestAugment:
    def test_two_star_instance(self):
        g = _two_star_instance()
        assert sigma_t(g, 5) == 20 >= 16
        sys_ = CycleSystem((Cycle.of((0, 1, 2)),))
        out = lemma_forest_augment(g, sys_, 2, 5)
        assert isinstance(out, AugmentedSystem)
        assert len(out.system) == 2 and out.system.is_valid_in(g)
        assert verify_outcome(g, out)
        assert find_disjoint_cycles(g, 2) is not None

    def test_complement_not_a_forest(self):
        g = disjoint_union(complete_graph(3), complete_graph(3))
        out = lemma_forest_augment(g, CycleSystem((Cycle.of((0, 1, 2)),)), 2, 3)
        assert isinstance(out, PreconditionUnmet) and "forest" in out.reason

    def test_sigma_below_threshold(self):
        g = join(complete_graph(3), build_graph(10, []))
        out = lemma_forest_augment(g, CycleSystem((Cycle.of((0, 1, 2)),)), 2, 5)
        assert isinstance(out, PreconditionUnmet) and "sigma_5" in out.reason

    def test_assume_sigma_skips_check(self):
        g = _two_star_instance()
        out = lemma_forest_augment(g, CycleSystem((Cycle.of((0, 1, 2)),)), 2, 5, assume_sigma=True)
        assert isinstance(out, AugmentedSystem)

    def test_wrong_cardinality(self):
        g = _two_star_instance()
        out = lemma_forest_augment(g, CycleSystem((Cycle.of((0, 1, 2)),)), 3, 5)
        assert isinstance(out, PreconditionUnmet)

    def test_non_minimal_system(self):
        g = build_graph(7, _edges(Cycle.of((0, 1, 2, 3)).edges(), [(0, 2), (4, 5), (5, 6)]))
        out = lemma_forest_augment(g, CycleSystem((Cycle.of((0, 1, 2, 3)),)), 2, 3)
        assert isinstance(out, PreconditionUnmet)


class TestLeafBounds:
    def test_star(self):
        star = build_graph(6, [(0, i) for i in range(1, 6)])
        assert tree_leaf_lower_bound(star, [0]) == 5 == leaf_count(star)

    def test_path_without_large_vertices(self):
        assert tree_leaf_lower_bound(path_graph(5), []) == 2 == leaf_count(path_graph(5))

    def test_single_vertex(self):
        assert tree_leaf_lower_bound(build_graph(1, []), []) == 1

    def test_double_star(self):
        g = build_graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        assert tree_leaf_lower_bound(g, [0, 1]) == 4 == leaf_count(g)

    def test_errors(self):
        with pytest.raises(NotATree):
            tree_leaf_lower_bound(cycle_graph(4), [])
        with pytest.raises(NotATree):
            tree_leaf_lower_bound(build_graph(4, [(0, 1)]), [])
        with pytest.raises(NotLargeDegree):
            tree_leaf_lower_bound(path_graph(5), [2])

    def test_leafset_examples(self):
        assert leafset_degree_upper_bound(path_graph(4), [0, 3]) == 2
        two_k2 = build_graph(4, [(0, 1), (2, 3)])
        assert leafset_degree_upper_bound(two_k2, [0, 1, 2, 3]) == 4
        k13 = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert leafset_degree_upper_bound(k13, [0, 1, 2, 3]) == 6 == sum(k13.degrees())

    def test_leafset_errors(self):
        with pytest.raises(NotAForest):
            leafset_degree_upper_bound(cycle_graph(3), [0, 1, 2])
        with pytest.raises(MissingLeaf):
            leafset_degree_upper_bound(path_graph(4), [0])

    @settings(max_examples=200)
    @given(forests(), st.data())
    def test_bounds_hold(self, f, data):
        leaves = [v for v in range(f.n) if f.degree(v) <= 1]
        extra = data.draw(st.sets(st.sampled_from(range(f.n))))
        s = sorted(set(leaves) | extra)
        assert sum(f.degree(v) for v in s) <= leafset_degree_upper_bound(f, s)
        for comp in components(f):
            tree = induced_subgraph(f, comp).graph
            large = [v for v in range(tree.n) if tree.degree(v) >= 3]
            subset = data.draw(st.sets(st.sampled_from(large))) if large else set()
            assert leaf_count(tree) >= tree_leaf_lower_bound(tree, sorted(subset))


class TestDegreeSequenceShorten:
    def _hexagon_triangle(self, cross):
        return build_graph(9, _edges(Cycle.of((0, 1, 2)).edges(), Cycle.of(range(3, 9)).edges(), cross))

    def test_full_join(self):
        g = self._hexagon_triangle(_full(range(3, 9), (0, 1, 2)))
        out = lemma_degree_sequence_shorten(g, Cycle.of((0, 1, 2)), Cycle.of(range(3, 9)))
        assert isinstance(out, TwoDisjointCycles)
        assert len(out.c1) + len(out.c2) < 9
        assert verify_outcome(g, out)

    def test_one_cross_edge(self):
        g = self._hexagon_triangle([(3, 0)])
        out = lemma_degree_sequence_shorten(g, Cycle.of((0, 1, 2)), Cycle.of(range(3, 9)))
        assert isinstance(out, PreconditionUnmet)
        assert "closest" in out.reason

    def test_short_second_cycle(self):
        g = build_graph(8, _edges(Cycle.of((0, 1, 2)).edges(), Cycle.of(range(3, 8)).edges(), _full(range(3, 8), (0, 1, 2))))
        out = lemma_degree_sequence_shorten(g, Cycle.of((0, 1, 2)), Cycle.of(range(3, 8)))
        assert isinstance(out, PreconditionUnmet)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.data())
    def test_domination_survives_extra_edges(self, seed, data):
        inst = gen_deg_seq_shorten(random.Random(seed))
        g = inst.g
        before = degree_sequence_between(g, inst.c2, inst.c1)
        extra = data.draw(st.lists(st.tuples(st.sampled_from(inst.c2.vertices), st.sampled_from(inst.c1.vertices)), max_size=4))
        h = build_graph(g.n, g.edges() + extra)
        after = degree_sequence_between(h, inst.c2, inst.c1)
        for p in DEGREE_PATTERNS:
            if before.dominates(p):
                assert after.dominates(p)


class TestTrianglePath:
    def test_two_vertex_path(self):
        # triangle 0 1 2, path 3-4 with both ends on two triangle vertices, z = 5 on all three
        g = build_graph(6, _edges(Cycle.of((0, 1, 2)).edges(), [(3, 4), (3, 0), (3, 1), (4, 1), (4, 2)], _full([5], (0, 1, 2))))
        out = lemma_triangle_path_external(g, (0, 1, 2), (3, 4), 5)
        assert isinstance(out, TwoDisjointCycles) and verify_outcome(g, out)

    def test_single_vertex_path_rejected(self):
        g = build_graph(5, _edges(Cycle.of((0, 1, 2)).edges(), [(3, 0), (3, 1)], _full([4], (0, 1, 2))))
        assert find_disjoint_cycles(g, 2) is None
        out = lemma_triangle_path_external(g, (0, 1, 2), (3,), 4)
        assert isinstance(out, PreconditionUnmet)

    def test_z_with_two_neighbours(self):
        g = build_graph(6, _edges(Cycle.of((0, 1, 2)).edges(), [(3, 4), (3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 1)]))
        assert isinstance(lemma_triangle_path_external(g, (0, 1, 2), (3, 4), 5), PreconditionUnmet)

    def test_four_cycle(self):
        g = build_graph(7, _edges(Cycle.of((0, 1, 2, 3)).edges(), [(4, 5), (4, 0), (4, 1), (5, 2), (5, 3)], _full([6], (0, 1, 2))))
        assert isinstance(lemma_triangle_path_external(g, (0, 1, 2, 3), (4, 5), 6), PreconditionUnmet)


class TestShortCycleTwoPaths:
    def test_four_cycle_example(self):
        # C = 0 1 2 3; P1 = 4-5 with 4 on {0, 2}, 5 on {1, 3}; P2 = 6-7 with 6 on {0, 2}, 7 on {1}
        edges = _edges(Cycle.of((0, 1, 2, 3)).edges(), [(4, 5), (4, 0), (4, 2), (5, 1), (5, 3)], [(6, 7), (6, 0), (6, 2), (7, 1)])
        g = build_graph(8, edges)
        out = lemma_short_cycle_two_paths(g, (0, 1, 2, 3), (4, 5), (6, 7))
        assert isinstance(out, TwoDisjointCycles | ShorterCycle) and verify_outcome(g, out)

    def test_chord(self):
        edges = _edges(Cycle.of((0, 1, 2, 3)).edges(), [(0, 2), (4, 5), (4, 0), (4, 2), (5, 1), (5, 3), (6, 7), (6, 0), (6, 2), (7, 1)])
        out = lemma_short_cycle_two_paths(build_graph(8, edges), (0, 1, 2, 3), (4, 5), (6, 7))
        assert isinstance(out, PreconditionUnmet) and "induced" in out.reason

    def test_shared_vertex(self):
        edges = _edges(Cycle.of((0, 1, 2, 3)).edges(), [(4, 5), (4, 0), (4, 2), (5, 1), (5, 3), (5, 6), (6, 0), (6, 2)])
        out = lemma_short_cycle_two_paths(build_graph(7, edges), (0, 1, 2, 3), (4, 5), (5, 6))
        assert isinstance(out, PreconditionUnmet)


class TestShortCycleConnected:
    def test_triangle_example(self):
        # C = 0 1 2; P1 = 3-4 ends on two triangle vertices; P2 = 5-6-7 each on a distinct triangle vertex
        edges = _edges(Cycle.of((0, 1, 2)).edges(), [(3, 4), (3, 0), (3, 1), (4, 1), (4, 2)], [(5, 6), (6, 7), (5, 0), (6, 1), (7, 2)])
        g = build_graph(8, edges)
        out = lemma_short_cycle_path_connected(g, (0, 1, 2), (3, 4), (5, 6, 7), 5, 6, 7)
        assert isinstance(out, TwoDisjointCycles | ShorterCycle) and verify_outcome(g, out)

    def test_disconnected(self):
        edges = _edges(Cycle.of((0, 1, 2)).edges(), [(3, 4), (3, 0), (3, 1), (4, 1), (4, 2)], [(5, 6), (5, 0), (6, 1), (7, 2)])
        out = lemma_short_cycle_path_connected(build_graph(8, edges), (0, 1, 2), (3, 4), (5, 6, 7), 5, 6, 7)
        assert isinstance(out, PreconditionUnmet) and "connected" in out.reason

    def test_only_two_attached(self):
        edges = _edges(Cycle.of((0, 1, 2)).edges(), [(3, 4), (3, 0), (3, 1), (4, 1), (4, 2)], [(5, 6), (6, 7), (5, 0), (6, 1)])
        out = lemma_short_cycle_path_connected(build_graph(8, edges), (0, 1, 2), (3, 4), (5, 6, 7), 5, 6, 7)
        assert isinstance(out, PreconditionUnmet)


class TestVerifyOutcome:
    g = disjoint_union(complete_graph(3), complete_graph(4))

    def test_valid_pair(self):
        out = TwoDisjointCycles(Cycle.of((0, 1, 2)), Cycle.of((3, 4, 5)), OutcomeContext(tuple(range(7))))
        assert verify_outcome(self.g, out)

    def test_overlapping_pair(self):
        out = TwoDisjointCycles(Cycle.of((3, 4, 5)), Cycle.of((3, 5, 6)), OutcomeContext(tuple(range(7))))
        assert not verify_outcome(self.g, out)

    def test_outside_region(self):
        out = TwoDisjointCycles(Cycle.of((0, 1, 2)), Cycle.of((3, 4, 5)), OutcomeContext((0, 1, 2, 3, 4)))
        assert not verify_outcome(self.g, out)

    def test_equal_length_not_shorter(self):
        out = ShorterCycle(Cycle.of((3, 4, 5)), OutcomeContext(tuple(range(7)), reference_length=3))
        assert not verify_outcome(self.g, out)
        assert verify_outcome(self.g, ShorterCycle(Cycle.of((3, 4, 5)), OutcomeContext(tuple(range(7)), reference_length=4)))

    def test_non_edge(self):
        out = ShorterCycle(Cycle.of((0, 1, 3)), OutcomeContext(tuple(range(7)), reference_length=5))
        assert not verify_outcome(self.g, out)

    def test_precondition_unmet(self):
        assert not verify_outcome(self.g, PreconditionUnmet("x"))


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_generated_instances(name):
    for inst in instances(name, 40, seed=11):
        out = run_instance(name, inst)
        assert not isinstance(out, PreconditionUnmet), out
        assert verify_outcome(inst.g, out)


def test_violation_is_raised_when_no_witness():
    # a hand-broken call: the helper is asked for a witness where none exists
    from cyclepack.lemmas.engine import _witness

    with pytest.raises(LemmaViolation):
        _witness(cycle_graph(5), OutcomeContext(tuple(range(5)), reference_length=3))
