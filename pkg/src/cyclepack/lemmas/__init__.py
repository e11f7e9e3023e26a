"""Executable versions of the structural lemmas, with witness search and validation."""

from cyclepack.lemmas.engine import (
    DEGREE_PATTERNS,
    ForestTriangleInstance,
    MissingLeaf,
    NotLargeDegree,
    NotATree,
    TreeCycleInstance,
    leaf_count,
    leafset_degree_upper_bound,
    lemma_degree_sequence_shorten,
    lemma_forest_augment,
    lemma_forest_triangle,
    lemma_short_cycle_path_connected,
    lemma_short_cycle_two_paths,
    lemma_tree_cycle,
    lemma_triangle_path_external,
    tree_leaf_lower_bound,
)
from cyclepack.lemmas.outcomes import (
    AugmentedSystem,
    ComponentReducingTriangle,
    LemmaOutcome,
    LemmaViolation,
    OutcomeContext,
    PreconditionUnmet,
    ShorterCycle,
    TwoDisjointCycles,
    verify_outcome,
)


def run_instance(name: str, inst) -> LemmaOutcome:
    """Apply the lemma called ``name`` to a generated or parsed instance."""
    if name == "forest-triangle":
        return lemma_forest_triangle(inst)
    if name == "tree-cycle":
        return lemma_tree_cycle(inst)
    if name == "deg-seq-shorten":
        return lemma_degree_sequence_shorten(inst.g, inst.c1, inst.c2)
    if name == "triangle-path":
        return lemma_triangle_path_external(inst.g, inst.c, inst.p, inst.z)
    if name == "short-cycle-two-paths":
        return lemma_short_cycle_two_paths(inst.g, inst.c, inst.p1, inst.p2)
    if name == "short-cycle-connected":
        return lemma_short_cycle_path_connected(inst.g, inst.c, inst.p1, inst.p2, inst.u, inst.v, inst.w)
    raise KeyError(f"unknown lemma {name!r}")
