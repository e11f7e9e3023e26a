"""Witness-producing versions of the structural lemmas.

Every operation checks its hypotheses, then searches the relevant induced
subgraph exhaustively for one of the promised witnesses. Hypotheses that
fail give a ``PreconditionUnmet`` outcome; hypotheses that hold with no
witness raise :class:`LemmaViolation`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from cyclepack.graph import (
    Graph,
    NotAForest,
    GraphError,
    components_mask,
    degree_into,
    induced_edge_count,
    is_forest_mask,
    iter_bits,
    omega,
    sigma_t,
    to_mask,
    vertex_set,
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
)
from cyclepack.packing import Cycle, CycleSystem, _Search, certify_minimal, degree_sequence_between

DEGREE_PATTERNS: tuple[tuple[int, ...], ...] = (
    (5, 3),
    (3, 3, 1),
    (3, 2, 1, 1),
    (3, 1, 1, 1, 1, 1),
    (2, 2, 2, 2, 2),
)


class NotATree(GraphError):
    pass


class NotLargeDegree(GraphError):
    pass


class MissingLeaf(GraphError):
    pass


@dataclass(frozen=True)
class ForestTriangleInstance:
    g: Graph
    forest_vertices: tuple[int, ...]
    triangle: Cycle
    leaves: tuple[int, ...]


@dataclass(frozen=True)
class TreeCycleInstance:
    g: Graph
    tree_vertices: tuple[int, ...]
    cycle: Cycle
    leaves: tuple[int, ...]


# ------------------------------------------------------------------ witnesses


def _two_cycles(search: _Search, region: int, ctx: OutcomeContext) -> TwoDisjointCycles | None:
    upper = region.bit_count() if ctx.max_total is None else min(ctx.max_total - 1, region.bit_count())
    total = search.min_total(region, 2, upper)
    if total is None:
        return None
    a, b = search.lex_first(region, 2, total)
    return TwoDisjointCycles(Cycle(a), Cycle(b), ctx)


def _shorter_cycle(search: _Search, region: int, ctx: OutcomeContext) -> ShorterCycle | None:
    total = search.min_total(region, 1, ctx.reference_length - 1)
    if total is None:
        return None
    (c,) = search.lex_first(region, 1, total)
    return ShorterCycle(Cycle(c), ctx)


def _reducing_triangle(search: _Search, region: int, ctx: OutcomeContext) -> ComponentReducingTriangle | None:
    g = search.g
    base = omega(g, to_mask(ctx.forest))
    for tri in search.chordless_within(region, 3):
        if omega(g, region & ~to_mask(tri)) < base:
            return ComponentReducingTriangle(Cycle(tri), ctx)
    return None


def _witness(g: Graph, ctx: OutcomeContext, *alternatives) -> LemmaOutcome:
    search = _Search(g)
    region = to_mask(ctx.region)
    found = _two_cycles(search, region, ctx)
    if found is not None:
        return found
    for alt in alternatives:
        found = alt(search, region, ctx)
        if found is not None:
            return found
    raise LemmaViolation(f"hypotheses hold but no witness inside {ctx.region}")


# ------------------------------------------------------------------ checks


def _is_cycle(g: Graph, c) -> Cycle | None:
    try:
        cyc = c if isinstance(c, Cycle) else Cycle.of(c)
    except ValueError:
        return None
    return cyc if cyc.is_in(g) else None


def _is_path(g: Graph, p: Sequence[int]) -> bool:
    return (
        len(p) >= 1
        and len(set(p)) == len(p)
        and all(0 <= v < g.n for v in p)
        and all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))
    )


def _in_range(g: Graph, vs) -> bool:
    return all(0 <= v < g.n for v in vs)


# ------------------------------------------------------------------ lemmas


def lemma_forest_triangle(inst: ForestTriangleInstance) -> LemmaOutcome:
    """Forest ``F``, triangle ``C``, ``t >= 3`` leaves from at least two components with
    e(leaves, C) >= 2t + 1: two disjoint cycles in G[F + C], or a triangle whose
    removal leaves fewer components than F has.
    """
    g = inst.g
    tri = _is_cycle(g, inst.triangle)
    if tri is None or len(tri) != 3:
        return PreconditionUnmet("C is not a triangle of G")
    if not _in_range(g, inst.forest_vertices) or not _in_range(g, inst.leaves):
        return PreconditionUnmet("vertex index out of range")
    fm = to_mask(inst.forest_vertices)
    if fm & tri.mask:
        return PreconditionUnmet("forest and triangle overlap")
    if not is_forest_mask(g, fm):
        return PreconditionUnmet("G[F] contains a cycle")
    comps = components_mask(g, fm)
    if len(comps) < 2:
        return PreconditionUnmet("F has fewer than two components")
    leaves = vertex_set(inst.leaves)
    t = len(leaves)
    if t < 3:
        return PreconditionUnmet(f"need at least 3 leaves, got {t}")
    if len(leaves) != len(inst.leaves):
        return PreconditionUnmet("repeated leaf")
    for x in leaves:
        if not fm >> x & 1 or degree_into(g, x, fm) > 1:
            return PreconditionUnmet(f"{x} is not a leaf of F")
    if sum(1 for c in comps if c & to_mask(leaves)) < 2:
        return PreconditionUnmet("leaves come from a single component of F")
    e = sum(degree_into(g, x, tri.mask) for x in leaves)
    if e < 2 * t + 1:
        return PreconditionUnmet(f"e(leaves, C) = {e} < 2t + 1 = {2 * t + 1}")
    ctx = OutcomeContext(region=vertex_set(inst.forest_vertices + tri.vertices), forest=vertex_set(inst.forest_vertices))
    return _witness(g, ctx, _reducing_triangle)


def lemma_tree_cycle(inst: TreeCycleInstance) -> LemmaOutcome:
    """Tree ``T`` with ``t >= 3`` chosen leaves and a cycle ``C`` with e(leaves, C) >= 2t + 1:
    two disjoint cycles in G[C + T], or a cycle there shorter than C.
    """
    g = inst.g
    cyc = _is_cycle(g, inst.cycle)
    if cyc is None:
        return PreconditionUnmet("C is not a cycle of G")
    if not _in_range(g, inst.tree_vertices) or not _in_range(g, inst.leaves):
        return PreconditionUnmet("vertex index out of range")
    tm = to_mask(inst.tree_vertices)
    if tm & cyc.mask:
        return PreconditionUnmet("tree and cycle overlap")
    if not tm or not is_forest_mask(g, tm) or len(components_mask(g, tm)) != 1:
        return PreconditionUnmet("G[T] is not a tree")
    leaves = vertex_set(inst.leaves)
    t = len(leaves)
    if len(leaves) != len(inst.leaves):
        return PreconditionUnmet("repeated leaf")
    if t < 3:
        return PreconditionUnmet(f"need at least 3 leaves, got {t}")
    for x in leaves:
        if not tm >> x & 1 or degree_into(g, x, tm) > 1:
            return PreconditionUnmet(f"{x} is not a leaf of T")
    e = sum(degree_into(g, x, cyc.mask) for x in leaves)
    if e < 2 * t + 1:
        return PreconditionUnmet(f"e(leaves, C) = {e} < 2t + 1 = {2 * t + 1}")
    ctx = OutcomeContext(region=vertex_set(inst.tree_vertices + cyc.vertices), reference_length=len(cyc))
    return _witness(g, ctx, _shorter_cycle)


def lemma_forest_augment(
    g: Graph, sys_: CycleSystem, k: int, t: int, assume_sigma: bool = False
) -> LemmaOutcome:
    """Minimal (k-1)-system whose complement H is a forest with at least t leaves, under
    sigma_t(G) >= 2kt - t + 1: k disjoint cycles in G, or a triangle in some
    G[H + C_i] whose removal leaves fewer components than H.

    ``assume_sigma`` skips the (expensive) sigma_t check; the outcome's context
    then records nothing about it and the caller owns the assertion.
    """
    if k < 2 or t < 3:
        return PreconditionUnmet(f"need k >= 2 and t >= 3, got k={k}, t={t}")
    if len(sys_) != k - 1:
        return PreconditionUnmet(f"system has {len(sys_)} cycles, expected k - 1 = {k - 1}")
    if not sys_.is_valid_in(g):
        return PreconditionUnmet("system is not a cycle system of G")
    h = g.vertex_mask & ~sys_.mask
    if not is_forest_mask(g, h):
        return PreconditionUnmet("H = G - C is not a forest")
    leaves = [v for v in iter_bits(h) if degree_into(g, v, h) <= 1]
    if len(leaves) < t:
        return PreconditionUnmet(f"H has {len(leaves)} leaves, fewer than t = {t}")
    if not assume_sigma:
        s = sigma_t(g, t)
        if s < 2 * k * t - t + 1:
            return PreconditionUnmet(f"sigma_{t}(G) = {s} < {2 * k * t - t + 1}")
    cert = certify_minimal(g, sys_)
    if not cert.is_minimal:
        return PreconditionUnmet(f"system is not minimal (total order {cert.violation.total_order} exists)")
    search = _Search(g)
    found = search.find(g.vertex_mask, k, g.n)
    if found is not None:
        ctx = OutcomeContext(region=tuple(range(g.n)), k=k)
        return AugmentedSystem(CycleSystem(tuple(Cycle(c) for c in found)), ctx)
    hv = tuple(iter_bits(h))
    for c in sys_.cycles:
        ctx = OutcomeContext(region=vertex_set(hv + c.vertices), forest=hv)
        tri = _reducing_triangle(search, to_mask(ctx.region), ctx)
        if tri is not None:
            return tri
    raise LemmaViolation("hypotheses hold but neither k disjoint cycles nor a reducing triangle exist")


def _check_tree(tree: Graph) -> None:
    if tree.n == 0 or not is_forest_mask(tree, tree.vertex_mask) or omega(tree) != 1:
        raise NotATree("graph is not a tree")


def tree_leaf_lower_bound(tree: Graph, large_vertices: Sequence[int]) -> int:
    """Lower bound sum(d_i) - 2(m - 1) on the leaf count from large-degree vertices.

    With no large vertices listed the formula reads 2, which holds for every
    tree with at least two vertices; ``K_1`` (one leaf) returns 1.
    """
    _check_tree(tree)
    large = vertex_set(large_vertices)
    for v in large:
        if not 0 <= v < tree.n or tree.degree(v) < 3:
            raise NotLargeDegree(f"vertex {v} has degree below 3")
    if tree.n == 1:
        return 1
    return sum(tree.degree(v) for v in large) - 2 * (len(large) - 1)


def leafset_degree_upper_bound(f: Graph, s: Sequence[int]) -> int:
    """Upper bound 2|S| - 2*omega(F) on d_F(S) for any S holding every leaf of the forest."""
    if not is_forest_mask(f, f.vertex_mask):
        raise NotAForest("graph contains a cycle")
    sm = to_mask(s)
    missing = [v for v in range(f.n) if f.degree(v) <= 1 and not sm >> v & 1]
    if missing:
        raise MissingLeaf(f"S misses leaves {missing}")
    return 2 * sm.bit_count() - 2 * omega(f)


def leaf_count(f: Graph) -> int:
    return sum(1 for v in range(f.n) if f.degree(v) <= 1)


def lemma_degree_sequence_shorten(g: Graph, c1, c2) -> LemmaOutcome:
    """|C2| >= 6 and a degree sequence from C2 to C1 dominating one of ``DEGREE_PATTERNS``:
    two disjoint cycles in G[C1 + C2] of smaller total order.
    """
    a, b = _is_cycle(g, c1), _is_cycle(g, c2)
    if a is None or b is None:
        return PreconditionUnmet("C1 or C2 is not a cycle of G")
    if a.mask & b.mask:
        return PreconditionUnmet("C1 and C2 overlap")
    if len(b) < 6:
        return PreconditionUnmet(f"|C2| = {len(b)} < 6")
    seq = degree_sequence_between(g, b, a)
    if not any(seq.dominates(p) for p in DEGREE_PATTERNS):
        near = min(DEGREE_PATTERNS, key=lambda p: _deficit(seq.entries, p))
        return PreconditionUnmet(
            f"degree sequence {seq.entries} dominates no pattern; closest {near} "
            f"(short by {_deficit(seq.entries, near)})"
        )
    ctx = OutcomeContext(region=vertex_set(a.vertices + b.vertices), max_total=len(a) + len(b))
    return _witness(g, ctx)


def _deficit(entries: Sequence[int], pattern: Sequence[int]) -> int:
    padded = list(entries) + [0] * max(0, len(pattern) - len(entries))
    return sum(max(0, p - e) for e, p in zip(padded, pattern))


def lemma_triangle_path_external(g: Graph, c, p: Sequence[int], z: int) -> LemmaOutcome:
    """Triangle C, path P = x..y (at least two vertices) with e(x, C), e(y, C) >= 2, and a
    vertex z with e(z, C) = 3: two disjoint cycles in G[C + P + z].
    """
    tri = _is_cycle(g, c)
    if tri is None or len(tri) != 3:
        return PreconditionUnmet("C is not a triangle of G")
    p = tuple(p)
    if not _is_path(g, p):
        return PreconditionUnmet("P is not a path of G")
    if len(p) < 2:
        return PreconditionUnmet("P needs distinct end-vertices")
    if not 0 <= z < g.n:
        return PreconditionUnmet("z out of range")
    pm = to_mask(p)
    if pm & tri.mask or (pm | tri.mask) >> z & 1:
        return PreconditionUnmet("C, P and z must be pairwise disjoint")
    x, y = p[0], p[-1]
    if degree_into(g, x, tri.mask) < 2 or degree_into(g, y, tri.mask) < 2:
        return PreconditionUnmet("an end of P has fewer than two neighbours on C")
    if degree_into(g, z, tri.mask) != 3:
        return PreconditionUnmet("e(z, C) != 3")
    ctx = OutcomeContext(region=vertex_set(tri.vertices + p + (z,)))
    return _witness(g, ctx)


def _short_induced_cycle(g: Graph, c) -> Cycle | PreconditionUnmet:
    cyc = _is_cycle(g, c)
    if cyc is None:
        return PreconditionUnmet("C is not a cycle of G")
    if len(cyc) > 4:
        return PreconditionUnmet(f"|C| = {len(cyc)} > 4")
    if induced_edge_count(g, cyc.mask) != len(cyc):
        return PreconditionUnmet("C is not induced")
    return cyc


def _end_path(g: Graph, p: Sequence[int], name: str) -> PreconditionUnmet | None:
    if not _is_path(g, p):
        return PreconditionUnmet(f"{name} is not a path of G")
    if len(p) < 2:
        return PreconditionUnmet(f"{name} needs distinct end-vertices")
    return None


def lemma_short_cycle_two_paths(g: Graph, c, p1: Sequence[int], p2: Sequence[int]) -> LemmaOutcome:
    """Induced C with |C| <= 4, disjoint paths P1 = x..y and P2 = z..w with e(x, C),
    e(y, C), e(z, C) >= 2 and e(w, C) >= 1: two disjoint cycles or a cycle
    shorter than C, inside G[C + P1 + P2].
    """
    cyc = _short_induced_cycle(g, c)
    if isinstance(cyc, PreconditionUnmet):
        return cyc
    p1, p2 = tuple(p1), tuple(p2)
    for p, name in ((p1, "P1"), (p2, "P2")):
        bad = _end_path(g, p, name)
        if bad is not None:
            return bad
    m1, m2 = to_mask(p1), to_mask(p2)
    if m1 & m2 or (m1 | m2) & cyc.mask:
        return PreconditionUnmet("C, P1 and P2 must be pairwise disjoint")
    cm = cyc.mask
    if degree_into(g, p1[0], cm) < 2 or degree_into(g, p1[-1], cm) < 2:
        return PreconditionUnmet("an end of P1 has fewer than two neighbours on C")
    if degree_into(g, p2[0], cm) < 2:
        return PreconditionUnmet("e(z, C) < 2")
    if degree_into(g, p2[-1], cm) < 1:
        return PreconditionUnmet("e(w, C) < 1")
    ctx = OutcomeContext(region=vertex_set(cyc.vertices + p1 + p2), reference_length=len(cyc))
    return _witness(g, ctx, _shorter_cycle)


def lemma_short_cycle_path_connected(
    g: Graph, c, p1: Sequence[int], p2_vertices: Sequence[int], u: int, v: int, w: int
) -> LemmaOutcome:
    """Induced C with |C| <= 4, a path P1 = x..y with e(x, C), e(y, C) >= 2, a connected
    P2 disjoint from it holding u, v, w each with a neighbour on C: two
    disjoint cycles or a cycle shorter than C, inside G[C + P1 + P2].
    """
    cyc = _short_induced_cycle(g, c)
    if isinstance(cyc, PreconditionUnmet):
        return cyc
    p1 = tuple(p1)
    bad = _end_path(g, p1, "P1")
    if bad is not None:
        return bad
    p2 = vertex_set(p2_vertices)
    if not p2 or not _in_range(g, p2):
        return PreconditionUnmet("P2 is empty or out of range")
    m1, m2 = to_mask(p1), to_mask(p2)
    if m1 & m2 or (m1 | m2) & cyc.mask:
        return PreconditionUnmet("C, P1 and P2 must be pairwise disjoint")
    if len(components_mask(g, m2)) != 1:
        return PreconditionUnmet("G[P2] is not connected")
    if len({u, v, w}) != 3 or any(not m2 >> q & 1 for q in (u, v, w)):
        return PreconditionUnmet("u, v, w must be three distinct vertices of P2")
    cm = cyc.mask
    if degree_into(g, p1[0], cm) < 2 or degree_into(g, p1[-1], cm) < 2:
        return PreconditionUnmet("an end of P1 has fewer than two neighbours on C")
    if any(degree_into(g, q, cm) < 1 for q in (u, v, w)):
        return PreconditionUnmet("one of u, v, w has no neighbour on C")
    ctx = OutcomeContext(region=vertex_set(cyc.vertices + p1 + p2), reference_length=len(cyc))
    return _witness(g, ctx, _shorter_cycle)
