"""Simple undirected graphs over dense integer labels and their basic statistics.

Vertices are always ``0..n-1``. Besides the adjacency sets, every graph
keeps one integer bitmask per vertex; the search code works on those.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

INFINITE = math.inf


class GraphError(ValueError):
    pass


class IndexOutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class OverlappingSets(GraphError):
    pass


class NotAForest(GraphError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertex_set(vertices: Iterable[int]) -> tuple[int, ...]:
    """Normalize to the sorted, duplicate-free tuple used everywhere as a vertex set."""
    return tuple(sorted(set(vertices)))


class Graph:
    """Immutable simple graph. Equality is on ``n`` and the edge set."""

    __slots__ = ("n", "adj", "masks", "_edges")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        self.n = n
        self.adj = tuple(frozenset(a) for a in adj)
        self.masks = tuple(to_mask(a) for a in self.adj)
        self._edges = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        return cls(len(masks), [tuple(iter_bits(m)) for m in masks])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()!r})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise IndexOutOfRange(f"negative vertex count {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, adj)


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return build_graph(offset, edges)


def join(a: Graph, b: Graph) -> Graph:
    """``a + b``: disjoint union plus every edge between the two parts."""
    u = disjoint_union(a, b)
    extra = [(i, a.n + j) for i in range(a.n) for j in range(b.n)]
    return build_graph(u.n, u.edges() + extra)


def _check_members(g: Graph, s: Iterable[int]) -> None:
    for v in s:
        if not 0 <= v < g.n:
            raise IndexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")


def cross_edge_count(g: Graph, x: Iterable[int], y: Iterable[int]) -> int:
    """e(X, Y): number of edges with one end in ``x`` and the other in ``y``."""
    xm, ym = to_mask(x), to_mask(y)
    if xm & ym:
        raise OverlappingSets("vertex sets share vertices")
    return sum((g.masks[v] & ym).bit_count() for v in iter_bits(xm))


def degree_into(g: Graph, v: int, s: int | Iterable[int]) -> int:
    """e(v, S) with ``s`` given as a mask or an iterable."""
    m = s if isinstance(s, int) else to_mask(s)
    return (g.masks[v] & m).bit_count()


def independent_sets(g: Graph, t: int) -> Iterator[tuple[int, ...]]:
    """Every independent set of exactly ``t`` vertices, in a fixed order.

    Branches on the lowest undecided vertex (take it first, then skip it),
    pruning when too few candidates remain.
    """
    if t < 0:
        return
    masks = g.masks

    def grow(chosen: list[int], cand: int):
        if len(chosen) == t:
            yield tuple(chosen)
            return
        while cand.bit_count() >= t - len(chosen):
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            chosen.append(v)
            yield from grow(chosen, cand & ~masks[v])
            chosen.pop()

    yield from grow([], g.vertex_mask)


def sigma_t(g: Graph, t: int) -> int | float:
    """Minimum degree sum over independent ``t``-sets; ``INFINITE`` if there are none."""
    if t < 1:
        raise ValueError("t must be positive")
    from cyclepack import kernels

    return kernels.sigma(g, t)


def sigma_t_reference(g: Graph, t: int) -> int | float:
    """Plain minimum over :func:`independent_sets`; the slow path the kernel is checked against."""
    deg = g.degrees()
    return min((sum(deg[v] for v in s) for s in independent_sets(g, t)), default=INFINITE)


def independence_number(g: Graph) -> int:
    t = 0
    while next(independent_sets(g, t + 1), None) is not None:
        t += 1
    return t


def components_mask(g: Graph, within: int) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by lowest vertex."""
    masks = g.masks
    out = []
    rest = within
    while rest:
        seen = rest & -rest
        frontier = seen
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= masks[v]
            frontier = nxt & rest & ~seen
            seen |= frontier
        out.append(seen)
        rest &= ~seen
    return out


def components(g: Graph) -> list[tuple[int, ...]]:
    return [tuple(iter_bits(c)) for c in components_mask(g, g.vertex_mask)]


def omega(g: Graph, within: int | None = None) -> int:
    """Number of components of ``G[within]`` (whole graph by default)."""
    return len(components_mask(g, g.vertex_mask if within is None else within))


def induced_edge_count(g: Graph, within: int) -> int:
    return sum((g.masks[v] & within).bit_count() for v in iter_bits(within)) // 2


def is_forest_mask(g: Graph, within: int) -> bool:
    return induced_edge_count(g, within) == within.bit_count() - omega(g, within)


@dataclass(frozen=True)
class ForestDecomposition:
    components: tuple[tuple[int, ...], ...]
    leaves: tuple[int, ...]
    bipartition: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def omega(self) -> int:
        return len(self.components)

    def component_leaves(self, i: int) -> tuple[int, ...]:
        comp = set(self.components[i])
        return tuple(v for v in self.leaves if v in comp)


def forest_decompose(g: Graph) -> ForestDecomposition:
    if not is_forest_mask(g, g.vertex_mask):
        raise NotAForest("graph contains a cycle")
    comps = components(g)
    # isolated vertices are leaves too
    leaves = tuple(v for v in range(g.n) if g.degree(v) <= 1)
    sides = []
    for comp in comps:
        color = {comp[0]: 0}
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
        sides.append((
            tuple(v for v in comp if color[v] == 0),
            tuple(v for v in comp if color[v] == 1),
        ))
    return ForestDecomposition(tuple(comps), leaves, tuple(sides))


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Graph
    to_parent: tuple[int, ...]
    from_parent: dict

    def lift(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.to_parent[v] for v in vertices)


def induced_subgraph(g: Graph, s: Iterable[int]) -> InducedSubgraph:
    members = vertex_set(s)
    _check_members(g, members)
    index = {v: i for i, v in enumerate(members)}
    edges = [(index[u], index[v]) for u in members for v in g.adj[u] if v in index and u < v]
    return InducedSubgraph(build_graph(len(members), edges), members, index)


def remove_vertices(g: Graph, s: Iterable[int]) -> InducedSubgraph:
    """``G - S``."""
    drop = set(s)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing cross-degree counts, each paired with the vertex it came from."""

    entries: tuple[int, ...]
    witnesses: tuple[int, ...]

    def dominates(self, pattern: Sequence[int]) -> bool:
        """True when the sorted entries are entrywise at least ``pattern`` (also sorted)."""
        need = sorted(pattern, reverse=True)
        if len(need) > len(self.entries):
            return False
        return all(e >= p for e, p in zip(self.entries, need))
