"""Seeded random instances that satisfy each lemma's hypotheses.

Each generator builds the skeleton (forest, tree, cycle, paths), adds
random cross edges until the threshold holds, sprinkles extra edges that
cannot break a side condition, and finally relabels vertices with a random
permutation so no structure hides in the labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from cyclepack.graph import Graph, build_graph
from cyclepack.lemmas.engine import DEGREE_PATTERNS, ForestTriangleInstance, TreeCycleInstance
from cyclepack.packing import Cycle


@dataclass
class _Builder:
    """Edge set under construction; vertices are handed out in blocks by ``new``."""

    n: int = 0
    edges: set = field(default_factory=set)

    def new(self, count: int) -> list[int]:
        vs = list(range(self.n, self.n + count))
        self.n += count
        return vs

    def add(self, u: int, v: int) -> None:
        if u != v:
            self.edges.add((min(u, v), max(u, v)))

    def has(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def cycle(self, vs: list[int]) -> None:
        for i in range(len(vs)):
            self.add(vs[i], vs[(i + 1) % len(vs)])

    def path(self, vs: list[int]) -> None:
        for a, b in zip(vs, vs[1:]):
            self.add(a, b)

    def tree(self, rng: random.Random, vs: list[int]) -> None:
        for i in range(1, len(vs)):
            self.add(vs[i], vs[rng.randrange(i)])

    def join_some(self, rng: random.Random, x: int, targets: list[int], count: int) -> None:
        for y in rng.sample(targets, count):
            self.add(x, y)

    def finish(self, rng: random.Random) -> tuple[Graph, list[int]]:
        perm = list(range(self.n))
        rng.shuffle(perm)
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges]), perm


def _degree(b: _Builder, x: int, targets: list[int]) -> int:
    return sum(1 for y in targets if b.has(x, y))


def _top_up(rng: random.Random, b: _Builder, sources: list[int], targets: list[int], need: int) -> None:
    """Add source-target edges at random until e(sources, targets) >= need."""
    while sum(_degree(b, x, targets) for x in sources) < need:
        x = rng.choice(sources)
        free = [y for y in targets if not b.has(x, y)]
        if free:
            b.add(x, rng.choice(free))


def _sprinkle(rng: random.Random, b: _Builder, a: list[int], c: list[int], p: float) -> None:
    for x in a:
        for y in c:
            if rng.random() < p:
                b.add(x, y)


def _outside(rng: random.Random, b: _Builder, count: int, p: float = 0.4) -> None:
    """Extra vertices beyond the region, so witnesses must respect it."""
    inner = list(range(b.n))
    for z in b.new(count):
        for y in inner:
            if rng.random() < p:
                b.add(z, y)


def _leaves(b: _Builder, vs: list[int]) -> list[int]:
    inside = set(vs)
    return [v for v in vs if sum(1 for w in inside if b.has(v, w)) <= 1]


def gen_forest_triangle(rng: random.Random) -> ForestTriangleInstance:
    while True:
        b = _Builder()
        comps = []
        for _ in range(rng.randint(2, 4)):
            comp = b.new(rng.randint(1, 6))
            b.tree(rng, comp)
            comps.append(comp)
        forest = [v for comp in comps for v in comp]
        per_comp = [_leaves(b, comp) for comp in comps]
        pool = [v for ls in per_comp for v in ls]
        if len(pool) < 3:
            continue
        t = rng.randint(3, min(len(pool), 7))
        first, second = rng.sample(per_comp, 2)
        chosen = {rng.choice(first), rng.choice(second)}
        chosen.update(rng.sample([v for v in pool if v not in chosen], t - 2))
        chosen = sorted(chosen)
        tri = b.new(3)
        b.cycle(tri)
        tight = rng.random() < 0.5
        if not tight:
            for x in chosen:
                b.join_some(rng, x, tri, rng.randint(0, 3))
        _top_up(rng, b, chosen, tri, 2 * t + 1)
        if not tight:
            _sprinkle(rng, b, [v for v in forest if v not in chosen], tri, rng.choice((0.0, 0.2, 0.5)))
        _outside(rng, b, rng.randint(0, 2))
        g, perm = b.finish(rng)
        return ForestTriangleInstance(
            g,
            tuple(sorted(perm[v] for v in forest)),
            Cycle.of(perm[v] for v in tri),
            tuple(sorted(perm[v] for v in chosen)),
        )


def gen_tree_cycle(rng: random.Random) -> TreeCycleInstance:
    while True:
        b = _Builder()
        tree = b.new(rng.randint(4, 11))
        b.tree(rng, tree)
        leaves = _leaves(b, tree)
        if len(leaves) < 3:
            continue
        t = rng.randint(3, min(len(leaves), 6))
        chosen = sorted(rng.sample(leaves, t))
        cyc = b.new(rng.randint(3, 9))
        b.cycle(cyc)
        if rng.random() < 0.2:
            _sprinkle(rng, b, cyc, cyc, 0.1)
        tight = rng.random() < 0.5
        if not tight:
            for x in chosen:
                b.join_some(rng, x, cyc, rng.randint(0, min(3, len(cyc))))
        _top_up(rng, b, chosen, cyc, 2 * t + 1)
        if not tight:
            _sprinkle(rng, b, [v for v in tree if v not in chosen], cyc, rng.choice((0.0, 0.1, 0.3)))
        _outside(rng, b, rng.randint(0, 2))
        g, perm = b.finish(rng)
        return TreeCycleInstance(
            g,
            tuple(sorted(perm[v] for v in tree)),
            Cycle.of(perm[v] for v in cyc),
            tuple(sorted(perm[v] for v in chosen)),
        )


@dataclass(frozen=True)
class DegSeqInstance:
    g: Graph
    c1: Cycle
    c2: Cycle
    pattern: tuple[int, ...]


def gen_deg_seq_shorten(rng: random.Random) -> DegSeqInstance:
    b = _Builder()
    pattern = rng.choice(DEGREE_PATTERNS)
    c1 = b.new(rng.randint(max(3, pattern[0]), 9))
    c2 = b.new(rng.randint(6, 11))
    b.cycle(c1)
    b.cycle(c2)
    if rng.random() < 0.15:
        _sprinkle(rng, b, c1, c1, 0.1)
    if rng.random() < 0.15:
        _sprinkle(rng, b, c2, c2, 0.05)
    for x, d in zip(rng.sample(c2, len(pattern)), pattern):
        b.join_some(rng, x, c1, d)
    _sprinkle(rng, b, c2, c1, rng.choice((0.0, 0.05, 0.15)))
    _outside(rng, b, rng.randint(0, 2))
    g, perm = b.finish(rng)
    return DegSeqInstance(g, Cycle.of(perm[v] for v in c1), Cycle.of(perm[v] for v in c2), pattern)


@dataclass(frozen=True)
class TrianglePathInstance:
    g: Graph
    c: Cycle
    p: tuple[int, ...]
    z: int


def gen_triangle_path(rng: random.Random) -> TrianglePathInstance:
    b = _Builder()
    tri = b.new(3)
    b.cycle(tri)
    p = b.new(rng.randint(2, 7))
    b.path(p)
    if rng.random() < 0.2:
        _sprinkle(rng, b, p, p, 0.15)
    (z,) = b.new(1)
    for x in (p[0], p[-1]):
        b.join_some(rng, x, tri, rng.randint(2, 3))
    b.join_some(rng, z, tri, 3)
    _sprinkle(rng, b, p[1:-1], tri, rng.choice((0.0, 0.2)))
    _sprinkle(rng, b, [z], p, rng.choice((0.0, 0.2)))
    _outside(rng, b, rng.randint(0, 2))
    g, perm = b.finish(rng)
    return TrianglePathInstance(g, Cycle.of(perm[v] for v in tri), tuple(perm[v] for v in p), perm[z])


@dataclass(frozen=True)
class TwoPathsInstance:
    g: Graph
    c: Cycle
    p1: tuple[int, ...]
    p2: tuple[int, ...]


def gen_short_cycle_two_paths(rng: random.Random) -> TwoPathsInstance:
    b = _Builder()
    cyc = b.new(rng.choice((3, 4)))
    b.cycle(cyc)
    p1 = b.new(rng.randint(2, 6))
    p2 = b.new(rng.randint(2, 6))
    b.path(p1)
    b.path(p2)
    for x in (p1[0], p1[-1]):
        b.join_some(rng, x, cyc, rng.randint(2, len(cyc)))
    b.join_some(rng, p2[0], cyc, rng.randint(2, len(cyc)))
    b.join_some(rng, p2[-1], cyc, rng.randint(1, len(cyc)))
    _sprinkle(rng, b, p1[1:-1] + p2[1:-1], cyc, rng.choice((0.0, 0.15)))
    _sprinkle(rng, b, p1, p2, rng.choice((0.0, 0.1)))
    _outside(rng, b, rng.randint(0, 2))
    g, perm = b.finish(rng)
    return TwoPathsInstance(g, Cycle.of(perm[v] for v in cyc), tuple(perm[v] for v in p1), tuple(perm[v] for v in p2))


@dataclass(frozen=True)
class PathConnectedInstance:
    g: Graph
    c: Cycle
    p1: tuple[int, ...]
    p2: tuple[int, ...]
    u: int
    v: int
    w: int


def gen_short_cycle_path_connected(rng: random.Random) -> PathConnectedInstance:
    b = _Builder()
    cyc = b.new(rng.choice((3, 4)))
    b.cycle(cyc)
    p1 = b.new(rng.randint(2, 6))
    b.path(p1)
    p2 = b.new(rng.randint(3, 8))
    b.tree(rng, p2)
    if rng.random() < 0.3:
        _sprinkle(rng, b, p2, p2, 0.15)
    for x in (p1[0], p1[-1]):
        b.join_some(rng, x, cyc, rng.randint(2, len(cyc)))
    u, v, w = rng.sample(p2, 3)
    for q in (u, v, w):
        b.join_some(rng, q, cyc, rng.randint(1, len(cyc)))
    _sprinkle(rng, b, p1[1:-1], cyc, rng.choice((0.0, 0.15)))
    _sprinkle(rng, b, [q for q in p2 if q not in (u, v, w)], cyc, rng.choice((0.0, 0.1)))
    _outside(rng, b, rng.randint(0, 2))
    g, perm = b.finish(rng)
    return PathConnectedInstance(
        g,
        Cycle.of(perm[q] for q in cyc),
        tuple(perm[q] for q in p1),
        tuple(sorted(perm[q] for q in p2)),
        perm[u],
        perm[v],
        perm[w],
    )


def random_tree(rng: random.Random, n: int) -> Graph:
    b = _Builder()
    b.tree(rng, b.new(n))
    return b.finish(rng)[0]


def random_forest(rng: random.Random, n: int) -> Graph:
    b = _Builder()
    left = n
    while left:
        size = rng.randint(1, left)
        b.tree(rng, b.new(size))
        left -= size
    return b.finish(rng)[0]


GENERATORS: dict[str, Callable[[random.Random], object]] = {
    "forest-triangle": gen_forest_triangle,
    "tree-cycle": gen_tree_cycle,
    "deg-seq-shorten": gen_deg_seq_shorten,
    "triangle-path": gen_triangle_path,
    "short-cycle-two-paths": gen_short_cycle_two_paths,
    "short-cycle-connected": gen_short_cycle_path_connected,
}


def instances(name: str, count: int, seed: int) -> list:
    rng = random.Random(seed)
    gen = GENERATORS[name]
    return [gen(rng) for _ in range(count)]
