"""Exact search for vertex-disjoint cycles and minimum-order cycle systems.

The search branches on the lowest live vertex ``v`` of the current vertex
set: either ``v`` lies on one of the chosen cycles, or it is discarded.
Only chordless cycles through ``v`` need to be tried, because any cycle's
vertex set contains a chordless cycle and if that one misses ``v`` the
discard branch covers it. Vertices of degree at most one are peeled off
before every branch, and failed ``(vertex set, k, order budget)`` states are
memoized.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from cyclepack.graph import (
    DegreeSequence,
    Graph,
    OverlappingSets,
    components_mask,
    iter_bits,
    to_mask,
)


class BudgetExceeded(RuntimeError):
    """The search ran past its time budget; the answer is unknown."""


class InvalidCycle(ValueError):
    pass


class NotMinimal(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Cycle:
    """A cycle in canonical form: smallest vertex first, smaller neighbour second."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InvalidCycle(f"not a cycle: {vs}")
        if canonical_rotation(vs) != tuple(vs):
            raise InvalidCycle(f"cycle not in canonical form: {vs}")

    @classmethod
    def of(cls, seq: Iterable[int]) -> Cycle:
        vs = tuple(seq)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InvalidCycle(f"not a cycle: {vs}")
        return cls(canonical_rotation(vs))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def mask(self) -> int:
        return to_mask(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_in(self, g: Graph) -> bool:
        return all(0 <= v < g.n for v in self.vertices) and all(g.has_edge(u, v) for u, v in self.edges())

    def chords(self, g: Graph) -> list[tuple[int, int]]:
        vs = self.vertices
        L = len(vs)
        return [
            (vs[i], vs[j])
            for i in range(L)
            for j in range(i + 2, L)
            if not (i == 0 and j == L - 1) and g.has_edge(vs[i], vs[j])
        ]


def canonical_rotation(vs: Sequence[int]) -> tuple[int, ...]:
    i = min(range(len(vs)), key=vs.__getitem__)
    rot = tuple(vs[i:]) + tuple(vs[:i])
    if rot[1] > rot[-1]:
        rot = (rot[0],) + rot[:0:-1]
    return rot


@dataclass(frozen=True)
class CycleSystem:
    """Pairwise vertex-disjoint cycles, kept sorted so equal systems compare equal."""

    cycles: tuple[Cycle, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(sorted(self.cycles)))
        seen = 0
        for c in self.cycles:
            if seen & c.mask:
                raise OverlappingSets("cycles of a system must be vertex-disjoint")
            seen |= c.mask

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    @property
    def total_order(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def mask(self) -> int:
        return to_mask(v for c in self.cycles for v in c)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(v for c in self.cycles for v in c))

    def is_valid_in(self, g: Graph) -> bool:
        return all(c.is_in(g) for c in self.cycles)

    def key(self) -> tuple:
        """Ordering used to break ties between systems of equal total order."""
        return tuple(c.vertices for c in self.cycles)

    def to_text(self) -> str:
        lines = [f"{len(self.cycles)} {self.total_order}"]
        lines += [" ".join(map(str, c.vertices)) for c in self.cycles]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CycleSystem:
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty cycle-system text")
        k, total = map(int, lines[0])
        cycles = tuple(Cycle.of(map(int, ln)) for ln in lines[1:])
        sys_ = cls(cycles)
        if len(sys_) != k or sys_.total_order != total:
            raise ValueError("cycle-system header does not match its cycles")
        return sys_


@dataclass(frozen=True)
class MinimalityCertificate:
    is_minimal: bool
    violation: CycleSystem | None = None


class _Search:
    """One search context over a fixed graph; the failure memo is shared across queries."""

    def __init__(self, g: Graph, budget_ms: float | None = None):
        self.g = g
        self.masks = g.masks
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self.failed: set[tuple[int, int, int]] = set()
        self.calls = 0

    def _tick(self):
        self.calls += 1
        if self.deadline is not None and self.calls & 255 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"search budget exhausted after {self.calls} nodes")

    def prune(self, avail: int) -> int:
        masks = self.masks
        changed = True
        while changed:
            changed = False
            for v in iter_bits(avail):
                if (masks[v] & avail).bit_count() <= 1:
                    avail &= ~(1 << v)
                    changed = True
        return avail

    def chordless_through(self, v: int, avail: int, max_len: int) -> list[tuple[int, ...]]:
        """Chordless cycles of G[avail] through ``v`` with ``v`` as their smallest vertex.

        Requires every vertex of ``avail`` to be >= ``v``. Sorted by length, then lexicographically.
        """
        masks = self.masks
        nv = masks[v] & avail
        found = []
        path = [v]

        # ``blocked`` holds the path plus the neighbours of all path vertices
        # except the tip, so extending never creates a chord
        def extend(tip: int, blocked: int):
            if len(path) >= max_len:
                return
            for w in iter_bits(masks[tip] & avail & ~blocked):
                if nv >> w & 1:
                    if len(path) >= 2 and path[1] < w:
                        found.append(tuple(path) + (w,))
                    continue
                path.append(w)
                extend(w, blocked | masks[tip] | (1 << w))
                path.pop()

        for first in iter_bits(nv):
            path.append(first)
            extend(first, (1 << v) | (1 << first))
            path.pop()
        found.sort(key=lambda c: (len(c), c))
        return found

    def find(self, avail: int, k: int, budget: int) -> list[tuple[int, ...]] | None:
        """``k`` disjoint cycles inside ``avail`` using at most ``budget`` vertices in total."""
        if k == 0:
            return []
        self._tick()
        avail = self.prune(avail)
        if avail.bit_count() < 3 * k or budget < 3 * k:
            return None
        key = (avail, k, min(budget, avail.bit_count()))
        if key in self.failed:
            return None
        low = avail & -avail
        v = low.bit_length() - 1
        for cyc in self.chordless_through(v, avail, budget - 3 * (k - 1)):
            rest = self.find(avail & ~to_mask(cyc), k - 1, budget - len(cyc))
            if rest is not None:
                return [cyc] + rest
        rest = self.find(avail & ~low, k, budget)
        if rest is None:
            self.failed.add(key)
        return rest

    def chordless_within(self, avail: int, max_len: int) -> list[tuple[int, ...]]:
        """All chordless cycles of G[avail], lexicographically sorted."""
        out = []
        for v in iter_bits(avail):
            upper = avail & ~((1 << v) - 1)
            out.extend(self.chordless_through(v, upper, max_len))
        out.sort()
        return out

    def min_total(self, avail: int, k: int, upper: int) -> int | None:
        """Smallest total order of a ``k``-system inside ``avail``, searching up to ``upper``."""
        for total in range(3 * k, upper + 1):
            if self.find(avail, k, total) is not None:
                return total
        return None

    def lex_first(self, avail: int, k: int, total: int) -> list[tuple[int, ...]] | None:
        """Lexicographically smallest sorted ``k``-system of total order at most ``total``.

        Scanning first cycles in lex order and keeping the first that still
        completes gives the global lex minimum: any completing system whose
        smallest cycle were earlier would have been accepted earlier.
        """
        chosen: list[tuple[int, ...]] = []
        for rem in range(k, 0, -1):
            for cyc in self.chordless_within(avail, total - 3 * (rem - 1)):
                if chosen and cyc <= chosen[-1]:
                    continue
                m = to_mask(cyc)
                if self.find(avail & ~m, rem - 1, total - len(cyc)) is not None:
                    chosen.append(cyc)
                    avail &= ~m
                    total -= len(cyc)
                    break
            else:
                return None
        return chosen

    def all_systems(self, avail: int, k: int, total: int, after: tuple = ()) -> Iterator[list[tuple[int, ...]]]:
        """Every sorted ``k``-system inside ``avail`` of total order exactly ``total``."""
        if k == 0:
            if total == 0:
                yield []
            return
        for cyc in self.chordless_within(avail, total - 3 * (k - 1)):
            if cyc <= after:
                continue
            m = to_mask(cyc)
            if k == 1 and len(cyc) != total:
                continue
            if self.find(avail & ~m, k - 1, total - len(cyc)) is None:
                continue
            for rest in self.all_systems(avail & ~m, k - 1, total - len(cyc), cyc):
                yield [cyc] + rest


def _system(cycles: Iterable[Sequence[int]]) -> CycleSystem:
    return CycleSystem(tuple(Cycle.of(c) for c in cycles))


def enumerate_cycles(g: Graph, max_len: int | None = None) -> Iterator[Cycle]:
    """Every cycle of ``g`` (chords allowed) exactly once, in canonical form."""
    if max_len is not None and max_len < 3:
        raise ValueError("max_len must be at least 3")
    limit = g.n if max_len is None else min(max_len, g.n)
    masks = g.masks
    for s in range(g.n):
        upper = g.vertex_mask & ~((1 << (s + 1)) - 1)
        path = [s]

        def walk(tip: int, used: int):
            for w in iter_bits(masks[tip] & upper & ~used):
                path.append(w)
                if masks[w] >> s & 1 and len(path) >= 3 and path[1] < w:
                    yield Cycle(tuple(path))
                if len(path) < limit:
                    yield from walk(w, used | (1 << w))
                path.pop()

        yield from walk(s, 1 << s)


def find_disjoint_cycles(g: Graph, k: int, budget_ms: float | None = None) -> CycleSystem | None:
    """``k`` vertex-disjoint cycles of ``g``, or ``None`` when none exist.

    Raises :class:`BudgetExceeded` if ``budget_ms`` runs out first.
    """
    if k < 1:
        raise ValueError("k must be positive")
    found = _Search(g, budget_ms).find(g.vertex_mask, k, g.n)
    return None if found is None else _system(found)


def has_disjoint_cycles(g: Graph, k: int, budget_ms: float | None = None) -> bool:
    return k <= 0 or find_disjoint_cycles(g, k, budget_ms) is not None


def max_disjoint_cycles(g: Graph, budget_ms: float | None = None) -> tuple[int, CycleSystem]:
    search = _Search(g, budget_ms)
    best: list = []
    for k in range(1, g.n // 3 + 1):
        found = search.find(g.vertex_mask, k, g.n)
        if found is None:
            break
        best = found
    return len(best), _system(best)


def is_valid_system(g: Graph, sys_: CycleSystem) -> bool:
    return sys_.is_valid_in(g)


def minimize_system(
    g: Graph,
    sys_: CycleSystem,
    omega_refine: bool = False,
    heuristic: bool = False,
    budget_ms: float | None = None,
) -> CycleSystem:
    """A system with as many cycles as ``sys_`` and the least possible total order.

    Ties go to the lexicographically smallest system. With ``omega_refine``
    the tie among minimum-order systems is first broken by the number of
    components left in ``G - system``. ``heuristic`` swaps in a local search
    (shorten one cycle at a time) that is not guaranteed to be optimal.
    """
    if not sys_.is_valid_in(g):
        raise InvalidCycle("system is not a cycle system of this graph")
    k = len(sys_)
    if k == 0:
        return sys_
    if heuristic:
        return _local_minimize(g, sys_, budget_ms)
    search = _Search(g, budget_ms)
    full = g.vertex_mask
    total = search.min_total(full, k, sys_.total_order)
    if total is None:  # unreachable for a valid input system
        raise RuntimeError("minimum search failed to reproduce the input system")
    if omega_refine:
        best = min(
            search.all_systems(full, k, total),
            key=lambda cs: (len(components_mask(g, full & ~to_mask(v for c in cs for v in c))), cs),
        )
        return _system(best)
    return _system(search.lex_first(full, k, total))


def _local_minimize(g: Graph, sys_: CycleSystem, budget_ms: float | None) -> CycleSystem:
    search = _Search(g, budget_ms)
    cycles = [c.vertices for c in sys_.cycles]
    improved = True
    while improved:
        improved = False
        for i, c in enumerate(cycles):
            others = to_mask(v for j, d in enumerate(cycles) if j != i for v in d)
            avail = g.vertex_mask & ~others
            shorter = search.min_total(avail, 1, len(c) - 1)
            if shorter is not None:
                cycles[i] = search.lex_first(avail, 1, shorter)[0]
                improved = True
    return _system(cycles)


def certify_minimal(g: Graph, sys_: CycleSystem, budget_ms: float | None = None) -> MinimalityCertificate:
    best = minimize_system(g, sys_, budget_ms=budget_ms)
    if best.total_order < sys_.total_order:
        return MinimalityCertificate(False, best)
    return MinimalityCertificate(True, None)


@dataclass
class MinimalityReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_minimality_bounds(g: Graph, sys_: CycleSystem, verify: bool = True) -> MinimalityReport:
    """Check e(x, C) <= 3, e(x, C) = 3 => |C| = 3 and e(x, C) = 2 => |C| <= 4 on a minimal system.

    ``verify`` re-establishes minimality with the exact minimizer first and
    raises :class:`NotMinimal` if a shorter system exists.
    """
    if verify:
        cert = certify_minimal(g, sys_)
        if not cert.is_minimal:
            raise NotMinimal(
                f"a system of total order {cert.violation.total_order} < {sys_.total_order} exists"
            )
    report = MinimalityReport()
    outside = g.vertex_mask & ~sys_.mask
    for x in iter_bits(outside):
        for c in sys_.cycles:
            e = (g.masks[x] & c.mask).bit_count()
            report.checked += 1
            if e > 3:
                report.violations.append(f"e({x}, {c.vertices}) = {e} > 3")
            elif e == 3 and len(c) != 3:
                report.violations.append(f"e({x}, {c.vertices}) = 3 but |C| = {len(c)}")
            elif e == 2 and len(c) > 4:
                report.violations.append(f"e({x}, {c.vertices}) = 2 but |C| = {len(c)}")
    return report


def degree_sequence_between(g: Graph, source: Cycle | Iterable[int], target: Cycle | Iterable[int]) -> DegreeSequence:
    """Cross-degree counts e(v, target) for every v in ``source``, non-increasing."""
    src = tuple(source)
    tm = to_mask(target)
    if to_mask(src) & tm:
        raise OverlappingSets("source and target share vertices")
    pairs = sorted((((g.masks[v] & tm).bit_count(), v) for v in src), key=lambda p: (-p[0], p[1]))
    return DegreeSequence(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))
