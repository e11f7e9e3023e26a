"""Plain-text lemma instance files.

A graph (one graph6 line, or an ``n m`` edge-list block) followed by role
lines ``name: v1 v2 ...``. ``system`` may repeat, one cycle per line::

    F?~v_
    forest: 0 1 2 3
    triangle: 4 5 6
    leaves: 0 2 3
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import SimpleNamespace

from cyclepack.graph import Graph, vertex_set
from cyclepack.graph6 import edgelist_encode, graph6_encode, iter_graphs
from cyclepack.lemmas.engine import ForestTriangleInstance, TreeCycleInstance
from cyclepack.packing import Cycle, CycleSystem

ROLES = ("forest", "tree", "triangle", "cycle", "c1", "c2", "leaves", "large", "s",
         "path", "p1", "p2", "z", "u", "v", "w", "k", "t", "system")


class MalformedInstance(ValueError):
    pass


@dataclass
class InstanceFile:
    g: Graph
    roles: dict[str, tuple[int, ...]] = field(default_factory=dict)
    systems: list[tuple[int, ...]] = field(default_factory=list)

    def role(self, name: str) -> tuple[int, ...]:
        try:
            return self.roles[name]
        except KeyError:
            raise MalformedInstance(f"instance is missing role {name!r}") from None

    def scalar(self, name: str) -> int:
        vals = self.role(name)
        if len(vals) != 1:
            raise MalformedInstance(f"role {name!r} takes exactly one value")
        return vals[0]

    def to_text(self, edgelist: bool = False) -> str:
        head = edgelist_encode(self.g) if edgelist else graph6_encode(self.g).decode() + "\n"
        body = [f"{k}: {' '.join(map(str, v))}" for k, v in self.roles.items()]
        body += [f"system: {' '.join(map(str, c))}" for c in self.systems]
        return head + "\n".join(body) + "\n"


def parse_instance(text: str) -> InstanceFile:
    graph_lines, role_lines = [], []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        (role_lines if ":" in stripped else graph_lines).append(stripped)
    graphs = list(iter_graphs(graph_lines))
    if len(graphs) != 1:
        raise MalformedInstance(f"expected one graph, found {len(graphs)}")
    inst = InstanceFile(graphs[0])
    for line in role_lines:
        name, _, rest = line.partition(":")
        name = name.strip().lower()
        if name not in ROLES:
            raise MalformedInstance(f"unknown role {name!r}")
        try:
            vals = tuple(int(x) for x in rest.split())
        except ValueError:
            raise MalformedInstance(f"non-integer value in role {name!r}") from None
        if name == "system":
            inst.systems.append(vals)
        else:
            inst.roles[name] = vals
    return inst


def to_lemma_instance(name: str, f: InstanceFile):
    """The argument object :func:`cyclepack.lemmas.run_instance` expects for lemma ``name``."""
    g = f.g
    if name == "forest-triangle":
        return ForestTriangleInstance(g, vertex_set(f.role("forest")), Cycle.of(f.role("triangle")), f.role("leaves"))
    if name == "tree-cycle":
        return TreeCycleInstance(g, vertex_set(f.role("tree")), Cycle.of(f.role("cycle")), f.role("leaves"))
    if name == "deg-seq-shorten":
        return SimpleNamespace(g=g, c1=f.role("c1"), c2=f.role("c2"))
    if name == "triangle-path":
        return SimpleNamespace(g=g, c=f.role("triangle"), p=f.role("path"), z=f.scalar("z"))
    if name == "short-cycle-two-paths":
        return SimpleNamespace(g=g, c=f.role("cycle"), p1=f.role("p1"), p2=f.role("p2"))
    if name == "short-cycle-connected":
        return SimpleNamespace(
            g=g, c=f.role("cycle"), p1=f.role("p1"), p2=f.role("p2"),
            u=f.scalar("u"), v=f.scalar("v"), w=f.scalar("w"),
        )
    if name == "forest-augment":
        return SimpleNamespace(
            g=g, system=CycleSystem(tuple(Cycle.of(c) for c in f.systems)), k=f.scalar("k"), t=f.scalar("t")
        )
    raise MalformedInstance(f"no instance layout for lemma {name!r}")
