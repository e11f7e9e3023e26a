"""Theorem-level verification sweeps over extremal families, random graphs and
exhaustive labeled enumeration.

Sweeps over graphs small enough for 63-bit edge masks run through the batch
kernels; every counterexample the kernel flags is re-checked with the exact
witness solver before it is reported. Larger graphs go through the solver
one at a time under a per-instance time budget.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from cyclepack import kernels
from cyclepack.graph import INFINITE, Graph, build_graph, complete_graph, join, sigma_t
from cyclepack.graph6 import graph6_decode, graph6_encode
from cyclepack.packing import BudgetExceeded, find_disjoint_cycles

DEFAULT_P = (0.2, 0.35, 0.5, 0.65, 0.8)
DEFAULT_CAP = 7
CHUNK = 1 << 14


class BadParameters(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class ReverificationFailed(RuntimeError):
    """A flagged counterexample did not survive the independent re-check."""


def exhaustive_cap() -> int:
    return int(os.environ.get("CYCLEPACK_CAP", DEFAULT_CAP))


# ------------------------------------------------------------------ families


def gen_sharpness(k: int, m: int) -> Graph:
    """``K_{2k-1} + m K_1``: sigma_t = t(2k - 1) for t <= m, yet only k - 1 disjoint cycles."""
    if k < 2 or m < 1:
        raise BadParameters(f"need k >= 2 and m >= 1, got k={k}, m={m}")
    return join(complete_graph(2 * k - 1), build_graph(m, []))


def gen_erdos_posa_exception(n: int) -> Graph:
    """``K_3 + (n - 3) K_1``."""
    if n < 3:
        raise BadParameters("need n >= 3")
    return join(complete_graph(3), build_graph(n - 3, []))


def enumerate_labeled_graphs(n: int, cap: int | None = None) -> Iterator[Graph]:
    """All 2^C(n,2) labeled graphs on n vertices, in edge-mask counter order."""
    cap = exhaustive_cap() if cap is None else cap
    if n < 0:
        raise BadParameters("n must be nonnegative")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap} (set CYCLEPACK_CAP)")
    for mask in range(1 << (n * (n - 1) // 2)):
        yield kernels.graph_from_edge_mask(n, mask)


def gnp_bits(n: int, p: float, seed: int, p_index: int, chunk: int, size: int) -> np.ndarray:
    """Edge indicator rows for one chunk of G(n, p) samples.

    Chunk ``c`` of the ``i``-th p value draws from PCG64 seeded with
    ``[seed, i, c]``; row ``r`` column ``e`` is ``uniform < p`` for the pair
    with edge-mask bit ``e``. Fixed chunking keeps samples independent of
    the worker count.
    """
    rng = np.random.default_rng([seed, p_index, chunk])
    return rng.random((size, n * (n - 1) // 2)) < p


def _bits_to_masks(bits: np.ndarray) -> np.ndarray:
    weights = np.left_shift(np.int64(1), np.arange(bits.shape[1], dtype=np.int64))
    return (bits.astype(np.int64) * weights).sum(axis=1)


def _bits_to_graph(n: int, row: np.ndarray, pairs: np.ndarray) -> Graph:
    return build_graph(n, [tuple(map(int, pairs[e])) for e in np.flatnonzero(row)])


def gnp_graphs(n: int, p: float, samples: int, seed: int, p_index: int = 0) -> Iterator[Graph]:
    pairs = kernels.pair_index(n)
    for c, start in enumerate(range(0, samples, CHUNK)):
        for row in gnp_bits(n, p, seed, p_index, c, min(CHUNK, samples - start)):
            yield _bits_to_graph(n, row, pairs)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    k: int | None = None
    m: int | None = None
    n: int | None = None
    p: tuple[float, ...] = DEFAULT_P
    seed: int = 0
    samples: int = 0

    KINDS = ("sharpness", "erdos-posa", "gnp", "exhaustive")

    @classmethod
    def sharpness(cls, k: int, m: int) -> FamilySpec:
        return cls("sharpness", k=k, m=m)

    @classmethod
    def erdos_posa(cls, n: int) -> FamilySpec:
        return cls("erdos-posa", n=n)

    @classmethod
    def gnp(cls, n: int, p: float | Sequence[float] = DEFAULT_P, seed: int = 0, samples: int = 1000) -> FamilySpec:
        ps = (float(p),) if isinstance(p, (int, float)) else tuple(float(x) for x in p)
        return cls("gnp", n=n, p=ps, seed=seed, samples=samples)

    @classmethod
    def exhaustive(cls, n: int) -> FamilySpec:
        return cls("exhaustive", n=n)

    def validate(self) -> None:
        if self.kind not in self.KINDS:
            raise BadParameters(f"unknown family {self.kind!r}")
        if self.kind == "sharpness" and (self.k is None or self.m is None or self.k < 2 or self.m < 1):
            raise BadParameters("sharpness family needs k >= 2 and m >= 1")
        if self.kind in ("erdos-posa", "gnp", "exhaustive") and (self.n is None or self.n < 0):
            raise BadParameters(f"{self.kind} family needs n >= 0")
        if self.kind == "erdos-posa" and self.n < 3:
            raise BadParameters("K_3 + (n-3)K_1 needs n >= 3")
        if self.kind == "gnp" and (self.samples < 0 or not self.p or any(not 0 <= x <= 1 for x in self.p)):
            raise BadParameters("gnp family needs samples >= 0 and p values in [0, 1]")
        if self.kind == "exhaustive" and self.n > exhaustive_cap():
            raise CapExceeded(f"n={self.n} exceeds the enumeration cap {exhaustive_cap()}")

    def describe(self) -> str:
        if self.kind == "sharpness":
            return f"K_{2 * self.k - 1} + {self.m}K_1"
        if self.kind == "erdos-posa":
            return f"K_3 + {self.n - 3}K_1"
        if self.kind == "gnp":
            return f"G({self.n}, p in {list(self.p)}) x {self.samples} per p, seed {self.seed}"
        return f"all labeled graphs on {self.n} vertices"


# ------------------------------------------------------------------ theorems


@dataclass(frozen=True)
class TheoremSpec:
    """Hypothesis (order bound and degree condition) of one packing theorem; conclusion: k disjoint cycles."""

    id: str
    k: int
    t: int | None = None

    IDS = ("CH", "EW", "FMTY", "MY")

    def validate(self) -> None:
        if self.id not in self.IDS:
            raise BadParameters(f"unknown theorem {self.id!r}")
        if self.k < 1:
            raise BadParameters("k must be positive")
        if self.id == "FMTY" and self.k < 2:
            raise BadParameters("FMTY needs k >= 2")
        if self.id == "MY" and (self.k < 2 or self.t is None or self.t < 5):
            raise BadParameters("MY needs k >= 2 and t >= 5")

    @property
    def degree_t(self) -> int:
        """Size of the independent sets in the degree condition (1 means minimum degree)."""
        return {"CH": 1, "EW": 2, "FMTY": 3, "MY": self.t}[self.id]

    @property
    def order_bound(self) -> int:
        k = self.k
        return {"CH": 3 * k, "EW": 3 * k, "FMTY": 3 * k + 2, "MY": (2 * (self.t or 0) - 1) * k}[self.id]

    @property
    def degree_bound(self) -> int:
        k, t = self.k, self.t or 0
        return {"CH": 2 * k, "EW": 4 * k - 1, "FMTY": 6 * k - 2, "MY": 2 * k * t - t + 1}[self.id]

    def degree_value(self, g: Graph):
        if self.id == "CH":
            return g.min_degree() if g.n else INFINITE
        return sigma_t(g, self.degree_t)

    def hypothesis(self, g: Graph) -> tuple[bool, dict]:
        value = self.degree_value(g)
        label = "min_degree" if self.id == "CH" else f"sigma_{self.degree_t}"
        holds = g.n >= self.order_bound and value >= self.degree_bound
        return holds, {"n": g.n, label: value}

    def describe(self) -> str:
        cond = "min degree" if self.id == "CH" else f"sigma_{self.degree_t}"
        return f"{self.id}: |G| >= {self.order_bound} and {cond} >= {self.degree_bound} => {self.k} disjoint cycles"


@dataclass
class Counterexample:
    graph6: str
    hypothesis: dict
    solver: str

    def line(self) -> str:
        hyp = ",".join(f"{k}={v}" for k, v in self.hypothesis.items())
        return f"counterexample\t{self.graph6}\t{hyp}\t{self.solver}"


@dataclass
class VerificationReport:
    theorem: str
    family: str
    checked: int = 0
    hypothesis_satisfied: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    exceptional: int = 0
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            self.theorem,
            self.family,
            self.checked + other.checked,
            self.hypothesis_satisfied + other.hypothesis_satisfied,
            self.counterexamples + other.counterexamples,
            self.inconclusive + other.inconclusive,
            self.exceptional + other.exceptional,
            self.wall_time + other.wall_time,
            self.notes + [n for n in other.notes if n not in self.notes],
        )

    def summary(self, timing: bool = True) -> str:
        lines = [
            f"theorem: {self.theorem}",
            f"family: {self.family}",
            f"graphs checked: {self.checked}",
            f"hypothesis satisfied: {self.hypothesis_satisfied}",
            f"counterexamples: {len(self.counterexamples)}",
            f"inconclusive (budget): {len(self.inconclusive)}",
        ]
        if self.exceptional:
            lines.append(f"exceptional graphs: {self.exceptional}")
        if timing:
            lines.append(f"wall time: {self.wall_time:.2f}s")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.counterexamples]
        out += [f"inconclusive\t{g6}" for g6 in self.inconclusive]
        return out


def _g6(g: Graph) -> str:
    return graph6_encode(g).decode("ascii")


def _check_one(spec: TheoremSpec, g: Graph, report: VerificationReport, budget_ms: float | None) -> None:
    report.checked += 1
    holds, values = spec.hypothesis(g)
    if not holds:
        return
    report.hypothesis_satisfied += 1
    try:
        found = find_disjoint_cycles(g, spec.k, budget_ms)
    except BudgetExceeded:
        report.inconclusive.append(_g6(g))
        return
    if found is None:
        report.counterexamples.append(Counterexample(_g6(g), values, "none"))


def _reverify(spec: TheoremSpec, g: Graph) -> Counterexample:
    holds, values = spec.hypothesis(g)
    if not holds or find_disjoint_cycles(g, spec.k) is not None:
        raise ReverificationFailed(f"kernel flagged {_g6(g)} but the exact re-check disagrees")
    return Counterexample(_g6(g), values, "none")


def _kernel_hypothesis(spec: TheoremSpec, n: int, stats: np.ndarray) -> np.ndarray:
    if n < spec.order_bound:
        return np.zeros(len(stats), dtype=bool)
    col = {"CH": 1, "EW": 2, "FMTY": 3, "MY": 4}[spec.id]
    vals = stats[:, col]
    holds = vals >= spec.degree_bound
    if spec.id != "CH":
        holds |= vals == -1
    return holds


def _check_masks(spec: TheoremSpec, n: int, masks: np.ndarray, report: VerificationReport) -> None:
    stats = kernels.batch_stats(n, masks, spec.degree_t if spec.id == "MY" else 2, spec.k)
    holds = _kernel_hypothesis(spec, n, stats)
    report.checked += len(masks)
    report.hypothesis_satisfied += int(holds.sum())
    for mask in masks[holds & (stats[:, 5] < spec.k)]:
        report.counterexamples.append(_reverify(spec, kernels.graph_from_edge_mask(n, int(mask))))


def _family_chunks(family: FamilySpec) -> list[tuple]:
    if family.kind == "exhaustive":
        total = 1 << (family.n * (family.n - 1) // 2)
        return [("masks", lo, min(lo + CHUNK * 8, total)) for lo in range(0, total, CHUNK * 8)]
    if family.kind == "gnp":
        return [
            ("gnp", i, c, min(CHUNK, family.samples - start))
            for i in range(len(family.p))
            for c, start in enumerate(range(0, family.samples, CHUNK))
        ]
    return [("single",)]


def _run_chunk(spec: TheoremSpec, family: FamilySpec, chunk: tuple, budget_ms: float | None) -> VerificationReport:
    report = VerificationReport(spec.describe(), family.describe())
    kind = chunk[0]
    if kind == "masks":
        _check_masks(spec, family.n, np.arange(chunk[1], chunk[2], dtype=np.int64), report)
    elif kind == "gnp":
        _, i, c, size = chunk
        bits = gnp_bits(family.n, family.p[i], family.seed, i, c, size)
        if family.n <= kernels.MAX_BATCH_N:
            _check_masks(spec, family.n, _bits_to_masks(bits), report)
        else:
            pairs = kernels.pair_index(family.n)
            for row in bits:
                _check_one(spec, _bits_to_graph(family.n, row, pairs), report, budget_ms)
    else:
        g = gen_sharpness(family.k, family.m) if family.kind == "sharpness" else gen_erdos_posa_exception(family.n)
        _check_one(spec, g, report, budget_ms)
    return report


def _run_chunks(fn, args_list: list[tuple], jobs: int) -> list:
    if jobs <= 1 or len(args_list) <= 1:
        return [fn(*a) for a in args_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, *zip(*args_list)))


def check_theorem(
    spec: TheoremSpec, family: FamilySpec, budget_ms: float | None = None, jobs: int = 1
) -> VerificationReport:
    """Evaluate the hypothesis exactly on every graph of the family and look for
    k disjoint cycles wherever it holds."""
    spec.validate()
    family.validate()
    start = time.perf_counter()
    parts = _run_chunks(_run_chunk, [(spec, family, ch, budget_ms) for ch in _family_chunks(family)], jobs)
    report = VerificationReport(spec.describe(), family.describe())
    for part in parts:
        report = report.merge(part)
    report.wall_time = time.perf_counter() - start
    if spec.id == "MY" and family.kind != "sharpness":
        report.notes.append(
            "exhaustive verification at the theorem's order bound is out of reach; this is a sampled or small-order check"
        )
    return report


def check_graphs(
    spec: TheoremSpec, graphs: Iterable[Graph], budget_ms: float | None = None, family: str = "input stream"
) -> VerificationReport:
    """check_theorem over an arbitrary graph stream (for example an external enumerator's output)."""
    spec.validate()
    start = time.perf_counter()
    report = VerificationReport(spec.describe(), family)
    for g in graphs:
        _check_one(spec, g, report, budget_ms)
    report.wall_time = time.perf_counter() - start
    return report


def reverify_report(spec: TheoremSpec, report: VerificationReport) -> None:
    """Raise ReverificationFailed unless every recorded counterexample satisfies the
    hypothesis and has no k disjoint cycles, both recomputed from scratch."""
    for cx in report.counterexamples:
        _reverify(spec, graph6_decode(cx.graph6))


# ------------------------------------------------------------------ scans


@dataclass
class ScanRow:
    sigma: int | float
    graphs: int = 0
    packed: int = 0
    meets_order: int = 0
    packed_meeting_order: int = 0
    inconclusive: int = 0

    @property
    def fraction(self) -> float:
        return self.packed / self.graphs if self.graphs else 0.0


def threshold_scan(
    k: int, t: int, graphs: Iterable[Graph], budget_ms: float | None = None
) -> list[ScanRow]:
    """Bucket graphs by exact sigma_t and report how many hold k disjoint cycles.

    ``meets_order`` counts graphs with |G| >= (2t - 1)k; rows below the order
    bound are observations only.
    """
    if k < 1 or t < 1:
        raise BadParameters("k and t must be positive")
    rows: dict = {}
    order = (2 * t - 1) * k
    for g in graphs:
        s = sigma_t(g, t)
        row = rows.setdefault(s, ScanRow(s))
        row.graphs += 1
        big = g.n >= order
        row.meets_order += big
        try:
            ok = find_disjoint_cycles(g, k, budget_ms) is not None
        except BudgetExceeded:
            row.inconclusive += 1
            continue
        row.packed += ok
        row.packed_meeting_order += ok and big
    return [rows[s] for s in sorted(rows)]


def scan_family(
    k: int, t: int, n: int, p: Sequence[float] = DEFAULT_P, samples: int = 50, seed: int = 0, max_m: int | None = None
) -> Iterator[Graph]:
    """Default scan stream: the sharpness graphs K_{2k-1} + mK_1 for t <= m <= max_m, then G(n, p) samples."""
    for m in range(t, (max_m if max_m is not None else max(t, n - 2 * k + 1)) + 1):
        yield gen_sharpness(k, m)
    for i, pv in enumerate(p):
        yield from gnp_graphs(n, pv, samples, seed, i)


def format_scan(rows: Sequence[ScanRow]) -> str:
    out = ["sigma_t\tgraphs\tpacked\tfraction\tmeets_order\tpacked_meeting_order\tinconclusive"]
    for r in rows:
        s = "inf" if r.sigma == INFINITE else str(r.sigma)
        out.append(
            f"{s}\t{r.graphs}\t{r.packed}\t{r.fraction:.3f}\t{r.meets_order}\t{r.packed_meeting_order}\t{r.inconclusive}"
        )
    return "\n".join(out)


# ------------------------------------------------------------------ Erdos-Posa


def find_isomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """A vertex bijection g -> h preserving adjacency, by degree-filtered backtracking."""
    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees()) != sorted(h.degrees()):
        return None
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    mapping: dict[int, int] = {}
    used = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if w in used or h.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(v, u) == h.has_edge(w, mapping[u]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def erdos_posa_check(n: int, cap: int | None = None, jobs: int = 1) -> VerificationReport:
    """Every labeled graph on n vertices with e(G) >= 3n - 6 has two disjoint cycles
    or is a relabeling of K_3 + (n - 3)K_1."""
    if n < 6:
        raise BadParameters("the edge bound statement needs n >= 6")
    cap = exhaustive_cap() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap} (set CYCLEPACK_CAP)")
    start = time.perf_counter()
    total = 1 << (n * (n - 1) // 2)
    chunks = [(n, lo, min(lo + CHUNK * 8, total)) for lo in range(0, total, CHUNK * 8)]
    report = VerificationReport(f"EP: e(G) >= {3 * n - 6} => 2 disjoint cycles or K_3 + {n - 3}K_1", f"all labeled graphs on {n} vertices")
    for part in _run_chunks(_erdos_posa_chunk, chunks, jobs):
        report = report.merge(part)
    report.wall_time = time.perf_counter() - start
    return report


def _erdos_posa_chunk(n: int, lo: int, hi: int) -> VerificationReport:
    report = VerificationReport("", "")
    masks = np.arange(lo, hi, dtype=np.int64)
    stats = kernels.batch_stats(n, masks, 2, 2)
    dense = stats[:, 0] >= 3 * n - 6
    report.checked = int(dense.sum())
    report.hypothesis_satisfied = report.checked
    special = gen_erdos_posa_exception(n)
    for mask in masks[dense & (stats[:, 5] < 2)]:
        g = kernels.graph_from_edge_mask(n, int(mask))
        if find_disjoint_cycles(g, 2) is not None:
            raise ReverificationFailed(f"kernel flagged {_g6(g)} but the solver finds two disjoint cycles")
        if find_isomorphism(g, special) is not None:
            report.exceptional += 1
        else:
            report.counterexamples.append(Counterexample(_g6(g), {"n": n, "edges": g.edge_count}, "none"))
    return report
