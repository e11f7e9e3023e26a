"""The nine acceptance criteria, each at its stated tolerance and time limit.

Every test prints one ``criterion N: PASS|FAIL`` line to the terminal.
"""

import math
import random
import time

import pytest

from cyclepack.graph import build_graph, components, induced_subgraph, omega, sigma_t
from cyclepack.graph6 import graph6_decode, graph6_encode
from cyclepack.harness import (
    FamilySpec,
    TheoremSpec,
    check_theorem,
    erdos_posa_check,
    gen_sharpness,
    gnp_graphs,
)
from cyclepack.lemmas import (
    LemmaViolation,
    PreconditionUnmet,
    leaf_count,
    leafset_degree_upper_bound,
    run_instance,
    tree_leaf_lower_bound,
    verify_outcome,
)
from cyclepack.lemmas.generators import GENERATORS, instances, random_forest, random_tree
from cyclepack.packing import check_minimality_bounds, find_disjoint_cycles, minimize_system

from .test_graph6 import FIXTURES


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, detail: str, seconds: float, limit: float) -> None:
        ok = ok and seconds < limit
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({detail}; {seconds:.1f}s of {limit:.0f}s)")
        assert ok, detail

    return emit


def test_criterion_1_sharpness_family(verdict):
    start = time.perf_counter()
    bad = []
    cases = 0
    for k in (2, 3, 4):
        for m in (6, 8, 10):
            g = gen_sharpness(k, m)
            for t in (5, 6):
                if t > m:
                    continue
                cases += 1
                if sigma_t(g, t) != 2 * k * t - t:
                    bad.append(f"sigma_{t}(k={k}, m={m}) = {sigma_t(g, t)}")
            if find_disjoint_cycles(g, k) is not None:
                bad.append(f"k={k}, m={m}: found {k} disjoint cycles")
            short = find_disjoint_cycles(g, k - 1)
            if short is None or len(short) != k - 1 or not short.is_valid_in(g):
                bad.append(f"k={k}, m={m}: no valid {k - 1}-system")
    verdict(1, not bad, f"{cases} sigma checks, 9 packing checks, issues {bad}", time.perf_counter() - start, 30)


@pytest.mark.parametrize("n, limit", [(6, 60), (7, 900)])
def test_criterion_2_two_cycle_degree_sum_exhaustive(verdict, n, limit):
    start = time.perf_counter()
    r = check_theorem(TheoremSpec("EW", 2), FamilySpec.exhaustive(n))
    ok = r.checked == 2 ** (n * (n - 1) // 2) and not r.counterexamples
    detail = f"n={n}: {r.checked} graphs, {r.hypothesis_satisfied} with sigma_2 >= 7, {len(r.counterexamples)} counterexamples"
    verdict(2, ok, detail, time.perf_counter() - start, limit)


def test_criterion_3_sigma3_randomized(verdict):
    start = time.perf_counter()
    r = check_theorem(TheoremSpec("FMTY", 2), FamilySpec.gnp(8, seed=2024, samples=20000))
    ok = r.checked == 10**5 and not r.counterexamples and r.hypothesis_satisfied > 0
    detail = f"{r.checked} graphs on 8 vertices, {r.hypothesis_satisfied} with sigma_3 >= 10, {len(r.counterexamples)} counterexamples"
    verdict(3, ok, detail, time.perf_counter() - start, 600)


def test_criterion_4_sigma5_randomized_order_18(verdict):
    start = time.perf_counter()
    r = check_theorem(TheoremSpec("MY", 2, 5), FamilySpec.gnp(18, seed=2024, samples=1000), budget_ms=5000)
    ok = r.checked == 5000 and not r.counterexamples and not r.inconclusive and r.hypothesis_satisfied > 0
    detail = (
        f"{r.checked} graphs on 18 vertices, {r.hypothesis_satisfied} with sigma_5 >= 16, "
        f"{len(r.counterexamples)} counterexamples, {len(r.inconclusive)} budget exhaustions"
    )
    verdict(4, ok, detail, time.perf_counter() - start, 1800)


def test_criterion_5_lemma_engine(verdict):
    start = time.perf_counter()
    problems = []
    for name in sorted(GENERATORS):
        for i, inst in enumerate(instances(name, 200, seed=5)):
            try:
                out = run_instance(name, inst)
            except LemmaViolation as exc:
                problems.append(f"{name}#{i}: violation {exc}")
                continue
            if isinstance(out, PreconditionUnmet) or not verify_outcome(inst.g, out):
                problems.append(f"{name}#{i}: {out}")
    verdict(5, not problems, f"6 x 200 instances, problems {problems[:3]}", time.perf_counter() - start, 300)


def test_criterion_6_leaf_bounds(verdict):
    start = time.perf_counter()
    rng = random.Random(6)
    violations, tight_leaf, tight_degree = 0, 0, 0
    for i in range(10**4):
        n = rng.randint(1, 14)
        f = random_tree(rng, n) if i % 2 == 0 else random_forest(rng, n)
        for comp in components(f):
            tree = induced_subgraph(f, comp).graph
            large = [v for v in range(tree.n) if tree.degree(v) >= 3]
            chosen = [v for v in large if rng.random() < 0.7]
            bound = tree_leaf_lower_bound(tree, chosen)
            violations += leaf_count(tree) < bound
            tight_leaf += bool(chosen) and leaf_count(tree) == bound
        leaves = {v for v in range(f.n) if f.degree(v) <= 1}
        s = sorted(leaves | {v for v in range(f.n) if rng.random() < 0.5})
        d = sum(f.degree(v) for v in s)
        ub = leafset_degree_upper_bound(f, s)
        violations += d > ub
        tight_degree += d == ub
        assert ub == 2 * len(s) - 2 * omega(f)
    ok = violations == 0 and tight_leaf > 0 and tight_degree > 0
    detail = f"10000 forests, {violations} violations, tight leaf bound {tight_leaf}x, tight degree bound {tight_degree}x"
    verdict(6, ok, detail, time.perf_counter() - start, 60)


def test_criterion_7_minimal_system_bounds(verdict):
    start = time.perf_counter()
    rng = random.Random(7)
    graphs = violations = checked = 0
    seed = 0
    while graphs < 500:
        n = rng.randint(6, 11)
        p = rng.choice((0.25, 0.35, 0.5, 0.7))
        seed += 1
        g = next(gnp_graphs(n, p, 1, seed))
        found = find_disjoint_cycles(g, 2)
        if found is None:
            continue
        graphs += 1
        report = check_minimality_bounds(g, minimize_system(g, found))
        violations += len(report.violations)
        checked += report.checked
    detail = f"{graphs} graphs, {checked} (x, C_i) pairs, {violations} violations"
    verdict(7, violations == 0, detail, time.perf_counter() - start, 300)


@pytest.mark.parametrize("n", [6, 7])
def test_criterion_8_edge_bound_exhaustive(verdict, n):
    start = time.perf_counter()
    r = erdos_posa_check(n)
    expected = math.comb(n, 3)  # one labeled copy of the exceptional graph per choice of its triangle
    ok = not r.counterexamples and r.exceptional == expected
    detail = f"n={n}: {r.checked} graphs with e >= {3 * n - 6}, {r.exceptional} exceptional (expected {expected}), {len(r.counterexamples)} violations"
    verdict(8, ok, detail, time.perf_counter() - start, 1200)


def test_criterion_9_graph6_round_trip(verdict):
    start = time.perf_counter()
    rng = random.Random(9)
    bad = 0
    for _ in range(10**4):
        n = rng.randint(0, 30)
        p = rng.random()
        g = build_graph(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])
        bad += graph6_decode(graph6_encode(g)) != g
    fixtures_ok = sum(graph6_encode(g) == data and graph6_decode(data) == g for g, data in FIXTURES)
    ok = bad == 0 and fixtures_ok == len(FIXTURES) >= 5
    detail = f"10000 random graphs, {bad} mismatches, {fixtures_ok}/{len(FIXTURES)} hand-packed fixtures exact"
    verdict(9, ok, detail, time.perf_counter() - start, 10)
