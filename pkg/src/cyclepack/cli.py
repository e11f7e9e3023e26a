"""Command-line entry point.

    cyclepack <verb> [--t T] [--k K] [--m M] [--n N] [--p P] [--seed S]
              [--samples X] [--jobs N] [--budget MS] [--out PATH] [INPUT]

Graphs are read from INPUT or standard input as graph6 lines or edge-list
blocks. Exit status: 0 success, 1 counterexample or lemma violation found,
2 usage error, 3 I/O or malformed input.
"""

from __future__ import annotations

import argparse
import io
import sys
from typing import Iterator

from cyclepack import harness, lemmas
from cyclepack.graph import INFINITE, Graph, GraphError, forest_decompose, induced_subgraph, sigma_t
from cyclepack.graph6 import MalformedEdgeList, MalformedGraph6, edgelist_encode, graph6_encode, iter_graphs
from cyclepack.lemmas.instance_io import MalformedInstance, parse_instance, to_lemma_instance
from cyclepack.packing import (
    BudgetExceeded,
    CycleSystem,
    InvalidCycle,
    find_disjoint_cycles,
    max_disjoint_cycles,
    minimize_system,
)

VERBS = ("sigma", "pack", "maxpack", "minimize", "lemma", "check-theorem", "gen-extremal", "scan", "erdos-posa")
LEMMA_NAMES = (
    "forest-triangle",
    "tree-cycle",
    "forest-augment",
    "leaf-bounds",
    "deg-seq-shorten",
    "triangle-path",
    "short-cycle-two-paths",
    "short-cycle-connected",
)

EXIT_OK, EXIT_FOUND, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class InputError(Exception):
    pass


def _p_values(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability list {text!r}") from None
    if not vals or any(not 0 <= v <= 1 for v in vals):
        raise argparse.ArgumentTypeError("probabilities must lie in [0, 1]")
    return vals


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclepack",
        description="Disjoint cycle packing, degree-sum conditions and verification sweeps.",
    )
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("input", nargs="?", metavar="INPUT", help="graph or instance file (default: stdin)")
    ap.add_argument("--t", type=int, help="independent set size for sigma_t")
    ap.add_argument("--k", type=int, help="number of disjoint cycles")
    ap.add_argument("--m", type=int, help="number of independent vertices in the sharpness family")
    ap.add_argument("--n", type=int, help="order of generated graphs")
    ap.add_argument("--p", type=_p_values, help="edge probability, or a comma-separated list")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=_nonneg, help="random graphs per p value")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    ap.add_argument("--budget", type=float, help="per-instance solver budget in milliseconds")
    ap.add_argument("--out", help="write output here instead of stdout")
    ap.add_argument("--theorem", choices=harness.TheoremSpec.IDS, help="theorem for check-theorem")
    ap.add_argument("--family", choices=harness.FamilySpec.KINDS, help="graph family for sweeps and gen-extremal")
    ap.add_argument("--name", choices=LEMMA_NAMES, help="lemma for the lemma verb")
    ap.add_argument("--system", help="starting cycle system file for minimize")
    ap.add_argument("--heuristic", action="store_true", help="minimize by local search instead of exactly")
    ap.add_argument("--edgelist", action="store_true", help="emit edge lists instead of graph6")
    return ap


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _graphs(path: str | None) -> Iterator[Graph]:
    try:
        yield from iter_graphs(_read_text(path).splitlines())
    except (MalformedGraph6, MalformedEdgeList, GraphError) as exc:
        raise InputError(f"malformed graph input: {exc}") from exc


def _fmt(value) -> str:
    return "inf" if value == INFINITE else str(value)


def _emit_graph(g: Graph, out, edgelist: bool) -> None:
    out.write(edgelist_encode(g) if edgelist else graph6_encode(g).decode() + "\n")


class UsageError(Exception):
    pass


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.verb} needs {' '.join(missing)}")


# ------------------------------------------------------------------ verbs


def cmd_sigma(args, out) -> int:
    t = args.t if args.t is not None else 2
    if t < 1:
        raise UsageError("--t must be positive")
    for g in _graphs(args.input):
        out.write(_fmt(sigma_t(g, t)) + "\n")
    return EXIT_OK


def _systems(args, out, fn) -> int:
    first = True
    for g in _graphs(args.input):
        if not first:
            out.write("\n")
        first = False
        try:
            sys_ = fn(g)
        except BudgetExceeded:
            out.write("inconclusive\n")
            continue
        out.write("none\n" if sys_ is None else sys_.to_text())
    return EXIT_OK


def cmd_pack(args, out) -> int:
    _need(args, "k")
    return _systems(args, out, lambda g: find_disjoint_cycles(g, args.k, args.budget))


def cmd_maxpack(args, out) -> int:
    return _systems(args, out, lambda g: max_disjoint_cycles(g, args.budget)[1])


def cmd_minimize(args, out) -> int:
    if args.system is not None:
        graphs = list(_graphs(args.input))
        if len(graphs) != 1:
            raise InputError("--system needs exactly one input graph")
        try:
            start = CycleSystem.from_text(_read_text(args.system))
        except (ValueError, GraphError) as exc:
            raise InputError(f"malformed cycle system: {exc}") from exc
        try:
            out.write(minimize_system(graphs[0], start, heuristic=args.heuristic, budget_ms=args.budget).to_text())
        except InvalidCycle as exc:
            raise InputError(str(exc)) from exc
        return EXIT_OK
    _need(args, "k")

    def best(g):
        found = find_disjoint_cycles(g, args.k, args.budget)
        return None if found is None else minimize_system(g, found, heuristic=args.heuristic, budget_ms=args.budget)

    return _systems(args, out, best)


def _leaf_bounds(g: Graph, out) -> int:
    try:
        fd = forest_decompose(g)
    except GraphError as exc:
        raise InputError(str(exc)) from exc
    bad = 0
    for comp in fd.components:
        sub = induced_subgraph(g, comp).graph
        large = [v for v in range(sub.n) if sub.degree(v) >= 3]
        leaves = lemmas.leaf_count(sub)
        bound = lemmas.tree_leaf_lower_bound(sub, large)
        ok = leaves >= bound
        bad += not ok
        out.write(f"tree {' '.join(map(str, comp))}: leaves={leaves} lower_bound={bound} {'ok' if ok else 'VIOLATED'}\n")
    s = fd.leaves
    d = sum(g.degree(v) for v in s)
    bound = lemmas.leafset_degree_upper_bound(g, s)
    ok = d <= bound
    bad += not ok
    out.write(f"leaf set degree: d_F(S)={d} upper_bound={bound} {'ok' if ok else 'VIOLATED'}\n")
    return EXIT_FOUND if bad else EXIT_OK


def _write_outcome(outcome, out) -> None:
    out.write(outcome.tag + "\n")
    if isinstance(outcome, lemmas.PreconditionUnmet):
        out.write(f"reason: {outcome.reason}\n")
    elif isinstance(outcome, lemmas.TwoDisjointCycles):
        out.write(f"c1: {' '.join(map(str, outcome.c1.vertices))}\n")
        out.write(f"c2: {' '.join(map(str, outcome.c2.vertices))}\n")
    elif isinstance(outcome, lemmas.ShorterCycle):
        out.write(f"cycle: {' '.join(map(str, outcome.cycle.vertices))}\n")
    elif isinstance(outcome, lemmas.ComponentReducingTriangle):
        out.write(f"triangle: {' '.join(map(str, outcome.triangle.vertices))}\n")
    elif isinstance(outcome, lemmas.AugmentedSystem):
        out.write(outcome.system.to_text())


def cmd_lemma(args, out) -> int:
    _need(args, "name")
    text = _read_text(args.input)
    if args.name == "leaf-bounds":
        graphs = list(_graphs_from_text(text))
        if len(graphs) != 1:
            raise InputError("leaf-bounds takes exactly one forest")
        return _leaf_bounds(graphs[0], out)
    try:
        f = parse_instance(text)
        inst = to_lemma_instance(args.name, f)
    except (MalformedInstance, MalformedGraph6, MalformedEdgeList, GraphError) as exc:
        raise InputError(f"malformed instance: {exc}") from exc
    try:
        if args.name == "forest-augment":
            outcome = lemmas.lemma_forest_augment(inst.g, inst.system, inst.k, inst.t)
        else:
            outcome = lemmas.run_instance(args.name, inst)
    except lemmas.LemmaViolation as exc:
        out.write(f"LemmaViolation\nreason: {exc}\n")
        return EXIT_FOUND
    except GraphError as exc:
        raise InputError(f"invalid instance: {exc}") from exc
    _write_outcome(outcome, out)
    if not isinstance(outcome, lemmas.PreconditionUnmet) and not lemmas.verify_outcome(f.g, outcome):
        out.write("verification: FAILED\n")
        return EXIT_FOUND
    return EXIT_OK


def _graphs_from_text(text: str) -> Iterator[Graph]:
    try:
        yield from iter_graphs(text.splitlines())
    except (MalformedGraph6, MalformedEdgeList, GraphError) as exc:
        raise InputError(f"malformed graph input: {exc}") from exc


def _family(args) -> harness.FamilySpec:
    kind = args.family
    if kind == "sharpness":
        _need(args, "k", "m")
        return harness.FamilySpec.sharpness(args.k, args.m)
    if kind == "erdos-posa":
        _need(args, "n")
        return harness.FamilySpec.erdos_posa(args.n)
    if kind == "gnp":
        _need(args, "n")
        samples = args.samples if args.samples is not None else 1000
        return harness.FamilySpec.gnp(args.n, args.p or harness.DEFAULT_P, args.seed, samples)
    _need(args, "n")
    return harness.FamilySpec.exhaustive(args.n)


def _report(report: harness.VerificationReport, out) -> int:
    out.write(report.summary(timing=False) + "\n")
    for line in report.lines():
        out.write(line + "\n")
    print(f"wall time: {report.wall_time:.2f}s", file=sys.stderr)
    return EXIT_FOUND if report.counterexamples else EXIT_OK


def cmd_check_theorem(args, out) -> int:
    _need(args, "theorem", "k")
    spec = harness.TheoremSpec(args.theorem, args.k, args.t)
    if args.family is None:
        report = harness.check_graphs(spec, _graphs(args.input), args.budget)
    else:
        report = harness.check_theorem(spec, _family(args), args.budget, args.jobs)
    harness.reverify_report(spec, report)
    return _report(report, out)


def cmd_gen_extremal(args, out) -> int:
    kind = args.family or "sharpness"
    if kind == "sharpness":
        _need(args, "k", "m")
        graphs = [harness.gen_sharpness(args.k, args.m)]
    elif kind == "erdos-posa":
        _need(args, "n")
        graphs = [harness.gen_erdos_posa_exception(args.n)]
    elif kind == "gnp":
        fam = _family(args)
        fam.validate()
        graphs = (g for i, p in enumerate(fam.p) for g in harness.gnp_graphs(fam.n, p, fam.samples, fam.seed, i))
    else:
        _need(args, "n")
        graphs = harness.enumerate_labeled_graphs(args.n)
    for g in graphs:
        _emit_graph(g, out, args.edgelist)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    _need(args, "k", "t")
    if args.input is not None or args.n is None:
        graphs = _graphs(args.input)
    else:
        graphs = harness.scan_family(
            args.k, args.t, args.n, args.p or harness.DEFAULT_P, args.samples if args.samples is not None else 50, args.seed
        )
    out.write(harness.format_scan(harness.threshold_scan(args.k, args.t, graphs, args.budget)) + "\n")
    return EXIT_OK


def cmd_erdos_posa(args, out) -> int:
    _need(args, "n")
    return _report(harness.erdos_posa_check(args.n, jobs=args.jobs), out)


COMMANDS = {
    "sigma": cmd_sigma,
    "pack": cmd_pack,
    "maxpack": cmd_maxpack,
    "minimize": cmd_minimize,
    "lemma": cmd_lemma,
    "check-theorem": cmd_check_theorem,
    "gen-extremal": cmd_gen_extremal,
    "scan": cmd_scan,
    "erdos-posa": cmd_erdos_posa,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_intermixed_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("cyclepack: error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    buf = io.StringIO()
    try:
        code = COMMANDS[args.verb](args, buf)
    except (UsageError, harness.BadParameters, harness.CapExceeded) as exc:
        parser.print_usage(sys.stderr)
        print(f"cyclepack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"cyclepack: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.out is None:
            sys.stdout.write(buf.getvalue())
            sys.stdout.flush()
        else:
            with open(args.out, "w", encoding="ascii") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        print(f"cyclepack: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
