"""Lemma outcomes and the independent outcome validator."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from cyclepack.graph import Graph, omega, to_mask
from cyclepack.packing import Cycle, CycleSystem


class LemmaViolation(AssertionError):
    """Preconditions hold but no witness exists: the lemma is false here, or the engine is wrong."""


@dataclass(frozen=True)
class OutcomeContext:
    """What an outcome must be checked against.

    ``region`` is the vertex set witnesses must live in. The other fields
    are only set for the lemmas that use them.
    """

    region: tuple[int, ...]
    reference_length: int | None = None
    forest: tuple[int, ...] | None = None
    max_total: int | None = None
    k: int | None = None


@dataclass(frozen=True)
class TwoDisjointCycles:
    c1: Cycle
    c2: Cycle
    context: OutcomeContext
    tag = "TwoDisjointCycles"


@dataclass(frozen=True)
class ShorterCycle:
    cycle: Cycle
    context: OutcomeContext
    tag = "ShorterCycle"


@dataclass(frozen=True)
class ComponentReducingTriangle:
    triangle: Cycle
    context: OutcomeContext
    tag = "ComponentReducingTriangle"


@dataclass(frozen=True)
class AugmentedSystem:
    """k disjoint cycles in the whole graph (the first alternative of the forest-augment lemma)."""

    system: CycleSystem
    context: OutcomeContext
    tag = "AugmentedSystem"


@dataclass(frozen=True)
class PreconditionUnmet:
    reason: str
    tag = "PreconditionUnmet"


LemmaOutcome = Union[TwoDisjointCycles, ShorterCycle, ComponentReducingTriangle, AugmentedSystem, PreconditionUnmet]


def _cycle_ok(g: Graph, c: Cycle, region: int) -> bool:
    return c.is_in(g) and c.mask & ~region == 0


def verify_outcome(g: Graph, outcome: LemmaOutcome, context: OutcomeContext | None = None) -> bool:
    """Re-check an outcome against the graph from scratch. Never raises on bad outcomes."""
    if isinstance(outcome, PreconditionUnmet):
        return False
    ctx = context if context is not None else outcome.context
    region = to_mask(ctx.region)
    try:
        if isinstance(outcome, TwoDisjointCycles):
            a, b = outcome.c1, outcome.c2
            if not (_cycle_ok(g, a, region) and _cycle_ok(g, b, region)):
                return False
            if a.mask & b.mask:
                return False
            return ctx.max_total is None or len(a) + len(b) < ctx.max_total
        if isinstance(outcome, ShorterCycle):
            c = outcome.cycle
            return ctx.reference_length is not None and _cycle_ok(g, c, region) and len(c) < ctx.reference_length
        if isinstance(outcome, ComponentReducingTriangle):
            c = outcome.triangle
            if ctx.forest is None or len(c) != 3 or not _cycle_ok(g, c, region):
                return False
            return omega(g, region & ~c.mask) < omega(g, to_mask(ctx.forest))
        if isinstance(outcome, AugmentedSystem):
            s = outcome.system
            return s.is_valid_in(g) and (ctx.k is None or len(s) == ctx.k) and s.mask & ~region == 0
    except (IndexError, ValueError):
        return False
    return False
