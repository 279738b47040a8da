"""Definitional identifying-code verification and the hitting-set view.

A set C of vertices identifies a graph at radius d when every closed
distance-d ball meets C and no two vertices meet C in the same set.  The
verifier here works straight from that definition over ball bitsets; it
is the ground truth the rest of the package is checked against.

The same requirements read as a hitting-set instance: one constraint per
vertex (its ball, for domination) and one per vertex pair (the symmetric
difference of their balls, for separation).  A pair whose balls coincide
yields an empty constraint, i.e. a certificate that no code exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .graphs import BallTable, Graph, PrismIndexing, ball_table, bits, mask_of


class InfeasibleInstanceError(ValueError):
    """No code exists; carries one offending twin pair."""

    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"twin vertices {witness[0]} and {witness[1]} admit no code")
        self.witness = witness


@dataclass(frozen=True)
class VerificationFailure:
    kind: str  # "empty-ball" or "unseparated"
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    failure: Optional[VerificationFailure] = None

    def to_json(self, indexing: Optional[PrismIndexing] = None, indent: Optional[int] = None) -> str:
        payload: dict = {"valid": self.valid}
        if self.failure is not None:
            payload["failure"] = {
                "kind": self.failure.kind,
                "vertices": [vertex_label(v, indexing) for v in self.failure.vertices],
            }
        return json.dumps(payload, indent=indent)


def vertex_label(v: int, indexing: Optional[PrismIndexing] = None) -> Union[str, int]:
    """Prism vertices label as "v3"/"vbar7", anything else as a 1-based int."""
    return indexing.label(v) if indexing is not None else v + 1


def is_identifying_code(
    g: Graph,
    d: int,
    code: Iterable[int],
    table: Optional[BallTable] = None,
) -> VerificationReport:
    """Check C against the definition and report the first failure.

    An empty ball intersection at the smallest vertex wins over an
    unseparated pair; among unseparated pairs the lexicographically first
    one is reported.  A precomputed BallTable for (g, d) may be passed to
    amortize repeated checks.
    """
    if table is None:
        table = ball_table(g, d)
    code_mask = mask_of(code)
    if code_mask & ~((1 << g.order) - 1):
        raise ValueError("code mentions vertices outside the graph")
    views = [table.balls[u] & code_mask for u in range(g.order)]
    for u, view in enumerate(views):
        if not view:
            return VerificationReport(False, VerificationFailure("empty-ball", (u,)))
    seen: dict[int, int] = {}
    clash: Optional[tuple[int, int]] = None
    for u, view in enumerate(views):
        if view in seen:
            pair = (seen[view], u)
            if clash is None or pair < clash:
                clash = pair
        else:
            seen[view] = u
    if clash is not None:
        return VerificationReport(False, VerificationFailure("unseparated", clash))
    return VerificationReport(True)


@dataclass(frozen=True)
class HittingInstance:
    """Hitting-set form of the code requirements.

    constraints holds deduplicated nonempty vertex-set bitmasks, first the
    domination balls in vertex order, then the pair separation sets in
    lexicographic pair order (first occurrence kept).  infeasible_pairs
    lists the twin pairs whose separation set is empty; any nonempty entry
    means no hitting set is a code.
    """

    universe: int
    constraints: tuple[int, ...]
    infeasible_pairs: tuple[tuple[int, int], ...]

    @property
    def feasible(self) -> bool:
        return not self.infeasible_pairs

    def is_hitting(self, code_mask: int) -> bool:
        return all(code_mask & c for c in self.constraints)


def hitting_instance(g: Graph, d: int, reduce: bool = False) -> HittingInstance:
    """Build the domination + separation constraint system for (g, d).

    With reduce=True, constraints that strictly contain another constraint
    are dropped as well; the set of hitting sets is unchanged.
    """
    table = ball_table(g, d)
    constraints: list[int] = []
    seen: set[int] = set()
    infeasible: list[tuple[int, int]] = []
    for u in range(g.order):
        ball = table.balls[u]
        if ball not in seen:
            seen.add(ball)
            constraints.append(ball)
    for u in range(g.order):
        for v in range(u + 1, g.order):
            diff = table.balls[u] ^ table.balls[v]
            if not diff:
                infeasible.append((u, v))
            elif diff not in seen:
                seen.add(diff)
                constraints.append(diff)
    if reduce:
        constraints = [
            c for c in constraints
            if not any(o != c and o & ~c == 0 for o in constraints)
        ]
    return HittingInstance(g.order, tuple(constraints), tuple(infeasible))


def greedy_code(inst: HittingInstance) -> tuple[int, ...]:
    """Max-coverage greedy hitting set, ties broken toward lower indices.

    Raises InfeasibleInstanceError when the instance has twin pairs.  The
    result is a valid code whenever the instance is feasible, which upper
    bounds the optimum for solver warm starts.
    """
    if inst.infeasible_pairs:
        raise InfeasibleInstanceError(inst.infeasible_pairs[0])
    unhit = list(inst.constraints)
    chosen: list[int] = []
    chosen_mask = 0
    while unhit:
        counts: dict[int, int] = {}
        for c in unhit:
            for v in bits(c):
                counts[v] = counts.get(v, 0) + 1
        if not counts:
            raise InfeasibleInstanceError((-1, -1))  # empty constraint, not produced here
        best = max(counts, key=lambda v: (counts[v], -v))
        chosen.append(best)
        chosen_mask |= 1 << best
        unhit = [c for c in unhit if not c & chosen_mask]
    return tuple(sorted(chosen))
