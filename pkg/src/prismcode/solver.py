"""Exact minimum identifying codes via the hitting-set reduction.

Two strategies, one answer.  The exhaustive strategy walks subsets in
cardinality order (lexicographic within a cardinality) and is the oracle:
its first hit is the lexicographically smallest optimal code.  The
branch-and-bound strategy only establishes the optimal size; the returned
code is then rebuilt position by position with feasibility probes, so it,
too, is the lexicographically smallest optimal code.  That shared
canonical answer is the determinism contract: strategies, worker counts
and repeated runs agree on everything except wall-clock time.

Branch and bound always splits the root branching constraint into
independent subsearches that share no incumbent; workers only decide how
those subsearches are scheduled, so node counts as well as results are
identical for every worker count.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable, Optional, Sequence

import numpy as np

from .cycleprism import lower_bound, pattern_code, upper_bound
from .graphs import Graph, PrismIndexing, bits, complementary_prism, cycle
from .idcode import HittingInstance, greedy_code, hitting_instance, vertex_label

STRATEGIES = ("exhaustive", "bnb")

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
CAP_EXCEEDED = "cap-exceeded"

_BLOCK = 1 << 15


@dataclass(frozen=True)
class SolverOptions:
    strategy: str = "bnb"
    size_cap: Optional[int] = None
    workers: int = 1
    seed: int = 0  # reserved for randomized strategies; current ones are deterministic

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.size_cap is not None and self.size_cap < 0:
            raise ValueError("size_cap must be nonnegative")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class SolverResult:
    status: str
    size: Optional[int] = None
    code: Optional[tuple[int, ...]] = None
    witness: Optional[tuple[int, int]] = None
    nodes: int = 0
    elapsed: float = 0.0

    def to_json(self, indexing: Optional[PrismIndexing] = None, indent: Optional[int] = None) -> str:
        payload: dict = {"status": self.status}
        if self.size is not None:
            payload["size"] = self.size
        if self.code is not None:
            payload["code"] = [vertex_label(v, indexing) for v in self.code]
        if self.witness is not None:
            payload["witness"] = [vertex_label(v, indexing) for v in self.witness]
        payload["nodes"] = self.nodes
        payload["ms"] = round(self.elapsed * 1000.0, 3)
        return json.dumps(payload, indent=indent)


def solve_min_idcode(g: Graph, d: int, options: Optional[SolverOptions] = None) -> SolverResult:
    """Minimum identifying code of (g, d), or an infeasibility witness.

    With a size cap, CAP_EXCEEDED certifies that no code of size <= cap
    exists; OPTIMAL results are always true optima, and the reported code
    is the lexicographically smallest one of optimal size.
    """
    opts = options or SolverOptions()
    start = time.perf_counter()
    inst = hitting_instance(g, d)
    if not inst.feasible:
        return SolverResult(
            INFEASIBLE, witness=inst.infeasible_pairs[0],
            elapsed=time.perf_counter() - start,
        )
    if opts.strategy == "exhaustive":
        size, code, nodes = _exhaustive(inst, opts.size_cap)
    else:
        size, nodes = _bnb_size(inst, opts.size_cap, opts.workers)
        code = _lexmin_code(inst, size) if size is not None else None
    elapsed = time.perf_counter() - start
    if size is None:
        return SolverResult(CAP_EXCEEDED, nodes=nodes, elapsed=elapsed)
    return SolverResult(OPTIMAL, size=size, code=code, nodes=nodes, elapsed=elapsed)


# ---------------------------------------------------------------- exhaustive

def _exhaustive(inst: HittingInstance, cap: Optional[int]):
    """First hitting set in (cardinality, lex) order; nodes = subsets tested."""
    universe = inst.universe
    constraints = sorted(inst.constraints, key=lambda c: c.bit_count())
    top = universe if cap is None else min(cap, universe)
    nodes = 0
    for k in range(top + 1):
        if universe <= 63:
            hit, tested = _scan_size_numpy(constraints, universe, k)
        else:
            hit, tested = _scan_size_pure(constraints, universe, k)
        nodes += tested
        if hit is not None:
            return k, tuple(hit), nodes
    return None, None, nodes


def _scan_size_numpy(constraints: Sequence[int], universe: int, k: int):
    """Vectorized lexicographic scan over all size-k subsets, block by block."""
    tested = 0
    stream = combinations(range(universe), k)
    while True:
        block = list(islice(stream, _BLOCK))
        if not block:
            return None, tested
        arr = np.array(block, dtype=np.uint64).reshape(len(block), k)
        masks = np.bitwise_or.reduce(np.left_shift(np.uint64(1), arr), axis=1)
        ok = np.ones(len(block), dtype=bool)
        for c in constraints:
            ok &= (masks & np.uint64(c)) != 0
            if not ok.any():
                break
        idx = np.nonzero(ok)[0]
        if len(idx):
            first = int(idx[0])
            return block[first], tested + first + 1
        tested += len(block)


def _scan_size_pure(constraints: Sequence[int], universe: int, k: int):
    tested = 0
    for combo in combinations(range(universe), k):
        tested += 1
        mask = 0
        for v in combo:
            mask |= 1 << v
        if all(mask & c for c in constraints):
            return combo, tested
    return None, tested


# ---------------------------------------------------------- branch and bound

def _disjoint_bound(unhit: Sequence[int], allowed: int) -> Optional[int]:
    """Greedy count of pairwise-disjoint live constraints; None if one is dead."""
    used = 0
    count = 0
    for c in unhit:
        if not c & allowed:
            return None
        if not c & used:
            count += 1
            used |= c
    return count


def _pick_constraint(unhit: Sequence[int], allowed: int) -> int:
    best = unhit[0]
    best_width = (best & allowed).bit_count()
    for c in unhit[1:]:
        width = (c & allowed).bit_count()
        if width < best_width:
            best, best_width = c, width
            if width == 1:
                break
    return best


def _search(unhit: list[int], chosen: int, allowed: int, goal: int, counter: list[int]) -> int:
    """Complete search below goal; returns the best size found, else goal."""
    counter[0] += 1
    if not unhit:
        return chosen
    lb = _disjoint_bound(unhit, allowed)
    if lb is None or chosen + lb >= goal:
        return goal
    c = _pick_constraint(unhit, allowed)
    sub_allowed = allowed
    for v in bits(c & allowed):
        vbit = 1 << v
        sub_allowed &= ~vbit
        rest = [u for u in unhit if not u & vbit]
        goal = _search(rest, chosen + 1, sub_allowed, goal, counter)
    return goal


def _branch(rest: list[int], allowed: int, goal: int) -> tuple[int, int]:
    counter = [0]
    best = _search(rest, 1, allowed, goal, counter)
    return best, counter[0]


def _bnb_size(inst: HittingInstance, cap: Optional[int], workers: int) -> tuple[Optional[int], int]:
    """Optimal size and node count, or (None, nodes) when the cap is exceeded.

    The root constraint is always split into one independent subsearch per
    candidate vertex, each starting from the same greedy/cap bound, so the
    outcome and the node count cannot depend on scheduling or workers.
    """
    if not inst.constraints:
        return 0, 0
    ub = len(greedy_code(inst))
    limit = ub if cap is None else min(ub, cap)
    goal = limit + 1
    unhit = sorted(inst.constraints, key=lambda c: c.bit_count())
    full = (1 << inst.universe) - 1
    root = _pick_constraint(unhit, full)
    tasks = []
    sub_allowed = full
    for v in bits(root):
        vbit = 1 << v
        sub_allowed &= ~vbit
        tasks.append(([u for u in unhit if not u & vbit], sub_allowed))
    if workers <= 1:
        outcomes = [_branch(rest, allowed, goal) for rest, allowed in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_branch, rest, allowed, goal) for rest, allowed in tasks]
            outcomes = [f.result() for f in futures]
    best = min([goal] + [b for b, _ in outcomes])
    nodes = 1 + sum(c for _, c in outcomes)
    if best > limit:
        return None, nodes  # only reachable when the cap bites below the greedy size
    return best, nodes


# ------------------------------------------------------ canonical lex-min code

def _above_mask(v: int, universe: int) -> int:
    return ((1 << universe) - 1) & ~((1 << v + 1) - 1)


def _decide(unhit: list[int], allowed: int, budget: int) -> bool:
    """Is there a hitting set of size <= budget inside allowed?"""
    if not unhit:
        return True
    if budget <= 0:
        return False
    lb = _disjoint_bound(unhit, allowed)
    if lb is None or lb > budget:
        return False
    c = _pick_constraint(unhit, allowed)
    sub_allowed = allowed
    for v in bits(c & allowed):
        vbit = 1 << v
        sub_allowed &= ~vbit
        if _decide([u for u in unhit if not u & vbit], sub_allowed, budget - 1):
            return True
    return False


def _lexmin_code(inst: HittingInstance, k: int) -> tuple[int, ...]:
    """Lexicographically smallest hitting set of the (optimal) size k.

    Fixes one position at a time with bounded feasibility probes; because
    k is optimal, a prefix is extendable iff some size-k code starts with
    it, so the greedy choice of the smallest feasible vertex is exact.
    """
    unhit = sorted(inst.constraints, key=lambda c: c.bit_count())
    chosen: list[int] = []
    start = 0
    for pos in range(k):
        budget = k - pos - 1
        for v in range(start, inst.universe):
            rest = [c for c in unhit if not c >> v & 1]
            if _decide(rest, _above_mask(v, inst.universe), budget):
                chosen.append(v)
                unhit = rest
                start = v + 1
                break
        else:
            raise AssertionError(f"no lex-min extension at position {pos}; size {k} wrong?")
    if unhit:
        raise AssertionError("lex-min reconstruction left constraints unhit")
    return tuple(chosen)


# -------------------------------------------------------------- table + export

@dataclass(frozen=True)
class IcRow:
    n: int
    status: str
    size: Optional[int]
    code: Optional[tuple[int, ...]]
    witness: Optional[tuple[int, int]]
    lower: Optional[int]
    upper: Optional[int]
    pattern_size: Optional[int]


def ic_table(n_values: Iterable[int], d: int = 1, options: Optional[SolverOptions] = None) -> tuple[IcRow, ...]:
    """Solve the prism of C_n for each n; attach certified bounds when they apply.

    For d = 1 and n >= 9 an optimal size outside [lower_bound, exact upper
    bound] would falsify the implementation, so it raises rather than
    returning a row.
    """
    rows = []
    for n in n_values:
        g = complementary_prism(cycle(n))
        res = solve_min_idcode(g, d, options)
        lower = upper = psize = None
        if d == 1 and n >= 9:
            lower = lower_bound(n)
            upper = upper_bound(n)[0]
            psize = pattern_code(n).size
            if res.status == OPTIMAL and not lower <= res.size <= upper:
                raise AssertionError(f"optimum {res.size} outside certified bounds at n={n}")
            if res.status == INFEASIBLE:
                raise AssertionError(f"prism of C_{n} reported infeasible at d=1")
        rows.append(IcRow(n, res.status, res.size, res.code, res.witness, lower, upper, psize))
    return tuple(rows)


def format_hitting_instance(inst: HittingInstance) -> str:
    """Text export: "h <universe> <constraints>" then one 1-based line each.

    Twin pairs, which make the instance unsatisfiable as a code, are
    recorded as "c twin <u> <v>" comment lines.
    """
    lines = [f"c twin {u + 1} {v + 1}" for u, v in inst.infeasible_pairs]
    lines.append(f"h {inst.universe} {len(inst.constraints)}")
    for c in inst.constraints:
        lines.append(" ".join(str(v + 1) for v in bits(c)))
    return "\n".join(lines) + "\n"
