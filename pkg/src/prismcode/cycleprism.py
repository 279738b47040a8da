"""Identifying codes in complementary prisms of cycles, C_n plus its complement.

A candidate code is a pair of bit rows over the n cycle positions: x marks
cycle vertices in the code, xbar marks complement-side ("bar") vertices.
Positions are 0-based here and wrap modulo n; every external surface
(strings, JSON, CLI) uses 1-based positions.

For n >= 9 the identifying property reduces to a finite system of
"some listed position is in the code" conditions, one family per kind of
requirement on the cycle side plus two families for bar-side separation.
The reduction is exact whenever the bar side of the code has at least 4
members: that many bar members already dominate every bar vertex and
separate every cycle/bar pair, so only the listed families can fail.
With fewer bar members the conditions stay necessary but not sufficient,
and verify_code falls back to the definitional check.

pattern_code builds the periodic code witnessing the n - 2*floor(n/9)
upper bound; exchange applies a local rewrite that removes empty columns
from a code without growing it, and when both rewrites fail it exhibits
the rigid 9-column window that blocks them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import json
import math
from typing import Iterable, NamedTuple, Optional

from .graphs import Graph, bits, complementary_prism, cycle
from .idcode import is_identifying_code

DOMINATION = "dom"                     # a cycle vertex's view of the code is empty
SEP_ADJACENT = "sep-adjacent"          # cycle vertices one step apart see the same view
SEP_DISTANCE2 = "sep-distance2"        # cycle vertices two steps apart see the same view
BAR_SEP = "bar-sep"                    # two bar vertices see the same view
BAR_SEP_DISTANCE2 = "bar-sep-distance2"  # bar vertices two steps apart, exact form

IMPROVED = "improved"
PATTERN_DETECTED = "pattern-detected"
NOT_APPLICABLE = "not-applicable"

# Both rows of the rigid window that survives every exchange.
WINDOW_ROW = (1, 0, 0, 1, 0, 1, 0, 0, 1)


@dataclass(frozen=True)
class CodePair:
    """Candidate code in the prism of C_n: x for cycle side, xbar for bar side."""

    n: int
    x: int
    xbar: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        full = (1 << self.n) - 1
        if self.x & ~full or self.xbar & ~full:
            raise ValueError("bit rows exceed n positions")

    @property
    def size(self) -> int:
        return self.x.bit_count() + self.xbar.bit_count()

    @property
    def vertex_mask(self) -> int:
        """Bitset over the prism's 0..2n-1 vertex indexing."""
        return self.x | self.xbar << self.n

    def vertices(self) -> tuple[int, ...]:
        return tuple(bits(self.vertex_mask))

    @classmethod
    def from_vertex_mask(cls, n: int, mask: int) -> "CodePair":
        return cls(n, mask & (1 << n) - 1, mask >> n)

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "CodePair":
        mask = 0
        for v in vertices:
            if not 0 <= v < 2 * n:
                raise ValueError(f"vertex {v} outside prism of order {2 * n}")
            mask |= 1 << v
        return cls.from_vertex_mask(n, mask)

    @classmethod
    def from_strings(cls, text: str) -> "CodePair":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if len(lines) != 2 or len(lines[0]) != len(lines[1]) or not lines[0]:
            raise ValueError("expected two nonempty 0/1 lines of equal length")
        if set(lines[0]) | set(lines[1]) > {"0", "1"}:
            raise ValueError("code rows must consist of 0 and 1 only")
        n = len(lines[0])
        x = sum(1 << a for a, ch in enumerate(lines[0]) if ch == "1")
        xbar = sum(1 << a for a, ch in enumerate(lines[1]) if ch == "1")
        return cls(n, x, xbar)

    def to_strings(self) -> str:
        row = lambda m: "".join("1" if m >> a & 1 else "0" for a in range(self.n))
        return row(self.x) + "\n" + row(self.xbar) + "\n"

    def bad_indices(self) -> frozenset:
        """Positions whose column is all-zero: neither the cycle nor the bar vertex chosen."""
        both = self.x | self.xbar
        return frozenset(a for a in range(self.n) if not both >> a & 1)

    def blind_bar(self) -> frozenset:
        """Positions a with xbar[a-1] = x[a] = xbar[a+1] = 0.

        The bar vertex at such a position meets the code in exactly the
        whole bar side, so any two blind positions are unseparated.
        """
        n = self.n
        return frozenset(
            a for a in range(n)
            if not (self.xbar >> (a - 1) % n & 1 or self.x >> a & 1 or self.xbar >> (a + 1) % n & 1)
        )


class Condition(NamedTuple):
    family: str
    indices: tuple[int, ...]
    mask: int  # over the prism's 2n-bit vertex indexing


class Violation(NamedTuple):
    family: str
    indices: tuple[int, ...]


@dataclass(frozen=True)
class ConditionReport:
    n: int
    violations: tuple[Violation, ...]
    bad_indices: frozenset
    blind_bar: frozenset

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, indent: Optional[int] = None) -> str:
        """JSON with 1-based positions, matching the CLI convention."""
        payload = {
            "ok": self.ok,
            "violations": [
                {"family": fam, "indices": [a + 1 for a in idx]} for fam, idx in self.violations
            ],
            "bad_indices": sorted(a + 1 for a in self.bad_indices),
            "blind_bar": sorted(a + 1 for a in self.blind_bar),
        }
        return json.dumps(payload, indent=indent)


def _require_scope(n: int) -> None:
    if n < 9:
        raise ValueError("the condition system is stated for n >= 9")


@lru_cache(maxsize=None)
def condition_masks(n: int) -> tuple[Condition, ...]:
    """Every condition instance for C_n's prism, in report order.

    Each mask lists the positions (as prism vertices) at least one of
    which must be in the code.  Bar-pair conditions run over all ordered
    pairs at cycle distance other than 0 and 2; the pairs two steps apart
    get their own tighter family.
    """
    _require_scope(n)
    x = lambda a: 1 << a % n
    xb = lambda a: 1 << n + a % n
    out: list[Condition] = []
    for a in range(n):
        out.append(Condition(DOMINATION, (a,), x(a - 1) | x(a) | xb(a) | x(a + 1)))
    for a in range(n):
        out.append(Condition(SEP_ADJACENT, (a, (a + 1) % n), x(a - 1) | xb(a) | xb(a + 1) | x(a + 2)))
    for a in range(n):
        out.append(Condition(
            SEP_DISTANCE2, (a, (a + 2) % n),
            x(a - 1) | x(a) | xb(a) | x(a + 2) | xb(a + 2) | x(a + 3),
        ))
    for a in range(n):
        for off in range(1, n):
            if off == 2:
                continue
            b = (a + off) % n
            out.append(Condition(
                BAR_SEP, (a, b),
                xb(a - 1) | x(a) | xb(a + 1) | xb(b - 1) | x(b) | xb(b + 1),
            ))
    for a in range(n):
        out.append(Condition(
            BAR_SEP_DISTANCE2, (a, (a + 2) % n),
            xb(a - 1) | x(a) | x(a + 2) | xb(a + 3),
        ))
    return tuple(out)


def check_conditions(code: CodePair) -> ConditionReport:
    """Evaluate every condition instance against the code."""
    _require_scope(code.n)
    mask = code.vertex_mask
    violations = tuple(
        Violation(c.family, c.indices) for c in condition_masks(code.n) if not mask & c.mask
    )
    return ConditionReport(code.n, violations, code.bad_indices(), code.blind_bar())


@lru_cache(maxsize=64)
def _prism(n: int) -> Graph:
    return complementary_prism(cycle(n))


def verify_code(code: CodePair) -> bool:
    """Is the pair an identifying code of the prism of C_n?

    Decided purely by the condition system when the bar side has >= 4
    members (the regime where the system is exact); otherwise falls back
    to the definitional verifier on the prism graph.
    """
    _require_scope(code.n)
    if code.xbar.bit_count() >= 4:
        mask = code.vertex_mask
        return all(mask & c.mask for c in condition_masks(code.n))
    report = is_identifying_code(_prism(code.n), 1, code.vertices())
    return report.valid


def pattern_code(n: int) -> CodePair:
    """The periodic code of size n - 2*floor(n/9).

    Per 9-block: cycle positions congruent to 1,2,3 and bar positions
    congruent to 5,6,7,8 (1-based); every cycle position past the last
    full block joins the code as well.
    """
    _require_scope(n)
    k = n // 9
    x = xbar = 0
    for i in range(1, n + 1):  # 1-based to keep the residues readable
        if (i % 9 in (1, 2, 3) and i <= 9 * k) or i > 9 * k:
            x |= 1 << i - 1
        if i % 9 in (5, 6, 7, 8) and i <= 9 * k:
            xbar |= 1 << i - 1
    return CodePair(n, x, xbar)


def upper_bound(n: int) -> tuple[int, Fraction]:
    """(exact bound n - 2*floor(n/9), analytic bound 7n/9 + 16/9)."""
    _require_scope(n)
    return n - 2 * (n // 9), Fraction(7 * n + 16, 9)


def lower_bound(n: int) -> int:
    """ceil(7n/9 - 12); every code has at least this many members."""
    _require_scope(n)
    return math.ceil(Fraction(7 * n, 9) - 12)


@dataclass(frozen=True)
class ExchangeResult:
    kind: str  # IMPROVED, PATTERN_DETECTED or NOT_APPLICABLE
    code: Optional[CodePair] = None
    window_start: Optional[int] = None


def exchange(code: CodePair, a: int) -> ExchangeResult:
    """Try to clear the empty columns a, a+1 by a local rewrite.

    Applies when the bar side has >= 6 members, columns a and a+1 are
    all-zero, and none of the positions a-5, a, a+1, a+6 is blind.  Two
    rewrites are tried in order: add both cycle vertices and drop the two
    flanking bar vertices, or swap the cycle vertex at a+2 for the bar
    vertex at a+1.  The first rewrite that yields a verified code of no
    larger size with strictly fewer empty columns wins.  When neither
    does, the code must contain the rigid window (both rows equal to
    100101001) starting at a-1 or a-6, reported as PATTERN_DETECTED.
    """
    n = code.n
    _require_scope(n)
    if not 0 <= a < n:
        raise ValueError(f"position {a} outside 0..{n - 1}")
    bit = lambda p: 1 << p % n
    hypothesis = (
        code.xbar.bit_count() >= 6
        and not (code.x | code.xbar) & (bit(a) | bit(a + 1))
        and not {a % n, (a + 1) % n, (a - 5) % n, (a + 6) % n} & code.blind_bar()
    )
    if not hypothesis:
        return ExchangeResult(NOT_APPLICABLE)
    rewrites = (
        CodePair(n, code.x | bit(a) | bit(a + 1), code.xbar & ~(bit(a - 1) | bit(a + 2))),
        CodePair(n, code.x & ~bit(a + 2), code.xbar | bit(a + 1)),
    )
    bad_before = len(code.bad_indices())
    for cand in rewrites:
        if cand.size <= code.size and len(cand.bad_indices()) < bad_before and verify_code(cand):
            return ExchangeResult(IMPROVED, code=cand)
    for start in ((a - 1) % n, (a - 6) % n):
        if _window_at(code, start):
            return ExchangeResult(PATTERN_DETECTED, window_start=start)
    return ExchangeResult(NOT_APPLICABLE)


def _window_at(code: CodePair, start: int) -> bool:
    n = code.n
    for k, want in enumerate(WINDOW_ROW):
        p = (start + k) % n
        if (code.x >> p & 1) != want or (code.xbar >> p & 1) != want:
            return False
    return True
