"""Bitset-backed graphs plus the constructions this package revolves around.

Vertices of a graph of order n are 0..n-1 and every adjacency row is a
Python int used as a bitset, which keeps closed neighborhoods, distance
balls and symmetric differences single integer operations.  The
complementary prism of a graph G places G on vertices 0..n-1, the
complement of G on vertices n..2n-1, and joins i with n+i by a matching
edge.  `PrismIndexing` translates between those artifact indices and the
1-based labels ("v3", "vbar7") used by every external interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class GraphFormatError(ValueError):
    """Raised when graph or code text input does not parse."""


class Graph:
    """Immutable undirected simple graph with int-bitset adjacency rows."""

    __slots__ = ("order", "adj", "_edge_count")

    def __init__(self, order: int, adj: Sequence[int]):
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(adj) != order:
            raise ValueError("adjacency length must equal order")
        full = (1 << order) - 1
        rows = tuple(adj)
        for u, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {u} mentions vertices outside 0..{order - 1}")
            if row >> u & 1:
                raise ValueError(f"self-loop at vertex {u}")
        for u, row in enumerate(rows):
            for v in bits(row):
                if not rows[v] >> u & 1:
                    raise ValueError(f"edge {u},{v} is not symmetric")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "adj", rows)
        object.__setattr__(self, "_edge_count", sum(row.bit_count() for row in rows) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u},{v} outside 0..{order - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return tuple(bits(self.adj[u]))

    def closed_row(self, u: int) -> int:
        return self.adj[u] | 1 << u

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.order):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.order == other.order and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.order, self.adj))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edge_count})"


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def cycle(n: int) -> Graph:
    """The cycle on vertices 0..n-1 in the natural order; requires n >= 3."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(1 << (u + 1) % n) | (1 << (u - 1) % n) for u in range(n)])


def complement(g: Graph) -> Graph:
    full = (1 << g.order) - 1
    return Graph(g.order, [full ^ row ^ (1 << u) for u, row in enumerate(g.adj)])


def complementary_prism(g: Graph) -> Graph:
    """G on 0..n-1, its complement on n..2n-1, plus the matching i -- n+i."""
    n = g.order
    full = (1 << n) - 1
    rows = [g.adj[u] | 1 << n + u for u in range(n)]
    rows += [(full ^ g.adj[u] ^ (1 << u)) << n | 1 << u for u in range(n)]
    return Graph(2 * n, rows)


@dataclass(frozen=True)
class PrismIndexing:
    """Map between prism artifact indices and 1-based cycle/bar labels.

    Cycle vertex i (1-based) sits at artifact index i-1, its bar partner
    at n+i-1; the labels are "v<i>" and "vbar<i>".
    """

    n: int

    def cycle_vertex(self, i: int) -> int:
        self._check(i)
        return i - 1

    def bar_vertex(self, i: int) -> int:
        self._check(i)
        return self.n + i - 1

    def is_bar(self, v: int) -> bool:
        if not 0 <= v < 2 * self.n:
            raise ValueError(f"vertex {v} outside prism of order {2 * self.n}")
        return v >= self.n

    def position(self, v: int) -> int:
        """1-based cycle position shared by a vertex and its bar partner."""
        return v % self.n + 1 if 0 <= v < 2 * self.n else self._bad(v)

    def label(self, v: int) -> str:
        return ("vbar" if self.is_bar(v) else "v") + str(self.position(v))

    def parse_label(self, text: str) -> int:
        s = text.strip()
        bar = s.startswith("vbar")
        digits = s[4:] if bar else s[1:] if s.startswith("v") else None
        if digits is None or not digits.isdigit():
            raise GraphFormatError(f"bad vertex label {text!r}")
        i = int(digits)
        return self.bar_vertex(i) if bar else self.cycle_vertex(i)

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ValueError(f"index {i} outside 1..{self.n}")

    def _bad(self, v: int):
        raise ValueError(f"vertex {v} outside prism of order {2 * self.n}")


class BallTable:
    """Closed distance-d balls of every vertex, as bitsets."""

    __slots__ = ("graph", "d", "balls")

    def __init__(self, graph: Graph, d: int, balls: tuple[int, ...]):
        self.graph = graph
        self.d = d
        self.balls = balls

    def ball_mask(self, u: int) -> int:
        return self.balls[u]

    def ball(self, u: int) -> tuple[int, ...]:
        return tuple(bits(self.balls[u]))

    def __iter__(self) -> Iterator[int]:
        return iter(self.balls)


def ball_table(g: Graph, d: int) -> BallTable:
    """Balls via d rounds of neighborhood expansion; requires d >= 1."""
    if d < 1:
        raise ValueError("radius must be at least 1")
    balls = [g.closed_row(u) for u in range(g.order)]
    for _ in range(d - 1):
        balls = [_expand(g, ball) for ball in balls]
    return BallTable(g, d, tuple(balls))


def _expand(g: Graph, ball: int) -> int:
    out = ball
    for v in bits(ball):
        out |= g.adj[v]
    return out


def closed_twins(g: Graph, d: int) -> tuple[tuple[int, int], ...]:
    """Pairs u < v whose distance-d balls coincide, in lexicographic order.

    Such a pair defeats every candidate code, so a nonempty result is an
    infeasibility certificate.
    """
    table = ball_table(g, d)
    groups: dict[int, list[int]] = {}
    for u in range(g.order):
        groups.setdefault(table.balls[u], []).append(u)
    pairs = [
        (u, v)
        for members in groups.values()
        for k, u in enumerate(members)
        for v in members[k + 1:]
    ]
    return tuple(sorted(pairs))


def random_graph(order: int, rng, p: float = 0.5) -> Graph:
    """Erdos-Renyi draw using rng.random(); deterministic in rng state."""
    edges = [
        (u, v)
        for u in range(order)
        for v in range(u + 1, order)
        if rng.random() < p
    ]
    return Graph.from_edges(order, edges)


def format_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    """Graph text format: "p <order> <edges>" then sorted "e <u> <v>" lines, 1-based."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {g.order} {g.edge_count}")
    lines += [f"e {u + 1} {v + 1}" for u, v in sorted(g.edges())]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Inverse of format_graph; "c" comment lines and blank lines are skipped."""
    order: Optional[int] = None
    declared = 0
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if order is not None:
                raise GraphFormatError(f"line {lineno}: duplicate p line")
            if len(fields) != 3 or not all(f.isdigit() for f in fields[1:]):
                raise GraphFormatError(f"line {lineno}: expected 'p <order> <edges>'")
            order, declared = int(fields[1]), int(fields[2])
        elif fields[0] == "e":
            if order is None:
                raise GraphFormatError(f"line {lineno}: edge before p line")
            if len(fields) != 3 or not all(f.isdigit() for f in fields[1:]):
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            u, v = int(fields[1]), int(fields[2])
            if not (1 <= u <= order and 1 <= v <= order) or u == v:
                raise GraphFormatError(f"line {lineno}: bad edge {u} {v}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {fields[0]!r}")
    if order is None:
        raise GraphFormatError("missing p line")
    if len(edges) != declared:
        raise GraphFormatError(f"p line declares {declared} edges, found {len(edges)}")
    g = Graph.from_edges(order, edges)
    if g.edge_count != len(edges):
        raise GraphFormatError("duplicate edges in input")
    return g
