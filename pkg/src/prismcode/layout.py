"""Binary layout trees and neighborhood-class counting.

A layout tree is a rooted binary tree whose leaves are exactly the
vertices of a graph.  At a tree node covering the vertex set V_s, two
covered vertices are equivalent when their closed neighborhoods agree
outside V_s; the number of classes, maximized over nodes, measures how
tangled the graph is with respect to that layout.

The point proved here computationally: lifting a layout tree to the
complementary prism by replacing each leaf u with a cherry over u and its
bar partner at most doubles the maximum class count.  check_doubling
tests exactly that inequality for a concrete graph and tree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .graphs import Graph, GraphFormatError, bits, complementary_prism


class LayoutTree:
    """Leaf (vertex >= 0) or internal node with two children; immutable."""

    __slots__ = ("vertex", "left", "right", "leaf_mask")

    def __init__(self, vertex: Optional[int], left: Optional["LayoutTree"], right: Optional["LayoutTree"]):
        if (vertex is None) == (left is None or right is None):
            raise ValueError("a node is either a leaf or has two children")
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        mask = 1 << vertex if vertex is not None else left.leaf_mask | right.leaf_mask
        if vertex is None and left.leaf_mask & right.leaf_mask:
            raise ValueError("children cover overlapping leaf sets")
        object.__setattr__(self, "leaf_mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("LayoutTree is immutable")

    @classmethod
    def leaf(cls, vertex: int) -> "LayoutTree":
        if vertex < 0:
            raise ValueError("leaf labels are nonnegative vertex indices")
        return cls(vertex, None, None)

    @classmethod
    def node(cls, left: "LayoutTree", right: "LayoutTree") -> "LayoutTree":
        return cls(None, left, right)

    @property
    def is_leaf(self) -> bool:
        return self.vertex is not None

    def leaves(self) -> tuple[int, ...]:
        return tuple(bits(self.leaf_mask))

    def postorder(self) -> Iterator["LayoutTree"]:
        if not self.is_leaf:
            yield from self.left.postorder()
            yield from self.right.postorder()
        yield self

    def __eq__(self, other) -> bool:
        if not isinstance(other, LayoutTree):
            return NotImplemented
        if self.is_leaf or other.is_leaf:
            return self.vertex == other.vertex
        return self.left == other.left and self.right == other.right

    def __hash__(self) -> int:
        if self.is_leaf:
            return hash(("leaf", self.vertex))
        return hash((hash(self.left), hash(self.right)))

    def __repr__(self) -> str:
        return f"LayoutTree({format_layout(self)!r})"


def format_layout(t: LayoutTree) -> str:
    """Nested parens with 1-based leaf labels, e.g. "((1,2),(3,4))"."""
    if t.is_leaf:
        return str(t.vertex + 1)
    return f"({format_layout(t.left)},{format_layout(t.right)})"


def parse_layout(text: str) -> LayoutTree:
    s = "".join(text.split())
    pos = 0

    def node() -> LayoutTree:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            left = node()
            if pos >= len(s) or s[pos] != ",":
                raise GraphFormatError(f"expected ',' at offset {pos} of layout text")
            pos += 1
            right = node()
            if pos >= len(s) or s[pos] != ")":
                raise GraphFormatError(f"expected ')' at offset {pos} of layout text")
            pos += 1
            if left.leaf_mask & right.leaf_mask:
                raise GraphFormatError("layout tree repeats a leaf label")
            return LayoutTree.node(left, right)
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise GraphFormatError(f"expected a leaf label at offset {pos} of layout text")
        label = int(s[start:pos])
        if label < 1:
            raise GraphFormatError("leaf labels are 1-based")
        return LayoutTree.leaf(label - 1)

    tree = node()
    if pos != len(s):
        raise GraphFormatError(f"trailing characters at offset {pos} of layout text")
    return tree


def _check_cover(t: LayoutTree, order: int) -> None:
    if t.leaf_mask != (1 << order) - 1 or order == 0:
        raise ValueError("layout tree leaves must be exactly the graph's vertices")


@dataclass(frozen=True)
class ClassCountProfile:
    """Class counts per tree node in postorder, plus the maximum."""

    counts: tuple[int, ...]
    max_classes: int
    max_leaves: tuple[int, ...]  # leaf set of the first node attaining the max


def class_profile(g: Graph, t: LayoutTree) -> ClassCountProfile:
    """Count neighborhood classes at every node of the tree.

    Only the tree's shape and leaf labels matter.  Leaves always count 1;
    the root counts 1 as well since nothing lies outside it.
    """
    _check_cover(t, g.order)
    counts = []
    best = 0
    best_leaves: tuple[int, ...] = ()
    for node in t.postorder():
        cover = node.leaf_mask
        signatures = {g.closed_row(u) & ~cover for u in bits(cover)}
        counts.append(len(signatures))
        if len(signatures) > best:
            best = len(signatures)
            best_leaves = node.leaves()
    return ClassCountProfile(tuple(counts), best, best_leaves)


def prism_layout(t: LayoutTree) -> LayoutTree:
    """Lift a layout tree of G to its complementary prism.

    Each leaf u becomes an internal node over u and its matched partner
    n + u, where n is the number of leaves; the trees above are copied.
    The leaf labels must be exactly 0..n-1.
    """
    n = t.leaf_mask.bit_count()
    _check_cover(t, n)

    def lift(node: LayoutTree) -> LayoutTree:
        if node.is_leaf:
            return LayoutTree.node(node, LayoutTree.leaf(n + node.vertex))
        return LayoutTree.node(lift(node.left), lift(node.right))

    return lift(t)


@dataclass(frozen=True)
class DoublingCheck:
    base_max: int
    prism_max: int

    @property
    def ok(self) -> bool:
        return self.prism_max <= 2 * self.base_max


def check_doubling(g: Graph, t: LayoutTree) -> DoublingCheck:
    """Compare class counts of (g, t) and of the lifted prism layout."""
    base = class_profile(g, t)
    lifted = class_profile(complementary_prism(g), prism_layout(t))
    return DoublingCheck(base.max_classes, lifted.max_classes)


def balanced_layout_tree(order: int) -> LayoutTree:
    """Halving tree over vertices 0..order-1."""
    if order < 1:
        raise ValueError("need at least one vertex")

    def build(lo: int, hi: int) -> LayoutTree:
        if hi - lo == 1:
            return LayoutTree.leaf(lo)
        mid = (lo + hi) // 2
        return LayoutTree.node(build(lo, mid), build(mid, hi))

    return build(0, order)


def random_layout_tree(order: int, rng: random.Random) -> LayoutTree:
    """Random shape over a shuffled vertex order; deterministic in rng state."""
    if order < 1:
        raise ValueError("need at least one vertex")
    perm = list(range(order))
    rng.shuffle(perm)

    def build(part: Sequence[int]) -> LayoutTree:
        if len(part) == 1:
            return LayoutTree.leaf(part[0])
        cut = rng.randint(1, len(part) - 1)
        return LayoutTree.node(build(part[:cut]), build(part[cut:]))

    return build(perm)
