"""Rooted ordered trees whose vertices have 0 or >= 2 ordered children.

Every natural exact covering system arises from at least one such tree:
label the root <0,1> and give the children of a vertex labelled <a,n>
with up-degree r the labels <a+jn, rn>, j = 0..r-1.  The set of leaf
labels is an exact covering system, and the map (called chi here) from
trees onto natural systems is a surjection that sends leaf count to
system size.  Trees with k leaves are counted by the Schroder numbers.

Serialization is nested parentheses with explicit up-degrees: a leaf is
"()" and an internal vertex with children c1..cr is "(r c1 ... cr)".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .congruence import TRIVIAL, CoveringSystem, expand


@dataclass(frozen=True)
class Tree:
    """Ordered tree; children is empty (a leaf) or has length >= 2."""

    children: tuple["Tree", ...] = ()

    def __post_init__(self):
        if len(self.children) == 1:
            raise ValueError("vertices with exactly one child are not allowed")

    @property
    def up_degree(self) -> int:
        return len(self.children)

    def is_leaf(self) -> bool:
        return not self.children

    def __repr__(self) -> str:
        return f"Tree{format_tree(self)!r}"


LEAF = Tree()


def leaf_count(t: Tree) -> int:
    if t.is_leaf():
        return 1
    return sum(leaf_count(c) for c in t.children)


def height(t: Tree) -> int:
    if t.is_leaf():
        return 0
    return 1 + max(height(c) for c in t.children)


def chi(t: Tree) -> CoveringSystem:
    """The covering system whose classes are the leaf labels of t.

    Computed recursively: the leaf tree maps to {<0,1>}, and a root of
    up-degree n maps to the disjoint union of the <i-1,n>-expansions of
    its children's systems.  Always exact and natural, with exactly
    leaf_count(t) classes.
    """
    if t.is_leaf():
        return TRIVIAL
    n = t.up_degree
    classes = []
    for i, child in enumerate(t.children):
        classes.extend(expand(chi(child), i, n).classes)
    return CoveringSystem(classes)


def ab_bijection(t: Tree, a: int, b: int) -> Tree:
    """Regroup a root of up-degree a*b into a children of up-degree b.

    Child i (1-indexed) of the new root receives the original subtrees at
    root-child positions i, i+a, ..., i+(b-1)a, in order.  Every moved
    subtree keeps its label, so chi is preserved.  Inverse: ab_inverse.
    """
    if a < 2 or b < 2:
        raise ValueError("need a, b >= 2")
    if t.up_degree != a * b:
        raise ValueError(f"root up-degree {t.up_degree} differs from a*b = {a * b}")
    xs = t.children
    return Tree(tuple(Tree(tuple(xs[(i + j * a) - 1] for j in range(b))) for i in range(1, a + 1)))


def ab_inverse(s: Tree, a: int, b: int) -> Tree:
    """Undo ab_bijection: flatten a root of degree a whose children all have
    degree b back into a single root of degree a*b."""
    if a < 2 or b < 2:
        raise ValueError("need a, b >= 2")
    if s.up_degree != a or any(y.up_degree != b for y in s.children):
        raise ValueError("tree is not in the a-by-b regrouped form")
    xs: list[Tree] = [LEAF] * (a * b)
    for i, y in enumerate(s.children):      # i = 0..a-1
        for j, sub in enumerate(y.children):  # j = 0..b-1
            xs[i + j * a] = sub
    return Tree(tuple(xs))


def _compositions_colex(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of total into parts positive parts, colexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for last in range(1, total - parts + 2):
        for rest in _compositions_colex(total - last, parts - 1):
            yield rest + (last,)


def enumerate_trees(k: int) -> Iterator[Tree]:
    """All trees with exactly k leaves, each exactly once.

    Deterministic order: by root up-degree, then child-leaf-count
    compositions in colexicographic order, then recursively.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if k == 1:
        yield LEAF
        return
    for r in range(2, k + 1):
        for comp in _compositions_colex(k, r):
            yield from _trees_with_composition(comp)


def _trees_with_composition(comp: tuple[int, ...]) -> Iterator[Tree]:
    def rec(i: int, acc: tuple[Tree, ...]) -> Iterator[Tree]:
        if i == len(comp):
            yield Tree(acc)
            return
        for child in enumerate_trees(comp[i]):
            yield from rec(i + 1, acc + (child,))

    yield from rec(0, ())


def tree_count(k: int) -> int:
    """Number of trees with k leaves (Schroder number), by direct recursion
    with memoization; an independent check against the series expansion."""
    memo = {1: 1}

    def count(m: int) -> int:
        if m in memo:
            return memo[m]
        total = 0
        for r in range(2, m + 1):
            for comp in _compositions_colex(m, r):
                prod = 1
                for c in comp:
                    prod *= count(c)
                total += prod
        memo[m] = total
        return total

    return count(k)


# --- parenthesized format ----------------------------------------------------


def format_tree(t: Tree) -> str:
    if t.is_leaf():
        return "()"
    inner = " ".join(format_tree(c) for c in t.children)
    return f"({t.up_degree} {inner})"


def parse_tree(text: str) -> Tree:
    """Parse the parenthesized format; up-degrees must match child counts."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos}")
        pos += 1
        if pos < len(tokens) and tokens[pos] == ")":
            pos += 1
            return LEAF
        if pos >= len(tokens) or not tokens[pos].isdigit():
            raise ValueError(f"expected up-degree at token {pos}")
        degree = int(tokens[pos])
        pos += 1
        children = []
        while pos < len(tokens) and tokens[pos] == "(":
            children.append(parse())
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("unbalanced parentheses")
        pos += 1
        if degree != len(children):
            raise ValueError(f"up-degree {degree} does not match {len(children)} children")
        return Tree(tuple(children))

    result = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens after tree")
    return result
