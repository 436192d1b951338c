"""Weighted rooted trees recording how energy bubbles off.

A bubble tree has non-negative integer weights; every non-root vertex
either has non-zero weight or has at least two children, each of whose
subtrees carries positive total weight.  Non-root weight-0 vertices are
ghosts.

Canonical encoding (stable text format, used in CLI output and golden
files)::

    tree     := weight [ "(" tree ( "," tree )* ")" ]
    weight   := decimal integer

Children appear in ascending order of their canonical key, where the key
of a vertex is the pair (weight, sorted tuple of child keys) compared as
Python tuples.  Two trees have the same encoding iff they are isomorphic
as weighted rooted trees.  Examples: ``1``, ``0(1)``, ``0(1,1)``,
``1(1(2),3)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ResourceLimitExceeded, ValidationError
from .signatures import Check

Key = tuple  # (weight, tuple[Key, ...])


@dataclass(frozen=True)
class TreeLimits:
    k_max: int = 6
    max_depth: int | None = None
    max_trees: int = 500_000


DEFAULT_LIMITS = TreeLimits()


class BubbleTree:
    """Immutable weighted rooted tree.

    Vertices are arbitrary hashable ids.  Equality and hashing use the
    canonical key, so isomorphic trees compare equal.
    """

    __slots__ = ("_weights", "_parent", "_root", "_children", "_key")

    def __init__(self, weights: Mapping, parent: Mapping, root) -> None:
        self._weights = dict(weights)
        self._parent = dict(parent)
        self._root = root
        if root not in self._weights:
            raise ValidationError(f"root {root!r} is not a vertex")
        if root in self._parent:
            raise ValidationError("the root cannot have a parent")
        children: dict = {v: [] for v in self._weights}
        for child, par in self._parent.items():
            if child not in self._weights or par not in self._weights:
                raise ValidationError(f"edge ({par!r}, {child!r}) uses an unknown vertex")
            children[par].append(child)
        missing = set(self._weights) - set(self._parent) - {root}
        if missing:
            raise ValidationError(f"vertices without a parent: {sorted(map(repr, missing))}")
        seen = set()
        stack = [root]
        while stack:
            v = stack.pop()
            if v in seen:
                raise ValidationError("parent map contains a cycle")
            seen.add(v)
            stack.extend(children[v])
        if len(seen) != len(self._weights):
            raise ValidationError("parent map does not describe a single tree")
        self._children = {v: tuple(cs) for v, cs in children.items()}
        self._key: Key | None = None

    # construction helpers

    @classmethod
    def from_key(cls, key: Key) -> BubbleTree:
        weights: dict[int, int] = {}
        parent: dict[int, int] = {}

        def build(k: Key, par: int | None) -> None:
            vid = len(weights)
            weights[vid] = k[0]
            if par is not None:
                parent[vid] = par
            for c in k[1]:
                build(c, vid)

        build(key, None)
        return cls(weights, parent, 0)

    @classmethod
    def parse(cls, text: str) -> BubbleTree:
        return cls.from_key(parse_key(text))

    @classmethod
    def leaf(cls, weight: int) -> BubbleTree:
        return cls({0: weight}, {}, 0)

    # accessors

    @property
    def root(self):
        return self._root

    @property
    def vertices(self) -> tuple:
        return tuple(self._weights)

    def weight(self, v) -> int:
        return self._weights[v]

    def parent(self, v):
        return self._parent.get(v)

    def children(self, v) -> tuple:
        return self._children[v]

    def edges(self) -> list[tuple]:
        return [(p, c) for c, p in self._parent.items()]

    def __len__(self) -> int:
        return len(self._weights)

    def subtree_weight(self, v) -> int:
        return self._weights[v] + sum(self.subtree_weight(c) for c in self._children[v])

    @property
    def total_weight(self) -> int:
        return self.subtree_weight(self._root)

    def depth(self) -> int:
        def d(v) -> int:
            return 1 + max((d(c) for c in self._children[v]), default=-1)

        return d(self._root)

    def key(self, v=None) -> Key:
        if v is None:
            if self._key is None:
                self._key = self.key(self._root)
            return self._key
        return (self._weights[v], tuple(sorted(self.key(c) for c in self._children[v])))

    def encode(self) -> str:
        return encode_key(self.key())

    def relabel(self, mapping: Mapping) -> BubbleTree:
        return BubbleTree(
            {mapping[v]: w for v, w in self._weights.items()},
            {mapping[c]: mapping[p] for c, p in self._parent.items()},
            mapping[self._root],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BubbleTree):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"BubbleTree({self.encode()!r})"


def encode_key(key: Key) -> str:
    w, children = key
    if not children:
        return str(w)
    return f"{w}(" + ",".join(encode_key(c) for c in children) + ")"


def parse_key(text: str) -> Key:
    pos = 0
    s = text.replace(" ", "")

    def tree() -> Key:
        nonlocal pos
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise ValidationError(f"expected a weight at position {start} in {text!r}")
        w = int(s[start:pos])
        kids = []
        if pos < len(s) and s[pos] == "(":
            pos += 1
            kids.append(tree())
            while pos < len(s) and s[pos] == ",":
                pos += 1
                kids.append(tree())
            if pos >= len(s) or s[pos] != ")":
                raise ValidationError(f"unbalanced parentheses in {text!r}")
            pos += 1
        return (w, tuple(sorted(kids)))

    key = tree()
    if pos != len(s):
        raise ValidationError(f"trailing characters in {text!r}")
    return key


def validate(t: BubbleTree) -> Check:
    reasons = []
    for v in t.vertices:
        w = t.weight(v)
        if w < 0:
            reasons.append(f"vertex {v!r}: negative weight {w}")
            continue
        if v == t.root or w != 0:
            continue
        kids = t.children(v)
        if len(kids) < 2:
            reasons.append(f"ghost vertex {v!r} has {len(kids)} child(ren), needs >= 2")
        elif any(t.subtree_weight(c) <= 0 for c in kids):
            reasons.append(f"ghost vertex {v!r} has a child subtree of zero total weight")
    return Check.from_reasons(reasons)


def ghost_vertices(t: BubbleTree) -> frozenset:
    return frozenset(v for v in t.vertices if v != t.root and t.weight(v) == 0)


def symmetry_order(t: BubbleTree, v) -> int:
    """Order of the group permuting isomorphic child subtrees of v."""
    counts = Counter(t.key(c) for c in t.children(v))
    return math.prod(math.factorial(n) for n in counts.values())


def contract(t: BubbleTree, edge: tuple) -> BubbleTree:
    """Merge the child end of ``edge`` into its parent, adding weights."""
    par, child = edge
    if t.parent(child) != par or par is None:
        raise ValidationError(f"({par!r}, {child!r}) is not an edge")
    weights = {v: w for v, w in ((v, t.weight(v)) for v in t.vertices) if v != child}
    weights[par] += t.weight(child)
    parent = {}
    for c, p in ((c, t.parent(c)) for c in t.vertices if c != t.root and c != child):
        parent[c] = par if p == child else p
    return BubbleTree(weights, parent, t.root)


def contract_all(t: BubbleTree, edges: Iterable[tuple]) -> BubbleTree:
    """Contract a set of edges; the result does not depend on their order."""
    edges = list(edges)
    cur = t
    merged: dict = {}

    def find(v):
        while v in merged:
            v = merged[v]
        return v

    for par, child in edges:
        p = find(par)
        cur = contract(cur, (p, child))
        merged[child] = p
    return cur


def leq(t1: BubbleTree, t2: BubbleTree) -> bool:
    """True iff t2 arises from t1 by contracting a (possibly empty) edge set."""
    if t1.total_weight != t2.total_weight or len(t2) > len(t1):
        return False
    target = t2.key()
    seen = {t1.key()}
    frontier = [t1]
    while frontier:
        nxt = []
        for t in frontier:
            if t.key() == target:
                return True
            if len(t) <= len(t2):
                continue
            for e in t.edges():
                c = contract(t, e)
                k = c.key()
                if k not in seen:
                    seen.add(k)
                    nxt.append(c)
        frontier = nxt
    return False


# enumeration


@lru_cache(maxsize=None)
def _subtree_keys(w: int, depth: int | None) -> tuple[Key, ...]:
    """Keys of valid non-root subtrees with total weight w and height < depth."""
    if w <= 0 or depth == 0:
        return ()
    sub = None if depth is None else depth - 1
    out = []
    for r in range(w, -1, -1):
        # a ghost splits its weight over >= 2 parts, each strictly lighter
        min_parts, max_part = (2, w - 1) if r == 0 else (0, w - r)
        for forest in _forests(w - r, min_parts, sub, max_part):
            out.append((r, forest))
    return tuple(sorted(out))


def _forests(
    total: int, min_parts: int, depth: int | None, max_part: int | None = None
) -> list[tuple[Key, ...]]:
    """Multisets (sorted tuples) of subtree keys with the given total weight."""
    if total == 0:
        return [()] if min_parts == 0 else []
    top = total if max_part is None else min(total, max_part)
    pool = [k for w in range(1, top + 1) for k in _subtree_keys(w, depth)]
    weight = {k: _key_weight(k) for k in pool}
    out: list[tuple[Key, ...]] = []

    def rec(start: int, remaining: int, acc: list[Key]) -> None:
        if remaining == 0:
            if len(acc) >= min_parts:
                out.append(tuple(sorted(acc)))
            return
        for i in range(start, len(pool)):
            k = pool[i]
            if weight[k] <= remaining:
                acc.append(k)
                rec(i, remaining - weight[k], acc)
                acc.pop()

    rec(0, total, [])
    return out


@lru_cache(maxsize=None)
def _key_weight(key: Key) -> int:
    return key[0] + sum(_key_weight(c) for c in key[1])


def enumerate_keys(k: int, limits: TreeLimits = DEFAULT_LIMITS) -> list[Key]:
    if k < 1:
        raise ValidationError(f"enumeration needs k >= 1, got {k}")
    if k > limits.k_max:
        raise ResourceLimitExceeded(f"k={k} exceeds k_max={limits.k_max}")
    depth = limits.max_depth
    sub = None if depth is None else depth
    keys = []
    for r in range(k, -1, -1):
        for forest in _forests(k - r, 0, sub):
            keys.append((r, forest))
            if len(keys) > limits.max_trees:
                raise ResourceLimitExceeded(f"more than {limits.max_trees} trees of weight {k}")
    return sorted(set(keys))


def enumerate_trees(k: int, limits: TreeLimits = DEFAULT_LIMITS) -> list[BubbleTree]:
    """One representative per isomorphism class of bubble trees of total weight k."""
    return [BubbleTree.from_key(key) for key in enumerate_keys(k, limits)]
