"""Trees over modes: enumeration, centers, labelings and bipartitions.

A labeled tree fixes which two-mode marginals enter a criterion.  Labels are
chosen so that every vertex except the root has exactly one neighbour with a
larger label; the criteria rely on that structure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _published
from .errors import (
    InvalidRootError,
    InvalidSplitError,
    InvalidTreeError,
    SizeLimitError,
    StructuralError,
    UnknownFixtureError,
    UnsupportedOrderError,
)

MAX_ENUMERATION_ORDER = 12
MAX_BIPARTITION_MODES = 22


@dataclass(frozen=True)
class Tree:
    """Unlabeled tree on vertices 1..order, stored as sorted (u, v) pairs with u < v."""

    order: int
    edges: tuple

    def __post_init__(self):
        n = int(self.order)
        if n < 2:
            raise InvalidTreeError("a tree needs at least two vertices")
        edges = []
        for e in self.edges:
            u, v = (int(a) for a in e)
            if u == v or not (1 <= u <= n and 1 <= v <= n):
                raise InvalidTreeError(f"bad edge ({u}, {v}) for order {n}")
            edges.append((min(u, v), max(u, v)))
        edges = tuple(sorted(edges))
        if len(edges) != n - 1 or len(set(edges)) != n - 1:
            raise InvalidTreeError(f"a tree of order {n} has exactly {n - 1} distinct edges")
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "edges", edges)
        # n-1 edges + connected => acyclic
        seen = _component(self.neighbors, 1)
        if len(seen) != n:
            raise InvalidTreeError("edges do not form a connected graph")

    @cached_property
    def neighbors(self) -> dict:
        nb = {v: [] for v in range(1, self.order + 1)}
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return {v: tuple(sorted(ws)) for v, ws in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.order, self.order), dtype=int)
        for u, v in self.edges:
            a[u - 1, v - 1] = a[v - 1, u - 1] = 1
        return a

    def relabel(self, mapping) -> "Tree":
        """Image of the tree under the vertex map ``v -> mapping[v]``."""
        return Tree(self.order, tuple((mapping[u], mapping[v]) for u, v in self.edges))

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> "Tree":
        edges = [tuple(e) for e in edges]
        order = max((max(e) for e in edges), default=0)
        return cls(order, tuple(edges))

    @classmethod
    def from_text(cls, text: str) -> "Tree":
        edges = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidTreeError(f"line {lineno}: expected 'u v', got {line!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise InvalidTreeError(f"line {lineno}: vertices must be integers") from None
        return cls.from_edges(edges)


def _component(neighbors, start):
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in neighbors[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


class Center(NamedTuple):
    """Either a single central vertex (``vertices`` of length 1) or a central edge."""

    vertices: tuple

    @property
    def is_vertex(self) -> bool:
        return len(self.vertices) == 1


def find_center(tree: Tree) -> Center:
    """Center by repeated deletion of all current leaves."""
    degree = {v: tree.degree(v) for v in tree.neighbors}
    remaining = set(degree)
    layer = [v for v, d in degree.items() if d <= 1]
    while len(remaining) > 2:
        nxt = []
        for leaf in layer:
            remaining.discard(leaf)
            for w in tree.neighbors[leaf]:
                if w in remaining:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return Center(tuple(sorted(remaining)))


def _rooted_codes(tree: Tree, root: int, blocked: int | None = None):
    """AHU codes and subtree sizes for `tree` hung from `root`.

    `blocked` removes one neighbour of the root, which is how a half of a
    tree cut at an edge is described.
    """
    parent = {root: None}
    order = [root]
    for v in order:
        for w in tree.neighbors[v]:
            if w != parent[v] and not (v == root and w == blocked):
                parent[w] = v
                order.append(w)
    children = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)
    code, size = {}, {}
    for v in reversed(order):
        kids = children[v]
        size[v] = 1 + sum(size[c] for c in kids)
        code[v] = "(" + "".join(sorted(code[c] for c in kids)) + ")"
    return code, size, children


def ahu_code(tree: Tree, root: int) -> str:
    """Canonical string of the tree rooted at `root` (equal iff rooted-isomorphic)."""
    return _rooted_codes(tree, root)[0][root]


def canonical_code(tree: Tree) -> str:
    """Isomorphism invariant of an unrooted tree, built from its center."""
    c = find_center(tree)
    if c.is_vertex:
        return ahu_code(tree, c.vertices[0])
    u, v = c.vertices
    cu = _rooted_codes(tree, u, blocked=v)[0][u]
    cv = _rooted_codes(tree, v, blocked=u)[0][v]
    return "[" + "".join(sorted((cu, cv))) + "]"


def _tree_from_code(code: str) -> Tree:
    """Build a tree from a rooted AHU code, numbering vertices in preorder."""
    edges, stack, count = [], [], 0
    for ch in code:
        if ch == "(":
            count += 1
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
        elif ch == ")":
            stack.pop()
    return Tree(count, tuple(edges))


def _representative(tree: Tree) -> Tree:
    """Deterministic isomorphic copy: preorder numbering from the center."""
    c = find_center(tree)
    if c.is_vertex:
        return _tree_from_code(ahu_code(tree, c.vertices[0]))
    u, v = c.vertices
    cu = _rooted_codes(tree, u, blocked=v)[0][u]
    cv = _rooted_codes(tree, v, blocked=u)[0][v]
    hi, lo = sorted((cu, cv), reverse=True)
    # hang the `lo` half below the root of the `hi` half
    return _tree_from_code(hi[:-1] + lo + ")")


def enumerate_trees(order: int) -> list[Tree]:
    """One tree per isomorphism class, sorted by canonical code."""
    if not 2 <= order <= MAX_ENUMERATION_ORDER:
        raise UnsupportedOrderError(
            f"order must lie in 2..{MAX_ENUMERATION_ORDER}, got {order}"
        )
    layer = {canonical_code(Tree(2, ((1, 2),))): Tree(2, ((1, 2),))}
    for n in range(3, order + 1):
        grown = {}
        for t in layer.values():
            for v in range(1, n):
                bigger = Tree(n, t.edges + ((v, n),))
                key = canonical_code(bigger)
                if key not in grown:
                    grown[key] = bigger
        layer = grown
    return [_representative(layer[k]) for k in sorted(layer)]


@dataclass(frozen=True)
class LabeledTree:
    """A tree together with a bijection vertex -> label in 1..N.

    ``labeling[v - 1]`` is the label of vertex ``v``.  Everything used by the
    criteria (edges, adjacency, parents) is expressed in label space.
    """

    tree: Tree
    labeling: tuple

    def __post_init__(self):
        lab = tuple(int(x) for x in self.labeling)
        if sorted(lab) != list(range(1, self.tree.order + 1)):
            raise InvalidTreeError("labeling must be a bijection onto 1..N")
        object.__setattr__(self, "labeling", lab)

    @classmethod
    def identity(cls, tree: Tree) -> "LabeledTree":
        return cls(tree, tuple(range(1, tree.order + 1)))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> "LabeledTree":
        """Edges given directly in label space."""
        return cls.identity(Tree.from_edges(edges))

    @property
    def order(self) -> int:
        return self.tree.order

    @cached_property
    def edges(self) -> tuple:
        """Label-space edges as (j, i) with j > i, sorted by i then j."""
        lab = self.labeling
        out = [(max(lab[u - 1], lab[v - 1]), min(lab[u - 1], lab[v - 1])) for u, v in self.tree.edges]
        return tuple(sorted(out, key=lambda e: (e[1], e[0])))

    @property
    def root(self) -> int:
        """Original vertex carrying label N."""
        return self.labeling.index(self.order) + 1

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.order, self.order), dtype=int)
        for j, i in self.edges:
            a[j - 1, i - 1] = a[i - 1, j - 1] = 1
        return a

    def parents(self) -> dict:
        """Label i -> the unique larger neighbouring label, for i < N.

        Only meaningful for labelings that pass `validate_labeling`.
        """
        check = validate_labeling(self)
        if not check.ok:
            raise StructuralError(check.column)
        return {i: j for j, i in self.edges}

    def to_text(self) -> str:
        return "".join(f"{i} {j}\n" for j, i in self.edges)


class LabelCheck(NamedTuple):
    ok: bool
    column: int | None = None

    def __bool__(self):
        return self.ok


def validate_labeling(lt: LabeledTree) -> LabelCheck:
    """Every column segment A[i+1:N, i] must contain exactly one nonzero."""
    a = lt.adjacency()
    n = lt.order
    for i in range(n - 1):
        if int(a[i + 1:, i].sum()) != 1:
            return LabelCheck(False, i + 1)
    return LabelCheck(True)


def _default_root(tree: Tree, center: Center) -> int:
    if center.is_vertex:
        return center.vertices[0]
    u, v = center.vertices
    cu, su, _ = _rooted_codes(tree, u, blocked=v)
    cv, sv, _ = _rooted_codes(tree, v, blocked=u)
    # Root at the endpoint whose far side is the bigger half, so that the
    # first child under the root carries the larger branch.
    key_u = (sv[v], cv[v], -u)
    key_v = (su[u], cu[u], -v)
    return u if key_u >= key_v else v


def reverse_level_order_label(tree: Tree, root_choice: int | None = None) -> LabeledTree:
    """Label the root N and continue downwards level by level.

    Children of a vertex are visited by descending subtree size, then
    descending AHU code, then ascending vertex id.
    """
    center = find_center(tree)
    if root_choice is None:
        root = _default_root(tree, center)
    else:
        root = int(root_choice)
        if root not in center.vertices:
            raise InvalidRootError(
                f"root {root} is not a center vertex or endpoint of the center edge {center.vertices}"
            )
    code, size, children = _rooted_codes(tree, root)
    for v in children:
        children[v].sort(key=lambda c: (-size[c], _desc(code[c]), c))

    labeling = [0] * tree.order
    label = tree.order
    queue = deque([root])
    while queue:
        v = queue.popleft()
        labeling[v - 1] = label
        label -= 1
        queue.extend(children[v])
    lt = LabeledTree(tree, tuple(labeling))
    check = validate_labeling(lt)
    if not check.ok:
        raise StructuralError(check.column)
    return lt


class _desc(str):
    """String wrapper that sorts in reverse order."""

    def __lt__(self, other):
        return str.__gt__(self, other)

    def __gt__(self, other):
        return str.__lt__(self, other)


def standard_linear_label(order: int) -> LabeledTree:
    """Path 1-2-...-N labeled along the path."""
    if order < 2:
        raise UnsupportedOrderError("a path needs at least two vertices")
    return LabeledTree.identity(Tree(order, tuple((i, i + 1) for i in range(1, order))))


@dataclass(frozen=True)
class Bipartition:
    """Split I|J of modes 1..N in canonical form (mode 1 lies in I)."""

    modes: int
    side_I: tuple

    def __post_init__(self):
        n = int(self.modes)
        side = tuple(sorted(set(int(m) for m in self.side_I)))
        if len(side) != len(tuple(self.side_I)):
            raise InvalidSplitError("duplicate modes in split")
        if not side or side[0] < 1 or side[-1] > n:
            raise InvalidSplitError(f"split modes must lie in 1..{n}")
        if len(side) == n:
            raise InvalidSplitError("both sides of a split must be nonempty")
        if side[0] != 1:
            raise InvalidSplitError("canonical splits contain mode 1 on side I")
        object.__setattr__(self, "modes", n)
        object.__setattr__(self, "side_I", side)

    @classmethod
    def of(cls, modes: int, side: Iterable[int]) -> "Bipartition":
        """Canonicalize an arbitrary proper subset (either side may be given)."""
        side = set(int(m) for m in side)
        if 1 not in side:
            side = set(range(1, modes + 1)) - side
        return cls(modes, tuple(side))

    @property
    def side_J(self) -> tuple:
        return tuple(m for m in range(1, self.modes + 1) if m not in self.side_I)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.modes)
        m[[i - 1 for i in self.side_I]] = 1.0
        return m

    def __str__(self):
        join = "" if self.modes < 10 else ","
        return join.join(map(str, self.side_I)) + "|" + join.join(map(str, self.side_J))


def bipartitions(modes: int) -> list[Bipartition]:
    """All 2^(N-1) - 1 canonical splits, side I in lexicographic order."""
    if modes < 2:
        raise InvalidSplitError("splits need at least two modes")
    if modes > MAX_BIPARTITION_MODES:
        raise SizeLimitError(f"refusing to enumerate splits of more than {MAX_BIPARTITION_MODES} modes")
    rest = range(2, modes + 1)
    sides = [(1,) + c for k in range(modes - 1) for c in combinations(rest, k)]
    return [Bipartition(modes, s) for s in sorted(sides)]


def split_masks(modes: int) -> np.ndarray:
    """0/1 matrix with one row per split in `bipartitions` order."""
    return np.array([b.mask() for b in bipartitions(modes)])


PUBLISHED_TREE_KEYS = tuple(_published.TREES)


def published_tree(key: str) -> LabeledTree:
    """Labeled tree from the catalogue of all trees with 3 to 6 vertices."""
    key = str(key)
    if key not in _published.TREES:
        raise UnknownFixtureError(f"unknown tree {key!r}; known: {', '.join(PUBLISHED_TREE_KEYS)}")
    return LabeledTree.from_edges(_published.TREES[key])


def resolve_tree(spec) -> LabeledTree:
    """Accept a LabeledTree, a catalogue key, or a label-space edge list."""
    if isinstance(spec, LabeledTree):
        return spec
    if isinstance(spec, str):
        return published_tree(spec)
    return LabeledTree.from_edges(spec)
