"""Unrooted phylogenetic X-trees.

A :class:`PhyloTree` is a finite tree without degree-2 vertices whose leaves
carry distinct taxon labels.  It is stored as adjacency over integer vertex
ids and is immutable.  Two trees compare equal when they have the same leaf
set and the same splits, i.e. when they are isomorphic by a label-preserving
map.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import NewickError
from .systems import TAXON_RE, Quartet, QuartetSystem, Quintet, QuintetSystem


@dataclass(frozen=True)
class Split:
    """A bipartition of the leaf set; ``side_a`` holds the smallest taxon."""

    side_a: frozenset
    side_b: frozenset

    @classmethod
    def of(cls, part: Iterable[str], universe: Iterable[str]) -> "Split":
        part = frozenset(part)
        universe = frozenset(universe)
        other = universe - part
        if not part or not other or not part <= universe:
            raise ValueError("a split needs two nonempty complementary sides")
        if min(universe) in part:
            return cls(part, other)
        return cls(other, part)

    @property
    def is_trivial(self) -> bool:
        return len(self.side_a) == 1 or len(self.side_b) == 1

    def __str__(self):
        return f"{','.join(sorted(self.side_a))}|{','.join(sorted(self.side_b))}"


class PhyloTree:
    """Immutable unrooted tree with labelled leaves and no degree-2 vertices.

    Build one with :func:`parse_newick`, :meth:`from_nested` or
    :meth:`from_edges`; the constructor itself assumes already-normalised
    adjacency.
    """

    __slots__ = ("_adj", "_leaf", "_label", "__dict__")

    def __init__(self, adj: tuple, labels: dict):
        object.__setattr__(self, "_adj", adj)
        object.__setattr__(self, "_label", dict(labels))
        object.__setattr__(self, "_leaf", {t: v for v, t in labels.items()})
        _validate(adj, self._label)

    def __setattr__(self, name, value):
        raise AttributeError("PhyloTree is immutable")

    def __reduce__(self):
        return PhyloTree, (self._adj, self._label)

    # -- construction ------------------------------------------------------

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], labels: dict) -> "PhyloTree":
        """Build from arbitrary hashable vertex ids; degree-2 unlabelled
        vertices are suppressed."""
        adj: dict = {v: set() for v in labels}
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return _normalise(adj, labels)

    @classmethod
    def from_nested(cls, nested) -> "PhyloTree":
        """Build from nested tuples/lists of taxon strings, read as a rooted
        tree and then unrooted (a degree-2 root is suppressed)."""
        edges, labels = [], {}
        counter = iter(range(1 << 62))

        def walk(node):
            v = next(counter)
            if isinstance(node, str):
                labels[v] = str(node)
                return v
            kids = [walk(c) for c in node]
            if not kids:
                raise ValueError("empty internal node")
            edges.extend((v, k) for k in kids)
            return v

        root = walk(nested)
        adj: dict = {root: set()}
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for v in labels:
            adj.setdefault(v, set())
        return _normalise(adj, labels)

    # -- basic queries -----------------------------------------------------

    @property
    def taxa(self) -> tuple[str, ...]:
        return tuple(sorted(self._leaf))

    @property
    def leaf_set(self) -> frozenset:
        return frozenset(self._leaf)

    def __len__(self):
        return len(self._leaf)

    @property
    def n_vertices(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def leaf(self, taxon: str) -> int:
        return self._leaf[taxon]

    def label(self, v: int):
        return self._label.get(v)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self._adj) for v in nb if u < v]

    @cached_property
    def splits(self) -> frozenset:
        return frozenset(_compute_splits(self))

    def __eq__(self, other):
        if not isinstance(other, PhyloTree):
            return NotImplemented
        return self.leaf_set == other.leaf_set and self.splits == other.splits

    def __hash__(self):
        return hash((self.leaf_set, self.splits))

    def __repr__(self):
        return f"PhyloTree({to_newick(self)!r})"

    def __str__(self):
        return to_newick(self)


def _validate(adj: tuple, labels: dict) -> None:
    n = len(adj)
    if n == 0:
        raise ValueError("a tree needs at least one leaf")
    n_edges = sum(len(nb) for nb in adj) // 2
    if n_edges != n - 1:
        raise ValueError("not a tree: wrong edge count")
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise ValueError("not a tree: disconnected")
    for v, nb in enumerate(adj):
        d = len(nb)
        if d == 2:
            raise ValueError("degree-2 vertex")
        if d <= 1 and v not in labels:
            raise ValueError("unlabelled leaf")
        if d > 1 and v in labels:
            raise ValueError(f"label {labels[v]!r} on an internal vertex")
    if len(set(labels.values())) != len(labels):
        raise ValueError("duplicate leaf label")


def _normalise(adj: dict, labels: dict) -> PhyloTree:
    """Suppress unlabelled degree-2 vertices and relabel ids to 0..n-1."""
    adj = {v: set(nb) for v, nb in adj.items()}
    for v in list(adj):
        if v in adj and v not in labels and len(adj[v]) == 2:
            u, w = adj.pop(v)
            adj[u].discard(v)
            adj[w].discard(v)
            adj[u].add(w)
            adj[w].add(u)
    if len(set(labels.values())) != len(labels):
        raise ValueError("duplicate leaf label")
    # deterministic ids: leaves in taxon order, then internal vertices by first reach
    order = sorted(labels, key=lambda v: labels[v])
    index = {v: i for i, v in enumerate(order)}
    stack = list(reversed(order))
    while stack:
        u = stack.pop()
        for w in sorted(adj[u], key=lambda x: index.get(x, len(index))):
            if w not in index:
                index[w] = len(index)
                stack.append(w)
    for v in adj:
        if v not in index:
            index[v] = len(index)  # disconnected pieces; validation will reject
    new_adj = [()] * len(index)
    for v, nb in adj.items():
        new_adj[index[v]] = tuple(sorted(index[w] for w in nb))
    return PhyloTree(tuple(new_adj), {index[v]: t for v, t in labels.items()})


def _compute_splits(t: PhyloTree) -> list[Split]:
    if len(t._adj) < 2:
        return []
    universe = t.leaf_set
    root = 0
    parent = {root: None}
    order = [root]
    for u in order:
        for w in t._adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    below: dict = {}
    for u in reversed(order):
        s = {t._label[u]} if u in t._label else set()
        for w in t._adj[u]:
            if parent.get(w) == u:
                s |= below[w]
        below[u] = frozenset(s)
    return [Split.of(below[u], universe) for u in order if parent[u] is not None]


def splits_of(t: PhyloTree) -> frozenset:
    """The split induced by each edge, trivial ones included."""
    return t.splits


def same_topology(t1: PhyloTree, t2: PhyloTree) -> bool:
    if t1.leaf_set != t2.leaf_set:
        raise ValueError("trees have different leaf sets")
    return t1.splits == t2.splits


# -- Newick -----------------------------------------------------------------

_META = set("(),;:")


def parse_newick(text: str) -> PhyloTree:
    """Parse one ``;``-terminated Newick expression.

    Branch lengths are read and discarded, as are internal node labels.
    The rooting is forgotten: the root is suppressed when it has degree 2.
    """
    trees = read_newick_trees(text)
    if len(trees) != 1:
        raise NewickError(f"expected one tree, found {len(trees)}", 1, 1)
    return trees[0]


def read_newick_trees(text: str) -> list[PhyloTree]:
    """Parse every tree in a multi-tree Newick text (one or more ``;``)."""
    out = []
    reader = _NewickReader(text)
    while True:
        reader.skip_ws()
        if reader.pos >= len(text):
            break
        start_line, start_col = reader.where(reader.pos)
        nested = reader.read_one()
        try:
            out.append(PhyloTree.from_nested(nested))
        except ValueError as exc:
            raise NewickError(str(exc), start_line, start_col) from None
    if not out:
        raise NewickError("no tree found", 1, 1)
    return out


class _NewickReader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.pos
            if pos >= len(self.text):  # at end of input, point just past the last token
                pos = len(self.text.rstrip())
        line, col = self.where(pos)
        return NewickError(msg, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def read(self):
        nested = self.read_one()
        if self.peek():
            raise self.error("trailing text after ';'")
        return nested

    def read_one(self):
        node = self.subtree()
        if self.peek() != ";":
            raise self.error("expected ';'" if self.peek() else "missing terminating ';'")
        self.pos += 1
        seen = set()
        _check_labels(node, seen, self)
        return node

    def subtree(self):
        if self.peek() == "(":
            self.pos += 1
            kids = [self.subtree()]
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.subtree())
            if self.peek() != ")":
                raise self.error("expected ',' or ')'")
            self.pos += 1
            self.label(optional=True)  # internal label, ignored
            self.length()
            return tuple(kids)
        start = self.pos
        name = self.label(optional=False)
        self.length()
        return _Leaf(name, start)

    def label(self, optional: bool):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and not self.text[self.pos].isspace() and self.text[self.pos] not in _META:
            self.pos += 1
        name = self.text[start:self.pos]
        if not name:
            if optional:
                return None
            raise self.error("empty label", start)
        if not TAXON_RE.match(name):
            raise self.error(f"invalid label {name!r}", start)
        return name

    def length(self):
        if self.peek() != ":":
            return
        self.pos += 1
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and not self.text[self.pos].isspace() and self.text[self.pos] not in _META:
            self.pos += 1
        try:
            float(self.text[start:self.pos])
        except ValueError:
            raise self.error("bad branch length", start) from None


class _Leaf(str):
    __slots__ = ("pos",)

    def __new__(cls, name, pos):
        s = super().__new__(cls, name)
        s.pos = pos
        return s


def _check_labels(node, seen, reader):
    if isinstance(node, str):
        if node in seen:
            raise reader.error(f"duplicate leaf label {str(node)!r}", node.pos)
        seen.add(node)
        return
    for c in node:
        _check_labels(c, seen, reader)


def to_newick(t: PhyloTree) -> str:
    """Canonical Newick, children ordered by their smallest taxon.

    The root is the centre of the tree (the internal vertex of least
    eccentricity).  When two adjacent vertices tie, the one on the side of
    the smallest taxon wins.
    """
    taxa = t.taxa
    if len(taxa) == 1:
        return f"{taxa[0]};"
    if len(taxa) == 2:
        return f"({taxa[0]},{taxa[1]});"
    text, _ = _render(t, _centre(t), None)
    return text + ";"


def _centre(t: PhyloTree) -> int:
    internal = [v for v in range(t.n_vertices) if t.label(v) is None]
    ecc = {v: max(_distances(t, v)[t.leaf(x)] for x in t.taxa) for v in internal}
    best = min(ecc.values())
    centre = [v for v in internal if ecc[v] == best]
    if len(centre) == 1:
        return centre[0]
    d = _distances(t, t.leaf(t.taxa[0]))
    return min(centre, key=lambda v: d[v])


def _distances(t: PhyloTree, src: int) -> dict:
    dist = {src: 0}
    queue = [src]
    for u in queue:
        for w in t.neighbors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _render(t: PhyloTree, v: int, parent):
    lab = t.label(v)
    if lab is not None:
        return lab, lab
    parts = [_render(t, w, v) for w in t.neighbors(v) if w != parent]
    parts.sort(key=lambda p: p[1])
    return "(" + ",".join(p[0] for p in parts) + ")", parts[0][1]


# -- restriction and cherries ------------------------------------------------

def restrict(t: PhyloTree, s: Iterable[str]) -> PhyloTree:
    """The minimal subtree spanning the leaves in ``s``, with degree-2
    vertices suppressed."""
    s = frozenset(s)
    if not s:
        raise ValueError("cannot restrict to the empty set")
    if not s <= t.leaf_set:
        raise ValueError(f"taxa not in tree: {sorted(s - t.leaf_set)}")
    adj = {v: set(nb) for v, nb in enumerate(t._adj)}
    keep = {t.leaf(x) for x in s}
    queue = [v for v, nb in adj.items() if len(nb) <= 1 and v not in keep]
    while queue:
        v = queue.pop()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in keep:
                queue.append(w)
    labels = {v: t.label(v) for v in keep}
    return _normalise(adj, labels)


def complete_cherries(t: PhyloTree) -> set[frozenset]:
    """Maximal sets of at least two leaves hanging off one common vertex."""
    out = set()
    for v in range(t.n_vertices):
        if t.label(v) is not None:
            continue
        group = frozenset(t.label(w) for w in t.neighbors(v) if t.label(w) is not None)
        if len(group) >= 2:
            out.add(group)
    return out


def quartet_of(t: PhyloTree, y: Iterable[str]) -> Quartet:
    y = frozenset(y)
    if len(y) != 4:
        raise ValueError("need a 4-subset")
    cherries = complete_cherries(restrict(t, y))
    if len(cherries) == 1:
        return Quartet.of(y)
    return Quartet.of(*cherries)


def quintet_of(t: PhyloTree, y: Iterable[str]) -> Quintet:
    y = frozenset(y)
    if len(y) != 5:
        raise ValueError("need a 5-subset")
    cherries = complete_cherries(restrict(t, y))
    covered = frozenset().union(*cherries)
    rest = y - covered
    return Quintet.of(*cherries, *([rest] if rest else []))


def _nontrivial_within(t: PhyloTree, y: frozenset) -> set[frozenset]:
    out = set()
    for sp in t.splits:
        a, b = sp.side_a & y, sp.side_b & y
        if len(a) >= 2 and len(b) >= 2:
            out.add(a if min(y) in a else b)
    return out


def _quartet_from_splits(t: PhyloTree, y: frozenset) -> Quartet:
    parts = _nontrivial_within(t, y)
    if not parts:
        return Quartet.of(y)
    (a,) = parts
    return Quartet.of(a, y - a)


def _quintet_from_splits(t: PhyloTree, y: frozenset) -> Quintet:
    # nontrivial splits of a 5-set are 2|3; their 2-sides are the pairs
    pairs = set()
    for part in _nontrivial_within(t, y):
        pairs.add(part if len(part) == 2 else y - part)
    if not pairs:
        return Quintet.of(y)
    if len(pairs) == 1:
        (p,) = pairs
        return Quintet.of(p, y - p)
    p1, p2 = pairs
    return Quintet.of(p1, p2, y - p1 - p2)


def quartet_system_of(t: PhyloTree) -> QuartetSystem:
    """One quartet per 4-subset of the leaf set."""
    if len(t) < 4:
        raise ValueError("need at least 4 leaves")
    return QuartetSystem(
        (_quartet_from_splits(t, frozenset(y)) for y in combinations(t.taxa, 4)),
        universe=t.leaf_set,
    )


def quintet_system_of(t: PhyloTree) -> QuintetSystem:
    """One quintet per 5-subset of the leaf set."""
    if len(t) < 5:
        raise ValueError("need at least 5 leaves")
    return QuintetSystem(
        (_quintet_from_splits(t, frozenset(y)) for y in combinations(t.taxa, 5)),
        universe=t.leaf_set,
    )
