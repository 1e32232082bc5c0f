"""Exhaustive enumeration of phylogenetic X-trees for small X.

Trees are grown by inserting taxa one at a time into a 3-star on the first
three.  A new leaf either subdivides an existing edge or hangs off an
existing internal vertex.  Deleting the last leaf inverts exactly one of
those moves, so every tree is produced once; a split-set check guards that
claim anyway.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InvariantViolation
from .tree import PhyloTree

MIN_TAXA = 3
MAX_TAXA = 8


def _grow(edges: list, n_leaves: int, next_internal: int, target: int):
    if n_leaves == target:
        yield edges
        return
    leaf = n_leaves
    for i, (u, v) in enumerate(edges):
        w = next_internal
        rest = edges[:i] + edges[i + 1:]
        yield from _grow(rest + [(u, w), (w, v), (w, leaf)], n_leaves + 1, next_internal + 1, target)
    internal = sorted({x for e in edges for x in e if x >= target})
    for v in internal:
        yield from _grow(edges + [(v, leaf)], n_leaves + 1, next_internal, target)


def enumerate_trees(x: Iterable[str]) -> Iterator[PhyloTree]:
    """Every phylogenetic x-tree exactly once, in a fixed order.

    Raises ValueError unless 3 <= |x| <= 8.
    """
    taxa = sorted(set(x))
    n = len(taxa)
    if not MIN_TAXA <= n <= MAX_TAXA:
        raise ValueError(f"enumeration supports {MIN_TAXA}..{MAX_TAXA} taxa, got {n}")
    hub = n  # internal vertex ids start at n
    start = [(hub, 0), (hub, 1), (hub, 2)]
    labels = {i: t for i, t in enumerate(taxa)}
    seen = set()
    for edges in _grow(start, 3, n + 1, n):
        tree = PhyloTree.from_edges(edges, labels)
        key = tree.splits
        if key in seen:
            raise InvariantViolation("leaf insertion produced a duplicate tree")
        seen.add(key)
        yield tree


def count_trees(n: int) -> int:
    return sum(1 for _ in enumerate_trees([f"t{i}" for i in range(n)]))
