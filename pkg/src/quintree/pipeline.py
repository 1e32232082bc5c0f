"""Deciding whether a quintet system comes from a tree, and amalgamating
5-leaf trees into a supertree."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from typing import Iterable

from .errors import ConflictError, IncompleteCoverageError, InvariantViolation, PreconditionError
from .quartets import reconstruct_from_quartets
from .quintets import check_tts, derived_quartet_system
from .rules import Certificate
from .systems import QuintetSystem
from .tree import PhyloTree, quintet_of, quintet_system_of, restrict, same_topology

MAX_MISSING_SHOWN = 20


@dataclass(frozen=True)
class AmalgamationResult:
    """Exactly one of ``tree`` and ``certificate`` is set."""

    tree: PhyloTree | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        if (self.tree is None) == (self.certificate is None):
            raise ValueError("set exactly one of tree and certificate")

    @property
    def treelike(self) -> bool:
        return self.tree is not None


def is_treelike(q: QuintetSystem) -> AmalgamationResult:
    """Check TTS, derive the quartet system, rebuild the tree, verify.

    On TTS input the returned tree's quintet system is re-checked against
    ``q``; a mismatch raises InvariantViolation rather than returning a
    wrong tree.
    """
    if len(q.universe) < 5:
        raise PreconditionError("need at least 5 taxa")
    cert = check_tts(q)
    if cert is not None:
        return AmalgamationResult(certificate=cert)
    s = derived_quartet_system(q, check=False)
    tree = reconstruct_from_quartets(s)
    if quintet_system_of(tree) != q:
        raise InvariantViolation(f"reconstructed {tree} does not induce the input system")
    return AmalgamationResult(tree=tree)


def quintet_system_from_trees(trees: Iterable[PhyloTree]) -> QuintetSystem:
    """Assemble one quintet per input tree, refusing gaps and conflicts."""
    trees = list(trees)
    by_support: dict = {}
    for i, t in enumerate(trees):
        if len(t) != 5:
            raise PreconditionError(f"input tree {i} has {len(t)} leaves, expected 5")
        prev = by_support.get(t.leaf_set)
        if prev is not None and not same_topology(prev, t):
            raise ConflictError(
                f"conflicting trees on {{{','.join(t.taxa)}}}: {prev} vs {t}"
            )
        by_support[t.leaf_set] = t
    universe = sorted(frozenset().union(*by_support)) if by_support else []
    if not by_support:
        raise PreconditionError("no input trees")
    missing = (y for y in combinations(universe, 5) if frozenset(y) not in by_support)
    shown = list(islice(missing, MAX_MISSING_SHOWN))
    if shown:
        count = len(shown) + sum(1 for _ in missing)
        raise IncompleteCoverageError(shown, count)
    return QuintetSystem(
        (quintet_of(t, t.leaf_set) for t in by_support.values()), universe=universe
    )


def amalgamate_trees(trees: Iterable[PhyloTree]) -> AmalgamationResult:
    """Supertree of 5-leaf trees covering every 5-subset of their union."""
    trees = list(trees)
    q = quintet_system_from_trees(trees)
    result = is_treelike(q)
    if result.tree is not None:
        for t in trees:
            if not same_topology(restrict(result.tree, t.leaf_set), t):
                raise InvariantViolation(f"supertree does not display input {t}")
    return result
