"""Brute-force ground truth for small universes.

Realizability is decided by walking every tree on the universe and
comparing induced quintet systems; no axiom checker is consulted.  The
induced systems are computed through :func:`restrict`, not the split-based
shortcut the rest of the package uses, so the two paths check each other.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain, combinations, islice, repeat

from .enumeration import enumerate_trees
from .errors import QuintreeError
from .pipeline import is_treelike
from .systems import QuintetSystem, all_quintets
from .tree import PhyloTree, Split, quintet_of

ORACLE_SIZES = (5, 6, 7)
MAX_WITNESSES = 10


def _induced(t: PhyloTree) -> QuintetSystem:
    return QuintetSystem(
        (quintet_of(t, y) for y in combinations(t.taxa, 5)), universe=t.taxa
    )


@lru_cache(maxsize=None)
def _index(universe: tuple) -> dict:
    return {_induced(t): t for t in enumerate_trees(universe)}


def realizable_by_tree(q: QuintetSystem) -> PhyloTree | None:
    """The tree on ``q``'s universe inducing exactly ``q``, or None."""
    n = len(q.universe)
    if n not in ORACLE_SIZES:
        raise ValueError(f"oracle supports universes of 5..7 taxa, got {n}")
    return _index(q.taxa).get(q)


def tree_induced_systems(universe) -> list[QuintetSystem]:
    """Quintet systems of every tree on ``universe``, in enumeration order."""
    return list(_index(tuple(sorted(universe))))


# -- second enumeration strategy ---------------------------------------------

def compatible_split_sets(universe) -> list[frozenset]:
    """Every set of pairwise compatible nontrivial splits of ``universe``.

    Such sets are in bijection with the trees on ``universe``, which makes
    this an enumeration that shares no code with leaf insertion.
    """
    taxa = sorted(universe)
    first, rest = taxa[0], taxa[1:]
    splits = []
    for k in range(1, len(rest) + 1):
        for side in combinations(rest, k):
            a = frozenset((first,) + side)
            b = frozenset(taxa) - a
            if len(a) >= 2 and len(b) >= 2:
                splits.append(Split(a, b))

    def compatible(s, t):
        return any(not (p & q) for p in (s.side_a, s.side_b) for q in (t.side_a, t.side_b))

    out = []

    def grow(i, chosen):
        out.append(frozenset(chosen))
        for j in range(i, len(splits)):
            s = splits[j]
            if all(compatible(s, c) for c in chosen):
                chosen.append(s)
                grow(j + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


def trivial_splits(universe) -> frozenset:
    taxa = frozenset(universe)
    return frozenset(Split.of((t,), taxa) for t in taxa)


# -- theorem check -------------------------------------------------------------

@dataclass
class OracleReport:
    n: int
    seed: int | None
    checked: int = 0
    agree: int = 0
    disagree: int = 0
    treelike: int = 0
    tree_induced: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.disagree == 0

    def summary(self) -> str:
        seed = "none" if self.seed is None else self.seed
        return (
            f"n={self.n} checked={self.checked} agree={self.agree} "
            f"disagree={self.disagree} seed={seed}"
        )

    def lines(self) -> list[str]:
        out = [self.summary(), f"treelike={self.treelike} tree_induced={self.tree_induced}"]
        out += [f"disagreement: {w}" for w in self.witnesses]
        return out

    def merge(self, other: "OracleReport") -> None:
        self.checked += other.checked
        self.agree += other.agree
        self.disagree += other.disagree
        self.treelike += other.treelike
        room = MAX_WITNESSES - len(self.witnesses)
        self.witnesses += other.witnesses[:max(room, 0)]


def universe_of(n: int) -> tuple[str, ...]:
    return tuple("abcdefg"[:n])


def random_system(universe, rng: random.Random) -> QuintetSystem:
    """A complete quintet system drawn uniformly: one of the 26 quintets on
    each 5-subset, independently."""
    return QuintetSystem(
        (rng.choice(all_quintets(y)) for y in combinations(universe, 5)), universe=universe
    )


def _compare(systems: list, n: int) -> OracleReport:
    rep = OracleReport(n, None)
    for q in systems:
        expected = realizable_by_tree(q)
        try:
            got = is_treelike(q).tree
            fail = None
        except QuintreeError as e:  # an invariant tripped: count it, keep going
            got, fail = None, e
        rep.checked += 1
        same = fail is None and (got is None) == (expected is None)
        if same and got is not None:
            same = got == expected
        if same:
            rep.agree += 1
            rep.treelike += got is not None
        else:
            rep.disagree += 1
            if len(rep.witnesses) < MAX_WITNESSES:
                why = f" ({fail})" if fail else ""
                rep.witnesses.append(
                    f"oracle={expected} pipeline={got}{why} system={_one_line(q)}"
                )
    return rep


def _one_line(q: QuintetSystem) -> str:
    return ";".join(e.compact() for e in q)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("QUINTREE_THREADS", "1")))
    except ValueError:
        return 1


def _chunks(items, size):
    it = iter(items)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def exhaustive_theorem_check(n: int, budget="full", seed: int | None = 0,
                             workers: int | None = None) -> OracleReport:
    """Compare :func:`is_treelike` with :func:`realizable_by_tree`.

    For n=5, ``budget="full"`` walks all complete systems (26 of them).  For
    n=6 and 7 a full walk is out of reach, so ``budget`` is a sample count:
    that many systems are drawn with ``random.Random(seed)``, and every
    tree-induced system is checked on top.  ``workers`` defaults to
    ``QUINTREE_THREADS``; the report does not depend on it.
    """
    if n not in ORACLE_SIZES:
        raise ValueError(f"n must be one of {ORACLE_SIZES}, got {n}")
    universe = universe_of(n)
    workers = worker_count() if workers is None else workers
    if budget == "full":
        if n != 5:
            raise ValueError("a full walk is only feasible for n=5; give a sample count")
        systems = [QuintetSystem([q], universe=universe) for q in all_quintets(universe)]
        rep = _compare(systems, n)
        rep.seed = None
        rep.tree_induced = len(tree_induced_systems(universe))
        return rep
    budget = int(budget)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    rng = random.Random(seed)
    induced = tree_induced_systems(universe)
    sampled = (random_system(universe, rng) for _ in range(budget))
    rep = OracleReport(n, seed, tree_induced=len(induced))
    batches = _chunks(chain(induced, sampled), 2000)
    if workers <= 1:
        for block in batches:
            rep.merge(_compare(block, n))
    else:
        with ProcessPoolExecutor(workers) as pool:
            for part in pool.map(_compare, batches, repeat(n)):
                rep.merge(part)
    return rep

