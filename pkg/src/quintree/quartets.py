"""Quartet systems: the thin/transitive/saturated axioms and tree
reconstruction from a system that satisfies them."""
from __future__ import annotations

from itertools import combinations

from .errors import InvariantViolation, PreconditionError
from .rules import RULES, Certificate, violations
from .systems import Quartet, QuartetSystem
from .tree import PhyloTree

TRANS4 = RULES["trans4"]
SAT4 = RULES["sat4"]


def thin_q4_violations(s: QuartetSystem, exhaustive: bool = False) -> list[Certificate]:
    """4-subsets of the universe carrying no quartet or more than one."""
    out = []
    for y in combinations(s.taxa, 4):
        found = s.on(y)
        if len(found) == 1:
            continue
        rule = "thin4.missing" if not found else "thin4.duplicate"
        out.append(Certificate("thin", rule, y, tuple(found)))
        if not exhaustive:
            break
    return out


def transitive_q4_violations(s: QuartetSystem, exhaustive: bool = False) -> list[Certificate]:
    return violations(TRANS4, s, exhaustive)


def saturated_q4_violations(s: QuartetSystem, exhaustive: bool = False) -> list[Certificate]:
    return violations(SAT4, s, exhaustive)


def is_thin_q4(s: QuartetSystem) -> bool:
    return not thin_q4_violations(s)


def is_transitive_q4(s: QuartetSystem) -> bool:
    return not transitive_q4_violations(s)


def is_saturated_q4(s: QuartetSystem) -> bool:
    return not saturated_q4_violations(s)


def q4_violations(s: QuartetSystem, exhaustive: bool = False) -> list[Certificate]:
    """Thin, then transitive, then saturated.  Without ``exhaustive`` the
    result holds at most the first failing certificate."""
    out = []
    for check in (thin_q4_violations, transitive_q4_violations, saturated_q4_violations):
        found = check(s, exhaustive)
        out.extend(found)
        if found and not exhaustive:
            break
    return out


def check_tts_q4(s: QuartetSystem) -> Certificate | None:
    found = q4_violations(s)
    return found[0] if found else None


def reconstruct_from_quartets(s: QuartetSystem, check: bool = True) -> PhyloTree:
    """The X-tree whose quartet system is ``s``.

    Repeatedly contracts a complete cherry: the smallest pair of current
    taxa that no (2,2) quartet separates, together with every other taxon
    not separated from its first member, provided the group is cut off from
    the remaining taxa by a single edge.  The cherry becomes one composite
    taxon that answers quartet queries through its smallest member.  Stops
    at three taxa or when only stars remain and hangs what is left off one
    vertex.

    Raises PreconditionError (with a certificate) on non-TTS input and
    InvariantViolation if the contraction ever goes wrong on TTS input.
    """
    if check:
        cert = check_tts_q4(s)
        if cert is not None:
            raise PreconditionError(f"quartet system is not TTS: {cert.line()}", cert)
    if not s.universe:
        raise PreconditionError("empty universe")

    # rep -> nested structure of the subtree it stands for
    items = {t: t for t in s.taxa}
    while len(items) > 3:
        reps = sorted(items)
        separated = set()
        any_pair_split = False
        for y in combinations(reps, 4):
            q = s.get(y)
            if q is None:
                raise InvariantViolation(f"no unique quartet on {y}")
            if q.is_star:
                continue
            any_pair_split = True
            p1, p2 = q.blocks
            for u in p1:
                for v in p2:
                    separated.add(frozenset((u, v)))
        if not any_pair_split:
            break
        cherry = _pendant_cherry(s, reps, separated)
        if cherry is None:
            raise InvariantViolation(
                "no contractible cherry among current taxa although (2,2) quartets remain"
            )
        a = cherry[0]
        _assert_inheritance(s, cherry, [r for r in reps if r not in cherry])
        nested = tuple(items.pop(m) for m in cherry)
        items[a] = nested
    parts = [items[r] for r in sorted(items)]
    if len(parts) == 1:
        return PhyloTree.from_nested(parts[0])
    return PhyloTree.from_nested(tuple(parts))


def _pendant_cherry(s: QuartetSystem, reps: list, separated: set):
    """Smallest unseparated pair whose full sibling group hangs off the rest
    of the tree by a single edge, returned as the whole group."""
    rejected = set()
    for a, b in combinations(reps, 2):
        if a in rejected or frozenset((a, b)) in separated:
            continue
        cherry = [a] + [c for c in reps if c != a and frozenset((a, c)) not in separated]
        for u, v in combinations(cherry, 2):
            if frozenset((u, v)) in separated:
                raise InvariantViolation(f"cherry {cherry} is not pairwise unseparated")
        outside = [r for r in reps if r not in cherry]
        if len(outside) >= 2 and all(
            s.get((a, m, d, e)) == Quartet.of((a, m), (d, e))
            for m in cherry[1:]
            for d, e in combinations(outside, 2)
        ):
            return cherry
        rejected.add(a)
    return None


def _assert_inheritance(s: QuartetSystem, cherry: list, others: list) -> None:
    a = cherry[0]
    for m in cherry[1:]:
        for trio in combinations(others, 3):
            qa = s.get((a,) + trio)
            qm = s.get((m,) + trio)
            swapped = Quartet(tuple(tuple(m if t == a else t for t in b) for b in qa.blocks))
            if swapped != qm:
                raise InvariantViolation(
                    f"members {a} and {m} of a cherry disagree on {trio}: {qa} vs {qm}"
                )
