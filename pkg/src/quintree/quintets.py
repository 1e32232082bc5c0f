"""Quintet systems: the TTS axioms, their diagnostics, and the two
derivations linking quintet and quartet systems."""
from __future__ import annotations

from itertools import combinations, permutations

from .errors import InvariantViolation, PreconditionError
from .quartets import check_tts_q4
from .rules import LEMMA_RULES, SAT_RULES, THIN_RULES, TRANS_RULES, Certificate, violations
from .systems import Quartet, QuartetSystem, Quintet, QuintetSystem


def expand_overline(a1, a2, b1, b2, b3) -> list[Quintet]:
    """The four quintets whose disjunction is (a1,a2 | overline{b1,b2,b3})."""
    if len({a1, a2, b1, b2, b3}) != 5:
        raise ValueError("overline needs 5 distinct taxa")
    return [
        Quintet.of((a1, a2), (b1, b2, b3)),
        Quintet.of((a1, a2), (b1, b2), (b3,)),
        Quintet.of((a1, a2), (b1, b3), (b2,)),
        Quintet.of((a1, a2), (b2, b3), (b1,)),
    ]


def _rule_scan(rules, q, exhaustive):
    out = []
    for rule in rules:
        found = violations(rule, q, exhaustive)
        out.extend(found)
        if found and not exhaustive:
            break
    return out


def incompleteness(q: QuintetSystem, exhaustive: bool = False) -> list[Certificate]:
    out = []
    for y in combinations(q.taxa, 5):
        found = q.on(y)
        if len(found) == 1:
            continue
        rule = "thin.incomplete" if not found else "thin.duplicate"
        out.append(Certificate("thin", rule, y, tuple(found)))
        if not exhaustive:
            break
    return out


def thin_q5_violations(q: QuintetSystem, exhaustive: bool = False) -> list[Certificate]:
    """One quintet per 5-subset, then forbidden pairs thin.i .. thin.iv."""
    out = incompleteness(q, exhaustive)
    if out and not exhaustive:
        return out
    return out + _rule_scan(THIN_RULES, q, exhaustive)


def transitive_q5_violations(q: QuintetSystem, exhaustive: bool = False) -> list[Certificate]:
    return _rule_scan(TRANS_RULES, q, exhaustive)


def saturated_q5_violations(q: QuintetSystem, exhaustive: bool = False) -> list[Certificate]:
    return _rule_scan(SAT_RULES, q, exhaustive)


def is_thin_q5(q: QuintetSystem) -> bool:
    return not thin_q5_violations(q)


def is_transitive_q5(q: QuintetSystem) -> bool:
    return not transitive_q5_violations(q)


def is_saturated_q5(q: QuintetSystem) -> bool:
    return not saturated_q5_violations(q)


def tts_violations(q: QuintetSystem, exhaustive: bool = False) -> list[Certificate]:
    out = []
    for check in (thin_q5_violations, transitive_q5_violations, saturated_q5_violations):
        found = check(q, exhaustive)
        out.extend(found)
        if found and not exhaustive:
            break
    return out


def check_tts(q: QuintetSystem) -> Certificate | None:
    """First failing certificate (thin, then transitive, then saturated),
    or ``None`` when ``q`` is TTS."""
    found = tts_violations(q)
    return found[0] if found else None


def is_tts(q: QuintetSystem) -> bool:
    return check_tts(q) is None


def lemma_violations(q: QuintetSystem) -> list[Certificate]:
    """Every co-occurrence forbidden by the two lemmas on TTS systems."""
    out = []
    for rule in LEMMA_RULES:
        out.extend(violations(rule, q, exhaustive=True))
    return out


# -- quintet -> quartet -------------------------------------------------------

def _pattern_quintets(a, b, c, d, y) -> list[Quintet]:
    # the seven witnesses of (a,b|c,d) through a fifth taxon y
    return [
        Quintet.of((a, b), (c, d), (y,)),
        Quintet.of((a, b), (c, d, y)),
        Quintet.of((a, b), (c, y), (d,)),
        Quintet.of((a, b), (d, y), (c,)),
        Quintet.of((c, d), (b, y), (a,)),
        Quintet.of((c, d), (a, y), (b,)),
        Quintet.of((a, b, y), (c, d)),
    ]


def _splittings(y4):
    a, b, c, d = sorted(y4)
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def derived_quartet_system(q: QuintetSystem, check: bool = True) -> QuartetSystem:
    """The quartet system read off a TTS quintet system.

    A 4-set gets (a,b|c,d) when some fifth taxon y gives one of the seven
    witness quintets for that splitting, and the star otherwise.
    """
    if check:
        cert = check_tts(q)
        if cert is not None:
            raise PreconditionError(f"quintet system is not TTS: {cert.line()}", cert)
    out = []
    for y4 in combinations(q.taxa, 4):
        others = [t for t in q.taxa if t not in y4]
        matched = set()
        for (a, b), (c, d) in _splittings(y4):
            for y in others:
                if any(p in q for p in _pattern_quintets(a, b, c, d, y)):
                    matched.add(Quartet.of((a, b), (c, d)))
                    break
        if len(matched) > 1:
            raise InvariantViolation(f"conflicting quartets derived on {y4}: {sorted(matched)}")
        out.append(matched.pop() if matched else Quartet.of(y4))
    return QuartetSystem(out, universe=q.universe)


# -- quartet -> quintet -------------------------------------------------------

def _fires_221(s, a, b, c, d, e) -> bool:
    return (
        Quartet.of((a, b), (c, d)) in s
        and Quartet.of((a, b), (c, e)) in s
        and Quartet.of((a, e), (c, d)) in s
    )


def _fires_32(s, a, b, c, d, e) -> bool:
    return (
        Quartet.of((a, b), (c, d)) in s
        and Quartet.of((a, b), (c, e)) in s
        and Quartet.of((a, e, c, d)) in s
        and Quartet.of((b, c, d, e)) in s
    )


def _quintet_from_quartets(s: QuartetSystem, y5) -> Quintet:
    fired = set()
    for a, b, c, d, e in permutations(y5):
        if _fires_221(s, a, b, c, d, e):
            fired.add(Quintet.of((a, b), (c, d), (e,)))
        if _fires_32(s, a, b, c, d, e):
            fired.add(Quintet.of((a, b), (c, d, e)))
    if all(Quartet.of(y4) in s for y4 in combinations(y5, 4)):
        fired.add(Quintet.of(y5))
    if len(fired) != 1:
        raise InvariantViolation(
            f"{len(fired)} quintet cases fire on {y5}: {sorted(fired)}"
        )
    return fired.pop()


def derived_quintet_system(s: QuartetSystem, check: bool = True) -> QuintetSystem:
    """The quintet system read off a TTS quartet system."""
    if len(s.universe) < 5:
        raise PreconditionError("need at least 5 taxa")
    if check:
        cert = check_tts_q4(s)
        if cert is not None:
            raise PreconditionError(f"quartet system is not TTS: {cert.line()}", cert)
    return QuintetSystem(
        (_quintet_from_quartets(s, y5) for y5 in combinations(s.taxa, 5)),
        universe=s.universe,
    )


# -- existence versus universality -------------------------------------------

def _conditions(a1, a2, b1, b2, x) -> list[Quintet]:
    return [
        Quintet.of((a1, a2), (b1, b2), (x,)),
        Quintet.of((a1, a2), (b1, b2, x)),
        Quintet.of((a1, a2, x), (b1, b2)),
        Quintet.of((a1, a2), (b1, x), (b2,)),
        Quintet.of((a1, a2), (b2, x), (b1,)),
        Quintet.of((a1, x), (b1, b2), (a2,)),
        Quintet.of((a2, x), (b1, b2), (a1,)),
    ]


def check_exists_iff_forall(q: QuintetSystem, a1, a2, b1, b2) -> bool:
    """Whether "some x satisfies one of the seven conditions" agrees with
    "every x does", x ranging over the taxa outside {a1,a2,b1,b2}.

    Always true on TTS input.
    """
    if len({a1, a2, b1, b2}) != 4:
        raise ValueError("need 4 distinct taxa")
    holds = [
        any(p in q for p in _conditions(a1, a2, b1, b2, x))
        for x in q.taxa
        if x not in (a1, a2, b1, b2)
    ]
    if not holds:
        raise ValueError("need a fifth taxon to quantify over")
    return any(holds) == all(holds)
