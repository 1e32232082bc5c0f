"""The rule engine: literal reading, the two scanners, certificates."""
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from quintree import Certificate, Quartet, QuartetSystem, Quintet, QuintetSystem
from quintree.rules import RULES, lit, naive_violations, overline, violations
from quintree.systems import all_quartets, all_quintets

from conftest import random_complete


def random_quartets(universe, rng):
    return QuartetSystem(
        [rng.choice(all_quartets(y)) for y in combinations(universe, 4)],
        universe=universe,
    )


def test_lit():
    assert lit("a1 a2 | b1 b2 | c") == (("a1", "a2"), ("b1", "b2"), ("c",))


def test_overline_templates():
    assert overline("a1 a2", "b1 b2 b3")[0] == (("a1", "a2"), ("b1", "b2", "b3"))
    assert len(overline("a1 a2", "b1 b2 b3")) == 4


def test_rule_ids():
    expected = {f"thin.{r}" for r in ("i", "ii", "iii", "iv")}
    expected |= {f"trans.{r}" for r in ("i", "ii", "iii", "iv", "v", "vi")}
    expected |= {f"sat.{r}" for r in ("i", "ii", "iii")}
    assert expected <= set(RULES)


def test_variables_must_match_templates():
    from quintree.rules import Rule
    with pytest.raises(ValueError):
        Rule("bad", "thin", ("a", "b"), premises=(lit("a b | c d | e"),))


class TestReading:
    def test_ill_formed_premise_never_holds(self):
        q = QuintetSystem([Quintet.parse("a b | c d | e")], universe="abcde")
        # thin.i with x = c makes the first premise ill-formed
        assert not RULES["thin.i"].violated_by(q, ("a", "b", "c", "d", "c", "e"))

    def test_all_conclusions_ill_formed_is_vacuous(self):
        # sat.i with x inside the premise support: every disjunct is ill-formed
        q = QuintetSystem([Quintet.parse("a b | c d | e")], universe="abcdef")
        assert not RULES["sat.i"].violated_by(q, ("a", "b", "c", "d", "e", "a"))

    def test_distinctness_enforced(self):
        q = QuintetSystem([Quintet.parse("a b | c d | e")], universe="abcdef")
        assert not RULES["sat.i"].violated_by(q, ("a", "b", "c", "d", "e", "e"))

    def test_x_may_equal_y_in_thin(self):
        q = QuintetSystem([Quintet.parse("a b | c e | d"), Quintet.parse("a c | b e | d")])
        assert RULES["thin.i"].violated_by(q, ("a", "b", "c", "d", "e", "e"))

    def test_witness_count_checked(self):
        with pytest.raises(ValueError):
            RULES["sat.i"].violated_by(QuintetSystem(), ("a",))


class TestScanners:
    @pytest.mark.parametrize("seed", range(6))
    def test_indexed_matches_naive_on_random_systems(self, seed):
        rng = random.Random(seed)
        q = random_complete("abcdef", rng)
        s = random_quartets("abcdef", rng)
        for rule in RULES.values():
            system = s if rule.size == 4 else q
            fast = [c.witnesses for c in violations(rule, system)]
            slow = [c.witnesses for c in naive_violations(rule, system)]
            assert fast == slow, rule.id

    @settings(max_examples=10)
    @given(st.randoms(use_true_random=False), st.integers(1, 8))
    def test_indexed_matches_naive_on_sparse_systems(self, r, k):
        # sparse and possibly non-thin: several quintets per support allowed
        supports = list(combinations("abcdef", 5))
        ents = [r.choice(all_quintets(r.choice(supports))) for _ in range(k)]
        q = QuintetSystem(ents, universe="abcdef")
        for rule in RULES.values():
            if rule.size != 5:
                continue
            assert [c.witnesses for c in violations(rule, q)] == [c.witnesses for c in naive_violations(rule, q)]

    def test_first_only_is_smallest(self):
        q = random_complete("abcdef", random.Random(3))
        for rule in RULES.values():
            if rule.size != 5:
                continue
            every = violations(rule, q)
            first = violations(rule, q, exhaustive=False)
            assert first == every[:1]


class TestCertificate:
    def test_line_format(self):
        c = Certificate("thin", "thin.i", tuple("abcdxy"),
                        (Quintet.parse("a b | c x | d"), Quintet.parse("a c | b y | d")))
        assert c.line() == "VIOLATION thin.i witnesses=a,b,c,d,x,y entries=a,b|c,x|d;a,c|b,y|d"

    def test_reproduces(self):
        q = QuintetSystem([Quintet.parse("a b | c x | d"), Quintet.parse("a c | b y | d")])
        c = violations(RULES["thin.i"], q)[0]
        assert c.reproduces(q)
        assert not c.reproduces(QuintetSystem(q.entries[:1], universe=q.universe))

    def test_completeness_certificates(self):
        q = QuintetSystem([], universe="abcde")
        assert Certificate("thin", "thin.incomplete", tuple("abcde")).reproduces(q)
        assert not Certificate("thin", "thin.duplicate", tuple("abcde")).reproduces(q)
