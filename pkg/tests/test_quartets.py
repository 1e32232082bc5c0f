import random
from itertools import combinations

import pytest

from quintree import (
    PreconditionError,
    Quartet,
    QuartetSystem,
    check_tts_q4,
    enumerate_trees,
    is_saturated_q4,
    is_thin_q4,
    is_transitive_q4,
    parse_newick,
    quartet_system_of,
    reconstruct_from_quartets,
)
from quintree.quartets import thin_q4_violations, transitive_q4_violations, saturated_q4_violations
from quintree.systems import all_quartets

Q = Quartet.parse


def stars_except(universe, entries):
    """Every 4-subset gets a star unless ``entries`` covers it."""
    given = {e.support: e for e in entries}
    return QuartetSystem(
        [given.get(frozenset(y), Quartet.of(y)) for y in combinations(universe, 4)],
        universe=universe,
    )


class TestThin:
    def test_duplicate(self):
        s = stars_except("abcd", [Q("a b | c d")])
        s = QuartetSystem(list(s) + [Q("a c | b d")])
        (c,) = thin_q4_violations(s)
        assert c.rule == "thin4.duplicate" and c.witnesses == tuple("abcd")
        assert c.reproduces(s)

    def test_missing(self):
        s = QuartetSystem([e for e in stars_except("abcde", []) if e.support != frozenset("abce")], universe="abcde")
        (c,) = thin_q4_violations(s)
        assert c.rule == "thin4.missing" and c.witnesses == tuple("abce")
        assert not is_thin_q4(s)


class TestTransitive:
    def test_violation(self):
        s = QuartetSystem([Q("a1 x | b1 b2"), Q("a2 x | b1 b2"), Q("a1 b1 | a2 b2")])
        (c,) = transitive_q4_violations(s)
        assert c.rule == "trans4" and c.reproduces(s)
        assert set(c.witnesses) == {"a1", "a2", "b1", "b2", "x"}

    def test_empty_vacuous(self):
        assert is_transitive_q4(QuartetSystem())


class TestSaturated:
    def test_lonely_split(self):
        s = stars_except("abcde", [Q("a b | c d")])
        found = saturated_q4_violations(s, exhaustive=True)
        assert found and all(c.rule == "sat4" and c.reproduces(s) for c in found)

    def test_four_taxa_vacuous(self):
        assert is_saturated_q4(QuartetSystem([Q("a b | c d")]))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_tree_induced_systems_pass(n):
    for t in enumerate_trees("abcdef"[:n]):
        assert check_tts_q4(quartet_system_of(t)) is None


@pytest.mark.parametrize("n", [5, 6])
def test_axioms_order_independent(n):
    rng = random.Random(n)
    universe = "abcdef"[:n]
    for _ in range(40):
        s = QuartetSystem([rng.choice(all_quartets(y)) for y in combinations(universe, 4)], universe=universe)
        perm = dict(zip(universe, rng.sample(universe, n)))
        assert (check_tts_q4(s) is None) == (check_tts_q4(s.relabel(perm)) is None)


class TestReconstruct:
    def test_caterpillar(self):
        t = parse_newick("((a,b),(c,d),e);")
        assert reconstruct_from_quartets(quartet_system_of(t)) == t

    def test_all_stars(self):
        assert reconstruct_from_quartets(stars_except("abcde", [])) == parse_newick("(a,b,c,d,e);")

    def test_multifurcating_cherries(self):
        # a cherry of three next to a vertex carrying two further subtrees
        t = parse_newick("((a,b,c),(d,e),(f,g),h);")
        assert reconstruct_from_quartets(quartet_system_of(t)) == t

    def test_rejects_non_tts(self):
        s = stars_except("abcde", [Q("a b | c d")])
        with pytest.raises(PreconditionError) as exc:
            reconstruct_from_quartets(s)
        assert exc.value.certificate.rule == "sat4"

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_round_trip(self, n):
        for t in enumerate_trees("abcdef"[:n]):
            assert reconstruct_from_quartets(quartet_system_of(t)) == t
