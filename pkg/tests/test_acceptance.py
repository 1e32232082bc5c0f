"""Acceptance criteria, one test each.

Every quantity is discrete, so every comparison is exact.  The terminal
summary prints a PASS/FAIL line per criterion (see conftest.py).
"""
import random
import time
from itertools import combinations, permutations

import pytest

from quintree import (
    QuintetSystem,
    check_exists_iff_forall,
    check_tts,
    check_tts_q4,
    derived_quartet_system,
    derived_quintet_system,
    enumerate_trees,
    exhaustive_theorem_check,
    is_treelike,
    lemma_violations,
    parse_newick,
    quartet_system_of,
    quintet_system_of,
    realizable_by_tree,
    reconstruct_from_quartets,
    restrict,
    splits_of,
    to_newick,
)
from quintree.cli import main
from quintree.oracle import compatible_split_sets, trivial_splits
from quintree.systems import all_quintets

from conftest import DATA

SIX_SAMPLES = 100_000
SEVEN_SAMPLES = 500


def trees_on(n):
    return list(enumerate_trees("abcdefg"[:n]))


@pytest.mark.acceptance("forward theorem, exhaustive |x| in {5,6}")
def test_forward_theorem_exhaustive():
    start = time.perf_counter()
    for n in (5, 6):
        universe = "abcdef"[:n]
        trees = trees_on(n)
        second = compatible_split_sets(universe)
        assert len(trees) == len(second)
        assert {t.splits - trivial_splits(universe) for t in trees} == set(second)
        for t in trees:
            q = quintet_system_of(t)
            assert check_tts(q) is None, to_newick(t)
            assert lemma_violations(q) == [], to_newick(t)
            for y in permutations(universe, 4):
                assert check_exists_iff_forall(q, *y), (to_newick(t), y)
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance("main theorem |X|=5, all 26 systems")
def test_main_theorem_five():
    start = time.perf_counter()
    systems = [QuintetSystem([q]) for q in all_quintets("abcde")]
    assert len(systems) == 26
    for q in systems:
        assert check_tts(q) is None
        expected = realizable_by_tree(q)
        assert expected is not None
        got = is_treelike(q).tree
        assert got == expected
        assert [t for t in trees_on(5) if quintet_system_of(t) == q] == [expected]
    assert time.perf_counter() - start < 1


@pytest.mark.acceptance("main theorem |X|=6, 10^5 seeded samples plus all tree-induced systems")
def test_main_theorem_six():
    start = time.perf_counter()
    report = exhaustive_theorem_check(6, SIX_SAMPLES, seed=20260101)
    print(*report.lines(), sep="\n")
    assert report.tree_induced == len(trees_on(6))
    assert report.checked == SIX_SAMPLES + report.tree_induced
    assert report.disagree == 0, report.witnesses
    assert report.treelike >= report.tree_induced
    assert time.perf_counter() - start < 600


@pytest.mark.acceptance("round trips: quartet reconstruction, Q=Q', CLI amalgamation")
def test_round_trips(tmp_path, capsys):
    rng = random.Random(77)
    sevens = trees_on(7)
    # (a) reconstruction from quartets
    for n in (4, 5, 6):
        for t in trees_on(n):
            assert reconstruct_from_quartets(quartet_system_of(t)) == t
    for t in rng.sample(sevens, SEVEN_SAMPLES):
        assert reconstruct_from_quartets(quartet_system_of(t)) == t
    # (b) derived quintets of derived quartets give the system back
    for n in (5, 6):
        for t in trees_on(n):
            q = quintet_system_of(t)
            assert derived_quintet_system(derived_quartet_system(q)) == q
    # (c) the CLI rebuilds a tree from its 5-leaf restrictions
    for t in trees_on(5) + trees_on(6) + rng.sample(sevens, 60):
        paths = []
        for i, y in enumerate(combinations(t.taxa, 5)):
            p = tmp_path / f"r{i}.nwk"
            p.write_text(to_newick(restrict(t, y)) + "\n")
            paths.append(str(p))
        code = main(["amalgamate", "--trees", *paths])
        out = capsys.readouterr().out
        assert code == 0
        assert parse_newick(out) == t


@pytest.mark.acceptance("derived quartet systems satisfy the quartet axioms")
def test_derived_system_axioms():
    for n in (5, 6):
        for t in trees_on(n):
            s = derived_quartet_system(quintet_system_of(t))
            assert check_tts_q4(s) is None, to_newick(t)
            assert s == quartet_system_of(t)


QUINTET_RULES = ["sat.i", "sat.ii", "sat.iii", "trans.i", "trans.ii", "trans.iii", "trans.iv",
                 "trans.v", "trans.vi", "thin.i", "thin.ii", "thin.iii", "thin.iv"]


@pytest.mark.acceptance("negative certificates for every quintet rule")
def test_negative_certificates():
    for rule in QUINTET_RULES:
        q = QuintetSystem.parse((DATA / "violations" / f"{rule}.q5").read_text())
        cert = check_tts(q)
        assert cert is not None and cert.rule == rule
        assert cert.reproduces(q)


MALFORMED = ["((a,b));", "(a,b,c)", "(a,b,a);", "(a,,b);", "(a,b:x,c);", "(a,b,c,d,e);\n((a,b),(c,d)\n"]


@pytest.mark.acceptance("Newick round trip and malformed input")
def test_newick(tmp_path, capsys):
    for n in (3, 4, 5, 6):
        for t in trees_on(n):
            assert splits_of(parse_newick(to_newick(t))) == splits_of(t)
    for i, text in enumerate(MALFORMED):
        p = tmp_path / f"bad{i}.nwk"
        p.write_text(text)
        for argv in (["amalgamate", "--trees", str(p)], ["extract", "--tree", str(p)]):
            code = main(argv)
            err = capsys.readouterr().err
            assert code == 2
            assert "line " in err, err
