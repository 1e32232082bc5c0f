import os
import random
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from quintree import QuintetSystem, enumerate_trees, quintet_system_of
from quintree.systems import all_quintets

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _acceptance.append((marker.args[0], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, secs in _acceptance:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  ({secs:.1f}s)")


@pytest.fixture(scope="session")
def trees_by_size():
    """Every tree on a..e and a..f, keyed by leaf count."""
    return {n: list(enumerate_trees("abcdefg"[:n])) for n in (4, 5, 6)}


@pytest.fixture(scope="session")
def induced6(trees_by_size):
    return [(t, quintet_system_of(t)) for t in trees_by_size[6]]


def random_complete(universe, rng):
    return QuintetSystem(
        (rng.choice(all_quintets(y)) for y in combinations(universe, 5)), universe=universe
    )


def perturbed(tree, rng, flips=1):
    """The quintet system of ``tree`` with ``flips`` entries redrawn at random."""
    ents = list(quintet_system_of(tree))
    for _ in range(flips):
        i = rng.randrange(len(ents))
        ents[i] = rng.choice(all_quintets(ents[i].support))
    return QuintetSystem(ents, universe=tree.taxa)


@pytest.fixture
def rng():
    return random.Random(1234)
