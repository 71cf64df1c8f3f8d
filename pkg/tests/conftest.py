"""Shared fixtures: the generated poset population and a terminal
summary that prints one line per acceptance criterion."""

import re

import pytest

from posetkit.build import generate_small
from posetkit.checks import PROPERTIES, CheckContext
from posetkit.poset import build_poset

RANDOM_COUNT = 200
RANDOM_SEED = 20260814
RANDOM_MAX_SIZE = 10


@pytest.fixture(scope="session")
def population():
    """Complemented posets with their equivalence-law verdicts cached.

    Exhaustive up to 7 elements plus a seeded random stream up to 10,
    shared by the acceptance criteria that quantify over generated
    posets so each completion is computed once.
    """
    posets = list(generate_small(7, "complemented", exhaustive=True))
    stream = generate_small(RANDOM_MAX_SIZE, "complemented", seed=RANDOM_SEED)
    for _ in range(RANDOM_COUNT):
        posets.append(next(stream))
    rows = []
    for poset in posets:
        ctx = CheckContext(poset)
        rows.append({
            "poset": poset,
            "ctx": ctx,
            "sdc": PROPERTIES["strongly-d-continuous"](ctx).holds,
            "pom": PROPERTIES["pseudo-orthomodular"](ctx).holds,
            "finch": PROPERTIES["finch"](ctx).holds,
            "completion_oml": PROPERTIES["completion-orthomodular"](ctx).holds,
        })
    return rows


@pytest.fixture()
def prefixed():
    """Copy a poset with renamed middle elements, bounds kept, so parts
    can be combined into horizontal sums without name collisions."""

    def rename(poset, prefix):
        bottom, top = poset.require_bounds()
        names = [name if i in (bottom, top) else prefix + name
                 for i, name in enumerate(poset.names)]
        covers = [(names[i], names[j]) for i, j in poset.cover_pairs()]
        involution = None
        if poset.inv is not None:
            involution = [(names[i], names[poset.inv[i]])
                          for i in range(poset.n)]
        return build_poset(names, covers, involution=involution)

    return rename


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for key, verdict in (("passed", "pass"), ("failed", "fail"),
                         ("error", "fail")):
        for rep in terminalreporter.stats.get(key, []):
            match = re.search(r"test_acceptance\.py::test_criterion_(\d+)",
                              getattr(rep, "nodeid", ""))
            if not match:
                continue
            num = int(match.group(1))
            if verdict == "fail" or num not in outcomes:
                outcomes[num] = verdict
    if outcomes:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for num in sorted(outcomes):
            terminalreporter.write_line(f"  criterion {num:2d}: {outcomes[num]}")
