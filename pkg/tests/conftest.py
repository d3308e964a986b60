from __future__ import annotations

from functools import lru_cache

import pytest

from shardfan import builders
from shardfan.fan import validate_fan
from shardfan.lattice import orient_hasse
from shardfan.shards import ShardSystem


@lru_cache(maxsize=None)
def built(family: str, *params: int):
    doc = {
        "fa2": builders.path_a2,
        "orthant": builders.gen_orthant,
        "crown": builders.gen_crown,
        "coxeterA": builders.gen_coxeter_A,
    }[family](*params)
    fan = validate_fan(doc)
    poset = orient_hasse(fan)
    return fan, poset, ShardSystem(fan, poset)


def chamber(fan, label: str) -> int:
    """FA2-style chamber label, e.g. ``"40"`` -> chamber on rays 4 and 0."""
    return fan.chamber_id(int(ch) for ch in label)


def by_vectors(fan, *vectors) -> int:
    return fan.chamber_id(fan.ray_index(v) for v in vectors)


@pytest.fixture
def fa2():
    return built("fa2")


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
