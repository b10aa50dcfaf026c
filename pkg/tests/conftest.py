from __future__ import annotations

import os
import random

import pytest

from mdly import examples
from mdly.representation import adjoint_representation

SEED = int(os.environ.get("MDLY_SEED", "20240617"))


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def two():
    return examples.two_dim_mdly()


@pytest.fixture(scope="session")
def three():
    return examples.three_dim_mdly()


@pytest.fixture(scope="session")
def ad_two(two):
    return adjoint_representation(two)


@pytest.fixture(scope="session")
def ad_three(three):
    return adjoint_representation(three)


_LOG = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_LOG, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LOG, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
