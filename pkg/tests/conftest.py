import random

import pytest

from plusctl.realize import todd_coxeter
from plusctl.words import parse_presentation

A5_TEXT = "gens: a, b; rels: a^2, b^3, (a b)^5"
A5Z2_TEXT = "gens: a, b, c; rels: a^2, b^3, (a b)^5, c^2, [a, c], [b, c]"


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240607, help="seed for randomized tests")


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture(scope="session")
def a5():
    return parse_presentation(A5_TEXT)


@pytest.fixture(scope="session")
def a5_group(a5):
    return todd_coxeter(a5)


@pytest.fixture(scope="session")
def a5z2():
    return parse_presentation(A5Z2_TEXT)


@pytest.fixture(scope="session")
def a5z2_kernel(a5z2):
    return (a5z2.word("a"), a5z2.word("b"))


@pytest.fixture(scope="session")
def a5z2_quotient(a5z2, a5z2_kernel):
    return todd_coxeter(a5z2.with_relators(a5z2_kernel))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
