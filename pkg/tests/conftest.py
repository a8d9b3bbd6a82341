from fractions import Fraction

import pytest

from densic.automaton import DFAO
from densic.constructor import even_length_set, leading_digit_set, powers_of_base_set
from densic.oracle import random_corpus

CORPUS_SEED = 20240917


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(CORPUS_SEED, 50, max_states=4, bases=(2, 3))


@pytest.fixture(scope="session")
def golden():
    """Named automata with hand-derivable densities."""
    return {
        "even2": even_length_set(2),
        "even3": even_length_set(3),
        "lead31": leading_digit_set(3, 1),
        "pow2": powers_of_base_set(2),
    }


def rational_dfao(k=3):
    return DFAO(k, ((0, 1, 2), (1, 1, 1), (2, 2, 2)), (Fraction(0), Fraction(1, 2), Fraction(2)), 0)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
