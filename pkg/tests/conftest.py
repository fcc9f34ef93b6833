import pytest

from ontic_toy.joint import canonicalize_joint
from ontic_toy.model import frustrated_three_domain, standard_four_domain, standard_two_domain
from ontic_toy.parser import parse


@pytest.fixture(scope="session")
def two():
    return standard_two_domain()


@pytest.fixture(scope="session")
def four():
    return standard_four_domain()


@pytest.fixture(scope="session")
def three():
    return frustrated_three_domain()


def canon(text, config):
    """Parse and canonicalize, returning the canonical spelling."""
    return canonicalize_joint(parse(text, config), config).render()


def value(text, config):
    return canonicalize_joint(parse(text, config), config)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
