import pytest

from lexchoice import load_lexicon, load_ontology, parse_ir
from lexchoice.fixtures import read_fixture


@pytest.fixture(scope="session")
def onto():
    return load_ontology(read_fixture("core.ont"))


@pytest.fixture(scope="session")
def en(onto):
    return load_lexicon(read_fixture("en.lex"), onto)


@pytest.fixture(scope="session")
def fr(onto):
    return load_lexicon(read_fixture("fr.lex"), onto)


@pytest.fixture(scope="session")
def irs():
    return {n: parse_ir(read_fixture(f"ex{n}.ir")) for n in (1, 2, 3, 4)}


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
