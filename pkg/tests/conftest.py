import pytest
from hypothesis import settings

from vlcodes import automata
from vlcodes.words import Alphabet, ThetaSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

AB = Alphabet("ab")
DNA = Alphabet("ACGT")
SWAP = ThetaSpec.parse("a:b,b:a")
ANTI_SWAP = ThetaSpec.parse("a:b,b:a", anti=True)
WATSON_CRICK = ThetaSpec.parse("A:T,T:A,C:G,G:C", anti=True)


def words(*ws, alphabet=AB):
    return automata.from_words(ws, alphabet)


def regex(text, alphabet=AB):
    return automata.compile_regex(text, alphabet)


@pytest.fixture
def ab():
    return AB


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
