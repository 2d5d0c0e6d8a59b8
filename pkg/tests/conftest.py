"""Shared fixtures over the bundled corpus, plus the acceptance report.

The acceptance tests register one line per criterion through
``record_acceptance``; the hook below replays them as a summary block at
the end of every run so the verdict is visible without ``-s``.
"""
import pytest

from birkhoff2d import corpus

acceptance_lines = []


def record_acceptance(num, ok, text):
    line = "criterion %2d %s  %s" % (num, "PASS" if ok else "FAIL", text)
    acceptance_lines.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cats():
    return {n: corpus.category(n) for n in corpus.CATEGORY_NAMES}


@pytest.fixture(scope="session")
def all_functors():
    return corpus.corpus_functors()


@pytest.fixture(scope="session")
def catalog():
    return dict(corpus.catalog())


@pytest.fixture(scope="session")
def coherence():
    return corpus.coherence_extension()
