import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from burstrecon.core import Word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def words(draw, n=st.integers(1, 12), q=st.sampled_from([2, 3, 4])):
    n = draw(n) if not isinstance(n, int) else n
    q = draw(q) if not isinstance(q, int) else q
    sym = draw(st.lists(st.integers(0, q - 1), min_size=n, max_size=n))
    return Word(tuple(sym), q)


@st.composite
def word_pairs(draw, n=st.integers(1, 12), q=st.sampled_from([2, 3, 4])):
    n = draw(n) if not isinstance(n, int) else n
    q = draw(q) if not isinstance(q, int) else q
    x = draw(words(n=n, q=q))
    y = draw(words(n=n, q=q))
    return x, y


def all_words(n, q):
    return [Word(s, q) for s in itertools.product(range(q), repeat=n)]


def W(text, q=2):
    return Word.parse(text, q)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance_report():
    def report(k: int, title: str, ok: bool, detail: str):
        line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES[k] = line
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
