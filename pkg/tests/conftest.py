import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from flowshoplab import TABLE2, ProcessingTimeTable

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def table2():
    return TABLE2


def int_tables(max_m=8, max_n=8, max_value=9):
    shapes = st.tuples(st.integers(1, max_m), st.integers(1, max_n))
    return shapes.flatmap(
        lambda shape: arrays(np.int64, shape, elements=st.integers(0, max_value))
    ).map(ProcessingTimeTable)


def float_tables(max_m=7, max_n=7):
    shapes = st.tuples(st.integers(1, max_m), st.integers(1, max_n))
    return shapes.flatmap(
        lambda shape: arrays(
            np.float64, shape, elements=st.floats(0, 100, allow_nan=False, allow_infinity=False, width=64)
        )
    ).map(ProcessingTimeTable)


def random_int_table(rng, m, n, hi=20):
    return ProcessingTimeTable(rng.integers(0, hi, size=(m, n), endpoint=True))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
