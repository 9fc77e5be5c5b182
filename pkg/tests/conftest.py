from fractions import Fraction

import pytest
from hypothesis import strategies as st

from coxforge.catalog import load_catalog
from coxforge.radical import RadicalNumber

RADICANDS = (1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 26, 35)

fractions = st.builds(
    Fraction,
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=1, max_value=12),
)

radicals = st.dictionaries(st.sampled_from(RADICANDS), fractions, max_size=4).map(RadicalNumber)


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def catalog_by_id(catalog):
    return {e.id: e for e in catalog}


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
