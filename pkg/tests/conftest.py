import pytest

from concheck import constrained


@pytest.fixture(autouse=True, scope="session")
def _debug_recheck():
    # every certificate propagated anywhere in the suite is re-derived from
    # scratch; any divergence aborts the test run
    constrained.set_debug_recheck(True)
    yield
    constrained.set_debug_recheck(False)
