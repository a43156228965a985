import pytest

from symprop.proportions import ProportionTable


@pytest.fixture(scope="session")
def table() -> ProportionTable:
    """One memo shared by the whole run; rows accumulate across tests."""
    return ProportionTable()
