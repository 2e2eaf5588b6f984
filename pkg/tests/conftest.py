import pytest

from cmreduce import catalog_load


@pytest.fixture(scope="session")
def catalog():
    return catalog_load()
