import pytest

from k3corr.dataset import load_rows


@pytest.fixture(scope="session")
def rows():
    return load_rows()


@pytest.fixture(scope="session")
def rows_by_key(rows):
    return {row.key: row for row in rows}
