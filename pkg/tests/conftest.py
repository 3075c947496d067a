import json
from pathlib import Path

import pytest

from quickdash import load_csv, parse_spec

DATA_DIR = Path(__file__).parent / "data"

MINI_CSV = """Sales,Shipping Cost,Ship Date,Region,Category
10,1.5,2024-01-03,West,Furniture
5,0.5,2024-01-10,West,Technology
2,0.25,2024-02-02,East,Furniture
3,0.75,2024-02-20,East,Technology
"""


@pytest.fixture(scope="session")
def superstore_table():
    return load_csv(DATA_DIR / "superstore.csv")


@pytest.fixture(scope="session")
def superstore_schema(superstore_table):
    return superstore_table.schema


@pytest.fixture(scope="session")
def mini_table():
    return load_csv(MINI_CSV)


def _example_text(n: int) -> str:
    return (DATA_DIR / f"example{n}.json").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def example1_text():
    return _example_text(1)


@pytest.fixture(scope="session")
def example2_text():
    return _example_text(2)


@pytest.fixture(scope="session")
def example3_text():
    return _example_text(3)


@pytest.fixture(scope="session")
def example1_spec(example1_text):
    return parse_spec(example1_text)


@pytest.fixture(scope="session")
def example2_spec(example2_text):
    return parse_spec(example2_text)


@pytest.fixture(scope="session")
def example3_spec(example3_text):
    return parse_spec(example3_text)
