import io
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from designspace.dataset import read_dataset

from helpers import correlated_binary, make_dataset, two_blob

TOY_CSV = """id,A,B,C
p1,x,u,m
p2,x,u,n
p3,y,v,m
p4,y,v,n
p5,x,v,m
"""


@pytest.fixture
def toy():
    return read_dataset(io.StringIO(TOY_CSV))


@pytest.fixture
def toy_csv_path(tmp_path):
    path = tmp_path / "toy.csv"
    path.write_text(TOY_CSV, encoding="utf-8")
    return path


@pytest.fixture
def two_record():
    return make_dataset(["A", "B"], [("x", "u"), ("y", "u")])


@pytest.fixture
def planted():
    return two_blob(10, 10, 9)


@pytest.fixture
def correlated():
    return correlated_binary()
