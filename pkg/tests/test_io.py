import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicsq.construct import construct
from magicsq.core import Square
from magicsq.io import DocumentError, dumps, from_csv, from_json, loads, to_csv, to_json

from oracles import REF_4


def test_csv_layout():
    assert to_csv(Square(REF_4)) == "1,15,14,4\n12,6,7,9\n8,10,11,5\n13,3,2,16\n"


def test_json_layout():
    doc = json.loads(to_json(construct(10)))
    assert doc["n"] == 10 and doc["a_min"] == 1 and doc["magic_constant"] == 505
    assert len(doc["rows"]) == 10


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 30), st.integers(1, 1000), st.sampled_from(["csv", "json"]))
def test_roundtrip(n, a_min, fmt):
    sq = construct(n, a_min)
    assert loads(dumps(sq, fmt), fmt, a_min if fmt == "csv" else None) == sq


def test_sniffing():
    sq = construct(5, 3)
    assert loads(to_json(sq)) == sq
    assert loads(to_csv(sq), a_min=3) == sq


@pytest.mark.parametrize(
    "text",
    ["1,2,3\n4,5\n7,8,9\n", "1,2\n3,4\n", "", "1,2,x\n4,5,6\n7,8,9\n", "1,2,3\n4,5,6\n"],
)
def test_bad_csv(text):
    with pytest.raises(DocumentError):
        from_csv(text)


def test_json_constant_cross_check():
    doc = json.loads(to_json(construct(4)))
    doc["magic_constant"] = 35
    with pytest.raises(DocumentError):
        from_json(json.dumps(doc))


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        '{"n": 3}',
        '{"rows": [[1,2],[3,4,5]]}',
        '{"n": 4, "rows": [[8,1,6],[3,5,7],[4,9,2]]}',
        '{"rows": [[8,1,6],[3,5.5,7],[4,9,2]]}',
        '{"rows": [[8,1,6],[3,5,7],[4,9,2]], "a_min": 0}',
    ],
)
def test_bad_json(doc):
    with pytest.raises(DocumentError):
        from_json(doc)


def test_json_a_min_override():
    doc = to_json(construct(3))
    assert from_json(doc, a_min=2).a_min == 2
    assert np.array_equal(from_json(doc, a_min=2).cells, construct(3).cells)
