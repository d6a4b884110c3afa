import os

import pytest

import demazure

CORPUS = os.environ.get("DEMAZURE_CORPUS_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))


def test_weyl_group_a2():
    assert demazure.weyl_group("A2") == ["", "1", "2", "12", "21", "121"]


def test_a1_square():
    rows = demazure.structure_constants("A1", u="1", v="1", fgl="additive")
    assert rows == [
        {
            "u": "1",
            "v": "1",
            "w": "1",
            "family": "x",
            "backend": "additive",
            "value": {"num": "-2*t1", "den": []},
        }
    ]


def test_formula_matches_oracle_b2():
    for fgl in ("additive", "multiplicative"):
        for family in ("x", "y"):
            f = demazure.structure_constants("B2", family=family, fgl=fgl)
            o = demazure.structure_constants("B2", family=family, fgl=fgl, provenance="oracle")
            assert f == o


def test_restriction_s1s2s1_at_s1():
    assert demazure.restriction("A2", w="1", v="121") == {"num": "-t1 - t2", "den": []}


def test_suites():
    assert demazure.verify("relations", "B2")["passed"]
    assert demazure.verify("duality", "A2")["passed"]
    report = demazure.verify("paper-examples", "A1", corpus=CORPUS)
    assert report["passed"] and len(report["checks"]) == 2


def test_errors():
    with pytest.raises(ValueError):
        demazure.weyl_group("Q7")
    with pytest.raises(ValueError):
        demazure.structure_constants("A2", family="t", fgl="multiplicative")
