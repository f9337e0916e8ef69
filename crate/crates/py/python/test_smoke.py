import json

import pytest

import dblcat


def test_subdivided_simplex_is_acyclic():
    report = dblcat.homology(dblcat.csd2("simplex", 2, max_dim=3), ring="z")
    assert [d["betti"] for d in report["degrees"]] == [1, 0, 0, "unknown"]


def test_spine_fixture_has_five_objects():
    a = json.loads(dblcat.fixture("spine", n=2))
    assert len(a["A0"]["objects"]) == 5
    assert dblcat.validate(dblcat.fixture("spine", n=2)) == []


def test_corrupted_parity_reports_interchange():
    found = dblcat.validate(dblcat.fixture("parity", corrupt="interchange"))
    assert any(v["axiom"] == "interchange" and v["location"] == "c" for v in found)


def test_glued_vertical_pushout_verifies():
    spec = dblcat.fixture("glued-vertical")
    assert dblcat.verify_nerve(spec, max_dim=3) == [True] * 4
    assert dblcat.validate(dblcat.pushout_dbl(spec)) == []


def test_bad_input_raises():
    with pytest.raises(ValueError, match="line"):
        dblcat.validate("{")
    with pytest.raises(ValueError):
        dblcat.csd2("cube", 1)
