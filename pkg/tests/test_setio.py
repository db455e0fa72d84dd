import json
from fractions import Fraction as F

import pytest

from sumsetlab.grids import box, unit_cube, volume
from sumsetlab.hulls import hull_of
from sumsetlab.intervals import IntervalSet
from sumsetlab.setio import (InputFormatError, dump_grid, dump_interval_set, dump_plan,
                             dump_polytope, load_grid, load_interval_set, load_plan,
                             load_polytope, load_set_definition)
from sumsetlab.transport import TransportPlan, plan_cost


def test_grid_round_trip():
    g = box([0, 0], [1, 1], q=2)
    doc = dump_grid(g)
    assert load_grid(doc) == g
    assert json.loads(json.dumps(doc)) == doc


def test_box_primitive_matches_builder():
    doc = {"dim": 2, "q": 1,
           "primitives": [{"box": {"lo": ["0/1", "0/1"], "hi": ["1/2", "1/1"]}}]}
    g = load_grid(doc)
    assert g == box([0, 0], [F(1, 2), 1])
    assert volume(g) == F(1, 2)


def test_mixed_primitives_refine_consistently():
    doc = {"dim": 1, "q": 1,
           "primitives": [{"cells": [[0]]}, {"box": {"lo": ["2/1"], "hi": ["5/2"]}}]}
    g = load_grid(doc)
    assert g.q == 2
    assert volume(g) == F(3, 2)


def test_point_primitive_rejected_by_grid_ops():
    doc = {"dim": 2, "q": 1,
           "primitives": [{"cells": [[0, 0]]}, {"point": ["5/1", "5/1"]}]}
    sd = load_set_definition(doc)
    assert sd.points == [(F(5), F(5))]
    with pytest.raises(InputFormatError, match="point primitives"):
        sd.grid_only()


def test_floats_rejected():
    doc = {"dim": 1, "q": 1, "primitives": [{"box": {"lo": [0.5], "hi": [1]}}]}
    with pytest.raises(InputFormatError, match="floats are rejected"):
        load_grid(doc)


def test_malformed_primitives():
    with pytest.raises(InputFormatError, match="unknown kind"):
        load_grid({"dim": 1, "q": 1, "primitives": [{"blob": []}]})
    with pytest.raises(InputFormatError, match="positive length"):
        load_grid({"dim": 1, "q": 1, "primitives": [{"box": {"lo": ["0/1"], "hi": ["0/1"]}}]})
    with pytest.raises(InputFormatError, match="missing field"):
        load_grid({"dim": 1, "primitives": []})
    with pytest.raises(InputFormatError, match="integer"):
        load_grid({"dim": 1, "q": 1, "primitives": [{"cells": [["0"]]}]})


def test_interval_round_trip():
    s = IntervalSet([(0, F(1, 2)), (F(3, 4), F(3, 4))])
    assert load_interval_set(dump_interval_set(s)) == s


def test_polytope_round_trip():
    p = hull_of([(0, 0), (2, 0), (1, 1)])
    doc = dump_polytope(p)
    assert load_polytope(doc) == p
    # redundant vertices are re-hulled away on load
    doc["vertices"].append(["1/2", "1/4"])
    assert load_polytope(doc) == p


def test_plan_round_trip():
    pairs = (((F(0),), (F(3),), F(1, 2)),)
    plan = TransportPlan(pairs=pairs, cost=plan_cost(pairs))
    doc = dump_plan(plan)
    assert doc["cost"] == "9/2"
    assert load_plan(doc) == plan
    doc["cost"] = "1/1"
    with pytest.raises(InputFormatError, match="cost"):
        load_plan(doc)


def test_verdict_json_shape():
    from sumsetlab.theorems import check_thm_iterated

    rep = check_thm_iterated(unit_cube(2), 2)
    doc = rep.to_json_dict()
    assert doc["bound"] == "5/1"
    assert doc["measured"]["ratio"] == "4/1"
    assert doc["holds"] is True
    json.dumps(doc)  # serializable
