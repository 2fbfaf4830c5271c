"""End-to-end smoke tests for the python module."""

import json
import math
import os

import periflex

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "fixtures")


def load(name):
    with open(os.path.join(FIXTURES, name)) as f:
        return f.read()


def test_lattice_helpers():
    assert periflex.hnf(2, [[2, 2], [4, 4]]) == [[2, 2]]
    assert periflex.hnf(2, [[1, 0], [0, 1], [5, 7]]) == [[1, 0], [0, 1]]
    assert periflex.subgroup_contains(2, [[2, 0]], [4, 0])
    assert not periflex.subgroup_contains(2, [[2, 0]], [1, 0])
    assert periflex.coset_line(2, [1, 1], [[0, 2]], [1, 1]) == 1
    assert periflex.coset_line(2, [1, 0], [[0, 2]], [0, 1]) is None


def test_analyze_fixture():
    report = json.loads(periflex.analyze(load("z1_row_grid.json"), "flex1"))
    assert report["verdict"] == "Flexible"
    assert report["recipe"] in ("OnePeriodicGrid", "FixedLatticeShear")

    report2 = json.loads(periflex.analyze(load("z2_theta_loops.json"), "flex2"))
    assert report2["verdict"] == "Flexible"
    assert report2["recipe"] == "Type2Scissor"


def test_colouring_enumeration_and_classify():
    lines = periflex.colourings(load("z1_double_square.json"), "fixed", 10)
    assert lines
    first = json.loads(lines[0])
    assert first["classification"]["fixed_lattice"]["ok"]

    cls = json.loads(
        periflex.classify(load("z2_theta_loops.json"), load("z2_theta_loops_printed.json"))
    )
    assert cls["type2"]["ok"]
    assert cls["type2"]["alpha"] == [1, 0]
    assert cls["type2"]["beta"] == [0, 1]


def test_construct_sample_verify_pipeline():
    flex_json = periflex.construct(
        load("z2_row_scissor.json"), load("z2_row_scissor_printed.json")
    )
    doc = json.loads(flex_json)
    assert doc["kind"] == "Type2Scissor"

    report = json.loads(periflex.verify(flex_json, 64, 1e-9))
    assert report["max_edge_residual"] < 1e-9
    assert report["nontrivial"]["ok"]
    assert report["scissor"]["ok"]
    assert report["scissor"]["range"] > 1.9

    frame = json.loads(periflex.sample(flex_json, 0.0))
    assert len(frame["p"]) == 6
    # base lattice has full rank
    det = frame["L"][0][0] * frame["L"][1][1] - frame["L"][0][1] * frame["L"][1][0]
    assert abs(det) > 1e-9

    csv = periflex.sample_csv(flex_json, 0.0, 2 * math.pi, 5)
    rows = csv.strip().split("\n")
    assert len(rows) == 6
    assert rows[0].split(",")[0] == "t"


def test_switch_preserves_classification():
    graph = load("z2_theta_loops.json")
    switched = periflex.switch_vertex(graph, "2", [3, -1])
    cls = json.loads(periflex.classify(switched, load("z2_theta_loops_printed.json")))
    assert cls["type2"]["ok"]
    assert cls["type2"]["alpha"] == [1, 0]
