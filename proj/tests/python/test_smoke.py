import math

import pytest

import kontsevich as k


def test_quotient_dimensions():
    dims = [k.quotient("circles:1", m, fi=True)["dim"] for m in range(5)]
    assert dims == [1, 0, 1, 1, 3]


def test_full_twist_and_cancellation():
    twist = k.braid_table({"n": 2, "word": [1, 1]}, 1)
    assert abs(twist["coefficients"]["1-2"] - 1) < 1e-9
    cancel = k.braid_table({"n": 2, "word": [1, -1]}, 1)
    assert abs(cancel["coefficients"]["1-2"]) < 1e-9
    assert twist["max_err"] < 1e-8


def test_two_strand_log_ratio():
    graph = {
        "arcs": [
            {"points": [[0, 0, 1 / 3], [0, 0, 2 / 3]]},
            {"points": [[1, 0, 1 / 3], [2, 0, 2 / 3]]},
        ]
    }
    table = k.graph_table(graph, 1)
    expected = complex(0, -math.log(2) / (2 * math.pi))
    assert abs(table["coefficients"]["1-2"] - expected) < 1e-9


def test_closure_and_info():
    hopf = k.closed({"n": 2, "word": [1, 1]}, 1)
    assert hopf["components"] == 2
    info = k.braid_info({"n": 3, "word": [1, 2]})
    assert info["valid"]
    assert sorted(info["permutation"]) == [1, 2, 3]


def test_identifold_and_family():
    circle = [[0.5 * math.cos(2 * math.pi * i / 32), 0, 0.5 + 0.5 * math.sin(2 * math.pi * i / 32)] for i in range(32)]
    shifted = [[x + 1, y, t] for x, y, t in circle]
    scene = {
        "graphs": [
            {"arcs": [{"points": circle, "closed": True}]},
            {"arcs": [{"points": shifted, "closed": True}]},
        ],
        "plans": [
            {"alpha": [[0, 0, 0, 0]], "beta": [[0, 0, 0, 0.5]], "spin": 1},
            {"alpha": [[0, 0, 0, 0]], "beta": [[0, 1, 0, 0.5]], "spin": -1},
        ],
    }
    report = k.identifold(scene, grid=(8, 8))
    assert report["cylinders"] == 2
    assert [i["type"] for i in report["identifications"]] == ["area"]
    entries = k.family(scene, [[0.0, 0.5]], 1)
    assert entries[0]["status"] == "contact"


def test_run_and_errors():
    config = {"command": "zbraid", "max_degree": 2, "braid": {"n": 2, "word": []}}
    status, report, partial = k.run(config)
    assert status == 0 and not partial
    assert report.startswith("# config_hash=" + k.config_hash(config))
    assert k.run(config)[1] == report
    with pytest.raises(k.ValidationError):
        k.braid_table({"n": 2, "word": [3]}, 1)
    with pytest.raises(k.ParseError):
        k.braid_table({"word": [1]}, 1)
    with pytest.raises(k.ResourceError):
        k.braid_table({"n": 2, "word": [1]}, 5)
    assert issubclass(k.NumericalError, k.Error)
