import json

import pytest

from gmdm.environment import Circle, ConvexPolygon
from gmdm.scenario import ScenarioError, load_scenario, scenario_from_dict, scenario_to_dict


@pytest.mark.parametrize("name", ["corridor", "maze", "clutter"])
def test_fixtures_load_and_roundtrip(scenario_dir, name):
    sc = load_scenario(scenario_dir / f"{name}.json")
    assert sc.start is not None and sc.goal is not None
    assert not sc.env.blocked(sc.start.x, sc.start.y)
    assert not sc.env.blocked(sc.goal.x, sc.goal.y)
    again = scenario_from_dict(json.loads(json.dumps(scenario_to_dict(sc))))
    assert scenario_to_dict(again) == scenario_to_dict(sc)


def test_defaults():
    sc = scenario_from_dict({})
    assert sc.env.is_empty and sc.start is None
    assert (sc.limits.v_min, sc.limits.v_max) == (0.3, 1.0)
    assert sc.risk.t_star == 3.0 and sc.risk.lam == 2.0


def test_obstacle_kinds():
    sc = scenario_from_dict({"obstacles": [
        {"type": "circle", "center": [1, 2], "radius": 0.5},
        {"type": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]},
    ]})
    assert isinstance(sc.env.obstacles[0], Circle)
    assert isinstance(sc.env.obstacles[1], ConvexPolygon)


@pytest.mark.parametrize("data", [
    {"obstacles": [{"type": "blob"}]},
    {"obstacles": [{"type": "circle", "center": [0, 0]}]},
    {"start": [1, 2]},
    {"vehicle": {"v_min": 2.0, "v_max": 1.0}},
    {"bounds": {"xmin": 0}},
    {"obstacles": [{"type": "polygon", "vertices": [[0, 0], [1, 1], [0, 1], [1, 0]]}]},
])
def test_errors(data):
    with pytest.raises(ScenarioError):
        scenario_from_dict(data)


def test_bad_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(ValueError):
        load_scenario(p)
