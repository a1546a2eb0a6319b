"""File formats and the canonical JSON used for deterministic reports."""

import json

import numpy as np
import pytest

from decayspace import (
    DecaySpace,
    LinkSystem,
    PowerAssignment,
    SinrParams,
    dumps_canonical,
    gen_euclidean,
    load_graph,
    load_space,
    load_system,
    save_space,
    save_system,
    space_from_dict,
    space_to_dict,
    strip_timing,
    system_from_dict,
    system_to_dict,
)


def small_space():
    f = np.array([[0.0, 0.1, 2.0], [0.1, 0.0, 1.0 / 3.0], [2.0, 1.0 / 3.0, 0.0]])
    return DecaySpace(f, labels=["a", "b", "c"])


def test_space_json_round_trip(tmp_path):
    sp = small_space()
    path = str(tmp_path / "space.json")
    save_space(sp, path)
    back = load_space(path)
    assert np.array_equal(back.f, sp.f)  # 17 digit floats survive exactly
    assert back.labels == ["a", "b", "c"]
    assert back.mode == sp.mode


def test_space_csv_round_trip(tmp_path):
    sp = gen_euclidean(np.random.default_rng(4).uniform(size=(5, 2)), 2.0)
    path = str(tmp_path / "space.csv")
    np.savetxt(path, sp.f, delimiter=",")
    back = load_space(path)
    assert back.mode == "node-space"
    assert np.allclose(back.f, sp.f, rtol=0, atol=0)


def test_space_from_dict_errors():
    with pytest.raises(ValueError):
        space_from_dict([1, 2, 3])
    with pytest.raises(ValueError):
        space_from_dict({"mode": "node-space", "n": 2})
    with pytest.raises(ValueError):
        space_from_dict({"mode": "node-space", "n": 3, "f": [[0.0, 1.0], [1.0, 0.0]]})


def test_system_round_trip(tmp_path):
    sp = gen_euclidean([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [1.0, 2.0]], 2.0)
    sys = LinkSystem(
        sp,
        links=[(0, 1), (2, 3)],
        params=SinrParams(beta=2.0, noise=0.01),
        power=PowerAssignment.explicit([1.0, 2.0]),
    )
    path = str(tmp_path / "system.json")
    save_system(sys, path)
    back = load_system(path)
    assert np.array_equal(back.space.f, sp.f)
    assert back.links == [(0, 1), (2, 3)]
    assert back.params.beta == 2.0 and back.params.noise == 0.01
    assert back.power.kind == "explicit"
    assert np.array_equal(back.power.value, [1.0, 2.0])


def test_system_defaults_and_uniform_power():
    sp = space_to_dict(small_space())
    sys = system_from_dict({"space": sp, "links": [[0, 1]]})
    assert sys.params.beta == 1.0 and sys.params.noise == 0.0
    assert sys.power.kind == "uniform" and sys.power.value == 1.0
    with pytest.raises(ValueError):
        system_from_dict({"space": sp, "links": [[0, 1]], "power": {"kind": "odd"}})
    with pytest.raises(ValueError):
        system_from_dict({"links": [[0, 1]]})
    with pytest.raises(ValueError):
        system_from_dict([1])


def test_system_space_by_path(tmp_path):
    save_space(small_space(), str(tmp_path / "shared.json"))
    doc = {"space": "shared.json", "links": [[0, 1], [1, 2]]}
    sys = system_from_dict(doc, base_dir=str(tmp_path))
    assert sys.space.n == 3 and sys.links == [(0, 1), (1, 2)]

    syspath = tmp_path / "sys.json"
    syspath.write_text(json.dumps(doc))
    again = load_system(str(syspath))  # resolves relative to its own file
    assert np.array_equal(again.space.f, sys.space.f)


def test_load_graph(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [2, 3]]}))
    assert load_graph(str(path)) == (4, [(0, 1), (2, 3)])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 4}))
    with pytest.raises(ValueError):
        load_graph(str(bad))
    bad.write_text(json.dumps([1, 2]))
    with pytest.raises(ValueError):
        load_graph(str(bad))


def test_canonical_json_basics():
    assert dumps_canonical({"b": 1, "a": 2}) == '{"a":2,"b":1}'
    assert dumps_canonical([True, False, None]) == "[true,false,null]"
    assert dumps_canonical(0.5) == "0.5"
    assert dumps_canonical(float("nan")) == '"nan"'
    assert dumps_canonical(float("inf")) == '"inf"'
    assert dumps_canonical(float("-inf")) == '"-inf"'
    assert dumps_canonical(np.int64(5)) == "5"
    assert dumps_canonical(np.float64(0.25)) == "0.25"
    assert dumps_canonical(np.array([1.0, 2.0])) == "[1,2]"


def test_canonical_json_round_trips_floats():
    obj = {"xs": [0.1, 1.0 / 3.0, 2.0 ** -40], "n": 3, "name": "probe"}
    text = dumps_canonical(obj)
    assert json.loads(text) == obj
    assert dumps_canonical(json.loads(text)) == text


def test_canonical_json_is_order_invariant():
    a = {"one": 1, "two": {"x": [1.5], "y": None}}
    b = {"two": {"y": None, "x": [1.5]}, "one": 1}
    assert dumps_canonical(a) == dumps_canonical(b)


def test_canonical_json_rejects_exotic_objects():
    with pytest.raises(TypeError):
        dumps_canonical({1: "non-string key"})
    with pytest.raises(TypeError):
        dumps_canonical({"a": {2, 3}})
    with pytest.raises(TypeError):
        dumps_canonical({"flag": np.bool_(True)})


def test_strip_timing_is_shallow():
    rep = {"a": 1, "timing": {"seconds": 2.0}, "inner": {"timing": "keep"}}
    out = strip_timing(rep)
    assert out == {"a": 1, "inner": {"timing": "keep"}}
    assert "timing" in rep  # original untouched
