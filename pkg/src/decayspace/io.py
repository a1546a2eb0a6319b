"""File formats and canonical JSON serialization.

Spaces travel as JSON ({"mode", "n", "f", optional "labels"}) or as a
bare CSV decay matrix (node-space). Link systems are JSON with an
inline space or a path to one, a link list, SINR parameters and a
power assignment. Graphs are JSON {"n", "edges"}.

Reports are serialized canonically so identical runs produce
identical bytes: keys sorted, floats printed with repr-faithful 17
significant digits, non-finite floats as the strings "inf", "-inf"
and "nan" (JSON has no literals for them). Timing always sits in one
top-level key that determinism comparisons strip.
"""

import json
import os

import numpy as np

from .spaces import DecaySpace, NODE_SPACE
from .links import LinkSystem, PowerAssignment, SinrParams


def space_to_dict(space):
    out = {"mode": space.mode, "n": space.n, "f": space.f.tolist()}
    if space.labels is not None:
        out["labels"] = list(space.labels)
    return out


def space_from_dict(obj):
    if not isinstance(obj, dict):
        raise ValueError("space document must be a JSON object")
    for key in ("mode", "n", "f"):
        if key not in obj:
            raise ValueError("space document missing %r" % key)
    f = np.array(obj["f"], dtype=float)
    if f.ndim != 2 or f.shape != (obj["n"], obj["n"]):
        raise ValueError("decay matrix shape does not match n=%s" % obj["n"])
    return DecaySpace(f, mode=obj["mode"], labels=obj.get("labels"))


def load_space(path):
    """Read a space from .json or .csv (CSV means a node-space matrix)."""
    if path.endswith(".csv"):
        f = np.loadtxt(path, delimiter=",", ndmin=2)
        return DecaySpace(f, mode=NODE_SPACE)
    with open(path) as fh:
        return space_from_dict(json.load(fh))


def save_space(space, path):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(space_to_dict(space)))
        fh.write("\n")


def system_to_dict(sys):
    out = {
        "space": space_to_dict(sys.space),
        "beta": sys.params.beta,
        "noise": sys.params.noise,
    }
    if sys.links is not None:
        out["links"] = [list(l) for l in sys.links]
    if sys.power.kind == "uniform":
        out["power"] = {"kind": "uniform", "level": sys.power.value}
    else:
        out["power"] = {"kind": "explicit", "levels": sys.power.value.tolist()}
    return out


def system_from_dict(obj, base_dir="."):
    if not isinstance(obj, dict):
        raise ValueError("system document must be a JSON object")
    if "space" not in obj:
        raise ValueError("system document missing 'space'")
    raw_space = obj["space"]
    if isinstance(raw_space, str):
        space = load_space(os.path.join(base_dir, raw_space))
    else:
        space = space_from_dict(raw_space)
    links = obj.get("links")
    if links is not None:
        links = [(int(s), int(r)) for s, r in links]
    params = SinrParams(beta=obj.get("beta", 1.0), noise=obj.get("noise", 0.0))
    power = obj.get("power", {"kind": "uniform", "level": 1.0})
    if power.get("kind") == "uniform":
        pw = PowerAssignment.uniform(power.get("level", 1.0))
    elif power.get("kind") == "explicit":
        pw = PowerAssignment.explicit(power["levels"])
    else:
        raise ValueError("unknown power kind %r" % power.get("kind"))
    return LinkSystem(space, links=links, params=params, power=pw)


def load_system(path):
    with open(path) as fh:
        obj = json.load(fh)
    return system_from_dict(obj, base_dir=os.path.dirname(os.path.abspath(path)))


def save_system(sys, path):
    with open(path, "w") as fh:
        fh.write(dumps_canonical(system_to_dict(sys)))
        fh.write("\n")


def load_graph(path):
    with open(path) as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ValueError("graph document needs 'n' and 'edges'")
    n = int(obj["n"])
    edges = [(int(i), int(j)) for i, j in obj["edges"]]
    return n, edges


def _canon_fragment(obj, parts):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if np.isnan(x):
            parts.append('"nan"')
        elif np.isinf(x):
            parts.append('"inf"' if x > 0 else '"-inf"')
        else:
            parts.append(format(x, ".17g"))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for k, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise TypeError("canonical JSON keys must be strings")
            if k:
                parts.append(",")
            parts.append(json.dumps(key))
            parts.append(":")
            _canon_fragment(obj[key], parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else obj
        parts.append("[")
        for k, item in enumerate(seq):
            if k:
                parts.append(",")
            _canon_fragment(item, parts)
        parts.append("]")
    else:
        raise TypeError("cannot serialize %r canonically" % type(obj))


def dumps_canonical(obj):
    """Deterministic JSON text for a report-like object."""
    parts = []
    _canon_fragment(obj, parts)
    return "".join(parts)


def strip_timing(report):
    """Copy of a report dict without its top-level timing key."""
    return {k: v for k, v in report.items() if k != "timing"}
