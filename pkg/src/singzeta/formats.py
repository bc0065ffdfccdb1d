"""JSON encodings of semigroups, ring models and curves, plus shipped fixtures."""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .global_zeta import SingularCurveModel, SingularPoint, SmoothCurveZeta
from .oracle import RingModel
from .semigroup import GoodSemigroup, from_modulus, from_small_elements, numerical_from_generators


def load_json(source: str):
    """Parse ``source`` as inline JSON, a file path, or a shipped fixture name."""
    text = source.strip()
    if text.startswith("{"):
        return json.loads(text)
    path = Path(source)
    if path.exists():
        return json.loads(path.read_text())
    name = source if source.endswith(".json") else source + ".json"
    if name in fixture_names():
        return load_fixture(name)
    raise FileNotFoundError(f"no such file or fixture: {source}")


def _require(obj: dict, key: str):
    if key not in obj:
        raise ValueError(f"missing key {key!r} in {obj.get('kind', 'object')} description")
    return obj[key]


def semigroup_from_json(obj: dict) -> GoodSemigroup:
    kind = obj.get("kind")
    if kind == "numerical":
        return numerical_from_generators(_require(obj, "generators"))
    if kind == "modulus":
        return from_modulus(_require(obj, "multiplicities"))
    if kind == "semigroup":
        return from_small_elements(int(_require(obj, "d")), tuple(_require(obj, "conductor")),
                                   [tuple(s) for s in _require(obj, "small")])
    raise ValueError(f"not a semigroup description: kind={kind!r}")


def semigroup_to_json(S: GoodSemigroup) -> dict:
    return {"kind": "semigroup", "d": S.d, "conductor": list(S.conductor),
            "small": [list(s) for s in S.sorted_small()]}


def model_from_json(obj: dict) -> RingModel:
    if obj.get("kind") != "ring_model":
        raise ValueError(f"not a ring model description: kind={obj.get('kind')!r}")
    d = int(_require(obj, "d"))
    conductor = tuple(_require(obj, "conductor"))
    truncation = obj.get("truncation")
    return RingModel.build(int(_require(obj, "p")), d,
                           [tuple(tuple(br) for br in g) for g in _require(obj, "generators")],
                           conductor, tuple(truncation) if truncation else None)


def curve_from_json(obj: dict) -> SingularCurveModel:
    if obj.get("kind") != "curve":
        raise ValueError(f"not a curve description: kind={obj.get('kind')!r}")
    q = int(_require(obj, "q"))
    name = obj.get("normalization", "P1")
    numerator = tuple(obj.get("numerator", [1]))
    if name == "P1" and numerator != (1,):
        raise ValueError("P1 has numerator 1")
    points = []
    for pt in obj.get("singular_points", []):
        S = semigroup_from_json(_require(pt, "semigroup"))
        points.append(SingularPoint(S, int(pt.get("branches", S.d))))
    support = tuple(1 for p in points for _ in range(p.branches))
    return SingularCurveModel(SmoothCurveZeta(q, numerator, name), tuple(points), support,
                              modulus=all(p.semigroup.small == {(0,) * p.branches, p.semigroup.conductor}
                                          for p in points))


def fixture_names() -> list[str]:
    root = resources.files("singzeta") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> dict:
    if not name.endswith(".json"):
        name += ".json"
    return json.loads((resources.files("singzeta") / "fixtures" / name).read_text())
