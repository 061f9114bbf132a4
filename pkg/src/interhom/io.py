"""JSON formats for complexes, interaction spaces and maps.

Space: ``{"complex": [[v, ...], ...], "parts": [[[v, ...], ...], ...]}``.
Map: ``{"maps": [{"0": 3, ...}, ...], "source": <space>, "target": <space>}``.
Faces may be omitted everywhere; closure is applied on load.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .complex import InteractionSpace, MalformedSimplexError, SimplicialComplex, make_complex
from .maps import InteractionMap


class SchemaError(ValueError):
    """Input does not follow the expected JSON layout."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def load_json(path: str | os.PathLike) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(str(path), f"invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _simplex_list(obj, field: str) -> SimplicialComplex:
    if not isinstance(obj, list):
        raise SchemaError(field, "expected a list of vertex lists")
    for k, s in enumerate(obj):
        if not isinstance(s, list):
            raise SchemaError(f"{field}[{k}]", "expected a list of vertex ids")
    try:
        return make_complex(obj)
    except MalformedSimplexError as exc:
        raise SchemaError(field, str(exc)) from None


def complex_from_json(obj, field: str = "complex") -> SimplicialComplex:
    if not isinstance(obj, dict) or "complex" not in obj:
        raise SchemaError(field, 'expected an object with a "complex" list')
    return _simplex_list(obj["complex"], f"{field}.complex")


def space_from_json(obj, field: str = "space") -> InteractionSpace:
    total = complex_from_json(obj, field)
    parts = obj.get("parts")
    if not isinstance(parts, list) or not parts:
        raise SchemaError(f"{field}.parts", "expected a nonempty list of parts")
    return InteractionSpace(total, tuple(
        _simplex_list(p, f"{field}.parts[{i}]") for i, p in enumerate(parts)))


def map_from_json(obj, field: str = "map") -> InteractionMap:
    if not isinstance(obj, dict):
        raise SchemaError(field, "expected an object")
    for key in ("maps", "source", "target"):
        if key not in obj:
            raise SchemaError(f"{field}.{key}", "missing")
    maps = obj["maps"]
    if not isinstance(maps, list):
        raise SchemaError(f"{field}.maps", "expected a list of vertex maps")
    vertex_maps = []
    for i, m in enumerate(maps):
        if not isinstance(m, dict):
            raise SchemaError(f"{field}.maps[{i}]", "expected an object")
        try:
            vertex_maps.append({int(k): int(v) for k, v in m.items()})
        except (TypeError, ValueError):
            raise SchemaError(f"{field}.maps[{i}]", "keys and values must be integers") from None
    return InteractionMap(tuple(vertex_maps),
                          space_from_json(obj["source"], f"{field}.source"),
                          space_from_json(obj["target"], f"{field}.target"))


def complex_to_json(K: SimplicialComplex) -> list[list[int]]:
    return [list(s) for s in K.simplices]


def space_to_json(space: InteractionSpace) -> dict:
    return {"complex": complex_to_json(space.total),
            "parts": [complex_to_json(p) for p in space.parts]}


def map_to_json(m: InteractionMap) -> dict:
    return {"maps": [{str(k): v for k, v in sorted(f.items())} for f in m.vertex_maps],
            "source": space_to_json(m.source), "target": space_to_json(m.target)}


def scalar_to_json(x):
    """Integers stay integers; other rationals become ``"a/b"`` strings."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
