"""JSON manifests describing an F-structure on a chart, and the built-in examples."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import jsonschema

from fstruct.chart import ChartManifold
from fstruct.expr import ExprError
from fstruct.fstructure import FStructure
from fstruct.tensor import TensorField11

_RATIONAL = {"type": ["string", "integer"],
             "pattern": r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$"}
_MATRIX = {"type": "array", "minItems": 1,
           "items": {"type": "array", "minItems": 1, "items": {"type": ["string", "integer"]}}}

SCHEMA = {
    "type": "object",
    "required": ["chart", "F", "alpha", "beta", "K"],
    "additionalProperties": False,
    "properties": {
        "chart": {
            "type": "object",
            "required": ["vars"],
            "additionalProperties": False,
            "properties": {
                "vars": {"type": "array", "minItems": 1, "uniqueItems": True,
                         "items": {"type": "string", "pattern": r"^[A-Za-z_][A-Za-z_0-9]*$"}},
                "nonvanishing": {"type": "array", "items": {"type": "string"}},
            },
        },
        "F": _MATRIX,
        "Fhat": _MATRIX,
        "alpha": _RATIONAL,
        "beta": _RATIONAL,
        "K": {"type": "integer", "minimum": 3},
        "name": {"type": "string"},
    },
}


class ManifestError(ValueError):
    """Schema or content problem; ``pointer`` is the JSON pointer of the offending value."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    return Fraction(str(value).replace(" ", ""))


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def validate(data) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ManifestError(e.message, _pointer(e.absolute_path))
    n = len(data["chart"]["vars"])
    for key in ("F", "Fhat"):
        if key not in data:
            continue
        rows = data[key]
        if len(rows) != n:
            raise ManifestError(f"expected {n} rows, found {len(rows)}", f"/{key}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ManifestError(f"expected {n} entries, found {len(row)}", f"/{key}/{i}")


@dataclass(frozen=True)
class Manifest:
    chart: ChartManifold
    F: TensorField11
    alpha: Fraction
    beta: Fraction
    K: int
    Fhat: TensorField11 | None = None
    name: str | None = None

    @classmethod
    def from_dict(cls, data) -> Manifest:
        validate(data)
        c = data["chart"]
        try:
            chart = ChartManifold(tuple(c["vars"]), tuple(c.get("nonvanishing", ())))
        except (ExprError, ValueError) as exc:
            raise ManifestError(str(exc), "/chart") from exc
        F = _matrix(chart, data["F"], "/F")
        Fhat = _matrix(chart, data["Fhat"], "/Fhat") if "Fhat" in data else None
        return cls(chart, F, parse_rational(data["alpha"]), parse_rational(data["beta"]),
                   data["K"], Fhat, data.get("name"))

    def to_dict(self) -> dict:
        out = {}
        if self.name is not None:
            out["name"] = self.name
        out["chart"] = {"vars": list(self.chart.vars),
                        "nonvanishing": [str(e) for e in self.chart.nonvanishing]}
        out["F"] = self.F.to_strings()
        out["alpha"] = format_rational(self.alpha)
        out["beta"] = format_rational(self.beta)
        out["K"] = self.K
        if self.Fhat is not None:
            out["Fhat"] = self.Fhat.to_strings()
        return out

    def structure(self, **kwargs) -> FStructure:
        return FStructure.from_matrix(self.F, self.alpha, self.beta, self.K, **kwargs)


def _matrix(chart: ChartManifold, rows, where: str) -> TensorField11:
    parsed = []
    for i, row in enumerate(rows):
        out = []
        for j, entry in enumerate(row):
            try:
                out.append(chart.expr(str(entry)))
            except ExprError as exc:
                raise ManifestError(str(exc), f"{where}/{i}/{j}") from exc
        parsed.append(out)
    return TensorField11.from_rows(chart, parsed)


def load_manifest(path) -> Manifest:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"invalid JSON: {exc}") from exc
    return Manifest.from_dict(data)


# The four worked examples.  Example 2's Fhat is [[a, b], [-(1+a^2)/b, -a]]
# at a = 0, b = 1; this family squares to -I.
BUILTIN = {
    1: {
        "name": "example 1",
        "chart": {"vars": ["x", "y"], "nonvanishing": ["y"]},
        "F": [["-1", "y"], ["-1/y", "2"]],
        "alpha": "1", "beta": "-2", "K": 3,
    },
    2: {
        "name": "example 2",
        "chart": {"vars": ["x1", "x2"], "nonvanishing": []},
        "F": [["1", "-1"], ["1", "-2"]],
        "alpha": "-1", "beta": "-2", "K": 3,
        "Fhat": [["0", "1"], ["-1", "0"]],
    },
    3: {
        "name": "example 3",
        "chart": {"vars": ["x", "y", "z"], "nonvanishing": ["x"]},
        "F": [["0", "0", "x"], ["0", "0", "0"], ["-1/x", "0", "-1"]],
        "alpha": "1", "beta": "1", "K": 5,
    },
    4: {
        "name": "example 4",
        "chart": {"vars": ["x", "y", "z", "t"], "nonvanishing": ["x"]},
        "F": [["1", "0", "0", "-x"], ["0", "1", "-1/x", "0"], ["0", "x", "0", "0"], ["1/x", "0", "0", "0"]],
        "alpha": "-1", "beta": "1", "K": 5,
    },
}


def builtin_manifest_data(example_id: int) -> dict:
    if example_id not in BUILTIN:
        raise ValueError(f"no built-in example {example_id}; choose from {sorted(BUILTIN)}")
    return json.loads(json.dumps(BUILTIN[example_id]))


def builtin_example(example_id: int) -> Manifest:
    return Manifest.from_dict(builtin_manifest_data(example_id))
