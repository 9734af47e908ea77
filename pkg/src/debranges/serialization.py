"""Descriptor and spectra input/output.

JSON descriptors cover entire functions, spaces, and Jacobi matrices;
each has a published schema validated on read.  Spectra travel either
as CSV (one real per line, '#' comments allowed) or as JSON {"x": [...]}.

A finite spectra file is taken at face value; a file with at least
``AUTO_TRUNCATED_AT`` values is treated as a truncated sample of an
infinite spectrum unless a ``# truncated: false`` directive says
otherwise, and the directive always wins when present.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
from jsonschema import Draft202012Validator

from .errors import ConfigurationError, ParseError
from .functions import (
    CanonicalProduct,
    ComplexExponential,
    LinearCombination,
    PointwiseProduct,
    Polynomial,
    RemovedZeroQuotient,
    StructuredEntireFunction,
)
from .jacobi import JacobiMatrix
from .space import DeBrangesSpace, SpaceConfig, custom_space, paley_wiener_space, polynomial_space
from .zeros import ZeroSequence

__all__ = [
    "FUNCTION_SCHEMA",
    "SPACE_SCHEMA",
    "JACOBI_SCHEMA",
    "AUTO_TRUNCATED_AT",
    "function_to_descriptor",
    "function_from_descriptor",
    "space_to_descriptor",
    "space_from_descriptor",
    "jacobi_from_descriptor",
    "load_spectra",
    "save_spectra",
    "load_json",
]

# Spectra files at least this long are assumed to be truncated samples
# of infinite spectra unless a directive comment overrides it.
AUTO_TRUNCATED_AT = 1000

_VARIANTS = (
    "complex-exponential",
    "polynomial",
    "linear-combination",
    "canonical-product",
    "pointwise-product",
    "removed-zero-quotient",
)

FUNCTION_SCHEMA = {
    "$id": "debranges/function.schema.json",
    "$ref": "#/$defs/function",
    "$defs": {
        "function": {
            "type": "object",
            "required": ["variant", "params"],
            "additionalProperties": False,
            "properties": {
                "variant": {"enum": list(_VARIANTS)},
                "params": {"type": "object"},
            },
        },
    },
}

SPACE_SCHEMA = {
    "$id": "debranges/space.schema.json",
    "type": "object",
    "required": ["kind"],
    "oneOf": [
        {
            "properties": {"kind": {"const": "polynomial"},
                           "N": {"type": "integer", "minimum": 1}},
            "required": ["kind", "N"],
            "additionalProperties": False,
        },
        {
            "properties": {"kind": {"const": "paley-wiener"},
                           "a": {"type": "number", "exclusiveMinimum": 0}},
            "required": ["kind", "a"],
            "additionalProperties": False,
        },
        {
            "properties": {"kind": {"const": "custom"},
                           "e": {"type": "object"}},
            "required": ["kind", "e"],
            "additionalProperties": False,
        },
    ],
}

_RULE_SCHEMA = {
    "oneOf": [
        {"type": "array", "items": {"type": "number"}, "minItems": 2},
        {
            "type": "object",
            "required": ["rule"],
            "properties": {
                "rule": {"enum": ["geometric", "constant"]},
                "ratio": {"type": "number"},
                "value": {"type": "number"},
            },
            "additionalProperties": False,
        },
    ]
}

JACOBI_SCHEMA = {
    "$id": "debranges/jacobi.schema.json",
    "type": "object",
    "required": ["b", "q", "N"],
    "additionalProperties": False,
    "properties": {
        "b": _RULE_SCHEMA,
        "q": _RULE_SCHEMA,
        "N": {"type": "integer", "minimum": 2},
    },
}


def _validate(instance, schema, what: str):
    errors = sorted(Draft202012Validator(schema).iter_errors(instance),
                    key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<root>"
        raise ParseError(f"invalid {what} descriptor at {where}: {first.message}")


def _c_out(value) -> list:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def _c_in(value, what: str) -> complex:
    try:
        re_, im = float(value[0]), float(value[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"{what} must be a [re, im] pair") from exc
    return complex(re_, im)


def function_to_descriptor(f: StructuredEntireFunction) -> dict:
    if isinstance(f, ComplexExponential):
        return {"variant": "complex-exponential", "params": {"rate": _c_out(f.rate)}}
    if isinstance(f, Polynomial):
        return {"variant": "polynomial",
                "params": {"coefficients": [_c_out(c) for c in f.coeffs]}}
    if isinstance(f, LinearCombination):
        return {"variant": "linear-combination",
                "params": {"weights": [_c_out(w) for w in f.weights],
                           "terms": [function_to_descriptor(t) for t in f.terms]}}
    if isinstance(f, PointwiseProduct):
        return {"variant": "pointwise-product",
                "params": {"left": function_to_descriptor(f.left),
                           "right": function_to_descriptor(f.right)}}
    if isinstance(f, CanonicalProduct):
        return {"variant": "canonical-product",
                "params": {"zeros": [float(v) for v in f.zeros.values],
                           "truncated": bool(f.zeros.truncated)}}
    if isinstance(f, RemovedZeroQuotient):
        return {"variant": "removed-zero-quotient",
                "params": {"numerator": function_to_descriptor(f.numerator),
                           "removed": [_c_out(x) for x in f.removed]}}
    raise ConfigurationError(f"cannot serialize {type(f).__name__}")


def function_from_descriptor(desc: dict) -> StructuredEntireFunction:
    _validate(desc, FUNCTION_SCHEMA, "function")
    variant, params = desc["variant"], desc["params"]
    try:
        if variant == "complex-exponential":
            return ComplexExponential(_c_in(params["rate"], "rate"))
        if variant == "polynomial":
            return Polynomial(tuple(_c_in(c, "coefficient")
                                    for c in params["coefficients"]))
        if variant == "linear-combination":
            return LinearCombination(
                tuple(_c_in(w, "weight") for w in params["weights"]),
                tuple(function_from_descriptor(t) for t in params["terms"]))
        if variant == "pointwise-product":
            return PointwiseProduct(function_from_descriptor(params["left"]),
                                    function_from_descriptor(params["right"]))
        if variant == "canonical-product":
            zeros = ZeroSequence(np.asarray(params["zeros"], dtype=float),
                                 truncated=bool(params.get("truncated", False)))
            return CanonicalProduct(zeros)
        if variant == "removed-zero-quotient":
            return RemovedZeroQuotient(
                function_from_descriptor(params["numerator"]),
                tuple(_c_in(x, "removed zero") for x in params["removed"]))
    except KeyError as exc:
        raise ParseError(f"{variant} descriptor is missing field {exc}") from exc
    raise ParseError(f"unknown function variant {variant!r}")


def space_to_descriptor(space: DeBrangesSpace) -> dict:
    desc = space.describe()
    if desc["kind"] == "custom":
        desc["e"] = function_to_descriptor(space.hb.e)
    return desc


def space_from_descriptor(desc: dict, config: SpaceConfig | None = None) -> DeBrangesSpace:
    _validate(desc, SPACE_SCHEMA, "space")
    if desc["kind"] == "polynomial":
        return polynomial_space(int(desc["N"]), config=config)
    if desc["kind"] == "paley-wiener":
        return paley_wiener_space(float(desc["a"]), config=config)
    return custom_space(function_from_descriptor(desc["e"]), config=config)


def _sequence_from_rule(spec, n: int, what: str) -> np.ndarray:
    if isinstance(spec, list):
        if len(spec) < n:
            raise ConfigurationError(f"{what} list is shorter than N={n}")
        return np.asarray(spec, dtype=float)[:n]
    rule = spec["rule"]
    if rule == "geometric":
        if "ratio" not in spec:
            raise ParseError(f"{what} geometric rule needs a ratio")
        return float(spec["ratio"]) ** np.arange(1, n + 1, dtype=float)
    if rule == "constant":
        if "value" not in spec:
            raise ParseError(f"{what} constant rule needs a value")
        return np.full(n, float(spec["value"]))
    raise ParseError(f"unknown {what} rule {rule!r}")


def jacobi_from_descriptor(desc: dict) -> JacobiMatrix:
    _validate(desc, JACOBI_SCHEMA, "jacobi")
    n = int(desc["N"])
    return JacobiMatrix(_sequence_from_rule(desc["b"], n, "b"),
                        _sequence_from_rule(desc["q"], n, "q"))


def load_json(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def load_spectra(path) -> ZeroSequence:
    """Read a spectra file (CSV one real per line, or JSON {"x": [...]})."""
    path = Path(path)
    truncated = None
    if path.suffix.lower() == ".json":
        payload = load_json(path)
        if not isinstance(payload, dict) or "x" not in payload:
            raise ParseError(f"{path}: spectra JSON must be an object with an 'x' array")
        values = payload["x"]
        truncated = payload.get("truncated")
    else:
        values = []
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        for ln, raw in enumerate(text.splitlines(), start=1):
            line, _, comment = raw.partition("#")
            comment = comment.strip().lower()
            if comment.startswith("truncated:"):
                flag = comment.split(":", 1)[1].strip()
                if flag not in ("true", "false"):
                    raise ParseError(f"{path}:{ln}: truncated directive must be true or false")
                truncated = flag == "true"
            line = line.strip()
            if not line:
                continue
            try:
                values.append(float(line))
            except ValueError as exc:
                raise ParseError(f"{path}:{ln}: not a real number: {line!r}") from exc
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ParseError(f"{path}: no spectra values found")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{path}: spectra contain non-finite values")
    arr = np.sort(arr)
    if arr.size > 1 and np.min(np.diff(arr)) <= 0.0:
        raise ParseError(f"{path}: spectra values must be distinct")
    if truncated is None:
        truncated = bool(arr.size >= AUTO_TRUNCATED_AT)
    return ZeroSequence(arr, truncated=bool(truncated))


def save_spectra(path, zeros: ZeroSequence, header: str = "") -> None:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append(f"# truncated: {'true' if zeros.truncated else 'false'}")
    lines.extend(repr(float(v)) for v in zeros.values)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
