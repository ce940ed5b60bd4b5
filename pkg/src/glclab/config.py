"""Experiment configuration: YAML (or JSON) documents checked against a
versioned JSON schema. Unknown keys are errors."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import jsonschema
import yaml

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
EMBEDDED = {
    "type": "object",
    "properties": {
        "field": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
        "root": {"type": "integer", "minimum": 0},
        "coords": {"type": "array", "items": RATIONAL},
    },
    "required": ["field", "root", "coords"],
    "additionalProperties": False,
}
SCALAR = {"oneOf": [RATIONAL, EMBEDDED]}
POLY = {"type": "array", "items": {"type": "integer"}, "minItems": 2}
FIELD = {
    "type": "object",
    "properties": {"poly": POLY},
    "required": ["poly"],
    "additionalProperties": False,
}
COORD_VECTORS = {"type": "array", "items": {"type": "array", "items": RATIONAL, "minItems": 1}, "minItems": 1}

LATTICE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "basis": {"type": "array", "items": {"type": "array", "items": SCALAR, "minItems": 1}, "minItems": 1},
                "scale": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "properties": {"rows": {"type": "array", "items": {"type": "integer"}}, "covol_sq": RATIONAL},
                        "required": ["rows", "covol_sq"],
                        "additionalProperties": False,
                    },
                },
                "field_type": {"oneOf": [POLY, {"type": "null"}]},
                "det_sq": {"oneOf": [RATIONAL, {"type": "null"}]},
            },
            "required": ["basis"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"field": FIELD, "klattice": COORD_VECTORS},
            "required": ["field"],
            "additionalProperties": False,
        },
    ]
}
GRID = {
    "type": "object",
    "properties": {"lattice": LATTICE, "t": {"type": "array", "items": SCALAR}},
    "required": ["lattice"],
    "additionalProperties": False,
}

_COMMON = {
    "schema_version": {"const": SCHEMA_VERSION},
    "command": {"type": "string"},
    "name": {"type": "string"},
}


def _doc(props: dict, required: list) -> dict:
    return {
        "type": "object",
        "properties": {**_COMMON, **props},
        "required": ["schema_version", *required],
        "additionalProperties": False,
    }


POSITIVE = {"type": "number", "exclusiveMinimum": 0}

SCHEMAS = {
    "scan": _doc(
        {
            "grids": {"type": "array", "items": GRID, "minItems": 1},
            "R": RATIONAL,
            "n_max": {"type": "integer", "minimum": 1},
            "rounds": {"type": "integer", "minimum": 1},
        },
        ["grids", "R", "n_max"],
    ),
    "orbit": _doc(
        {
            "grids": {"type": "array", "items": GRID, "minItems": 1},
            "rays": {"type": "array", "items": {"type": "array", "items": RATIONAL, "minItems": 2}, "minItems": 1},
            "t_max": RATIONAL,
            "steps": {"type": "integer", "minimum": 1},
            "base": RATIONAL,
            "k_max": {"type": "integer", "minimum": 0},
        },
        ["grids", "t_max", "steps"],
    ),
    "nf": _doc(
        {
            "field": FIELD,
            "lattice": COORD_VECTORS,
            "height": {"type": "integer", "minimum": 1},
            "units": COORD_VECTORS,
            "thetas": COORD_VECTORS,
            "random_thetas": {"type": "integer", "minimum": 0},
            "theta_range": {"type": "integer", "minimum": 1},
            "fl": {
                "type": "object",
                "properties": {
                    "denominator": {"type": "integer", "minimum": 1},
                    "mode": {"enum": ["multiples", "all"]},
                },
                "required": ["denominator"],
                "additionalProperties": False,
            },
        },
        ["field"],
    ),
    "dim": _doc(
        {
            "fixture": {"enum": ["cantor", "square", "points"]},
            "depth": {"type": "integer", "minimum": 1, "maximum": 20},
            "n_points": {"type": "integer", "minimum": 1},
            "points": {"type": "array", "items": {"type": "array", "items": {"type": "number"}, "minItems": 1}},
            "metric": {"enum": ["euclidean", "sup", "torus"]},
            "eps": {
                "oneOf": [
                    {"type": "array", "items": POSITIVE, "minItems": 4},
                    {
                        "type": "object",
                        "properties": {"max": POSITIVE, "min": POSITIVE, "rows": {"type": "integer", "minimum": 4}},
                        "required": ["max", "min", "rows"],
                        "additionalProperties": False,
                    },
                ]
            },
            "drop_large": {"type": "number", "minimum": 0, "maximum": 1},
            "drop_small": {"type": "number", "minimum": 0, "maximum": 1},
            "covers": {"type": "boolean"},
        },
        ["fixture", "eps"],
    ),
    "entropy": _doc(
        {
            "map": {"enum": ["identity", "doubling", "rotation"]},
            "rotation": {"type": "number"},
            "n_points": {"type": "integer", "minimum": 1},
            "metric": {"enum": ["euclidean", "sup", "torus"]},
            "eps": {"type": "array", "items": POSITIVE, "minItems": 1},
            "n_range": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
        },
        ["map", "eps", "n_range"],
    ),
}
# a cloud supplied as raw points must come with its distance oracle
SCHEMAS["dim"]["allOf"] = [
    {"if": {"properties": {"fixture": {"const": "points"}}}, "then": {"required": ["points", "metric"]}}
]


def load_config(path: str | Path) -> dict:
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: not valid YAML/JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def validate(cfg: dict, command: str) -> dict:
    if command not in SCHEMAS:
        raise ConfigError(f"no schema for command {command!r}")
    if cfg.get("command", command) != command:
        raise ConfigError(f"config is for command {cfg['command']!r}, not {command!r}")
    v = jsonschema.Draft202012Validator(SCHEMAS[command])
    errors = sorted(v.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(map(str, e.absolute_path)) or "<root>"
        raise ConfigError(f"schema error at {where}: {e.message}")
    return cfg


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(canonical_json(cfg).encode()).hexdigest()
