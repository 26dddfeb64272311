"""
JSON schema of scenario documents.
"""
from jsonschema import Draft7Validator

NUMBER = {
    "oneOf": [
        {"type": "number"},
        {"type": "string", "pattern": r"^\s*-?\d+(\.\d+)?(/\d+)?\s*$"},
    ],
}

PER_PERIOD = {
    "oneOf": [
        NUMBER,
        {"type": "array", "items": NUMBER, "minItems": 1},
    ],
}

VARIABLE_COST = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["affine", "quadratic", "piecewise"]},
        "slope": NUMBER,
        "linear": NUMBER,
        "quadratic": NUMBER,
        "segments": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": NUMBER, "minItems": 2, "maxItems": 2},
        },
    },
    "additionalProperties": False,
}

UNIT = {
    "type": "object",
    "required": ["id", "g_max", "variable_cost"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "node": {"type": "string"},
        "g_min": PER_PERIOD,
        "g_max": PER_PERIOD,
        "ramp_limit": NUMBER,
        "variable_cost": VARIABLE_COST,
        "no_load_cost": NUMBER,
        "startup_cost": NUMBER,
        "initial_status": {"enum": ["on", "off"]},
        "initial_output": NUMBER,
    },
    "additionalProperties": False,
}

SEGMENT = {"type": "array", "items": NUMBER, "minItems": 2, "maxItems": 2}

CONSUMER = {
    "type": "object",
    "required": ["id"],
    "properties": {
        "id": {"type": "string", "minLength": 1},
        "node": {"type": "string"},
        "fixed_load": PER_PERIOD,
        "elastic_segments": {
            "type": "array",
            "items": {"type": "array", "items": SEGMENT},
        },
        "quadratic_benefit": {
            "type": "object",
            "required": ["linear", "quadratic", "d_max"],
            "properties": {"linear": NUMBER, "quadratic": NUMBER, "d_max": NUMBER},
            "additionalProperties": False,
        },
        "discrete_blocks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["quantity", "price"],
                "properties": {"quantity": PER_PERIOD, "price": NUMBER},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

SCENARIO = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "Scenario",
    "type": "object",
    "required": ["units"],
    "properties": {
        "name": {"type": "string"},
        "periods": {"type": "integer", "minimum": 1},
        "network": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["one-node", "two-node"]},
                "nodes": {"type": "array", "items": {"type": "string"}, "minItems": 1, "maxItems": 2},
                "line_capacity": NUMBER,
            },
            "additionalProperties": False,
        },
        "units": {"type": "array", "items": UNIT, "minItems": 1},
        "consumers": {"type": "array", "items": CONSUMER},
        "sunk_cost_convention": {"enum": ["min-cost"]},
        "rounding_policy": {"enum": ["cent", "exact"]},
    },
    "additionalProperties": False,
}

validator = Draft7Validator(SCENARIO)


def schema_errors(document) -> list:
    """
    Schema violations as (field path, message) pairs, sorted by path.
    """
    errors = []
    for error in validator.iter_errors(document):
        path = ".".join(str(part) if isinstance(part, str) else f"[{part}]" for part in error.absolute_path)
        errors.append((path.replace(".[", "[") or "document", error.message))
    return sorted(errors)
