"""JSON Schemas for every document the command line emits.

Arbitrary-precision values (counts, S, mu, weights) are decimal strings.
"""

_INT_STR = {"type": "string", "pattern": r"^-?[0-9]+$"}
_DEC_STR = {"type": "string", "pattern": r"^-?[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?$"}
_PARTITION = {"type": "string", "pattern": r"^\[([0-9]+(,[0-9]+)*)?\]$"}

_BASE = {
    "command": {"type": "string"},
    "ell": {"type": "integer", "minimum": 3},
}

VALUE = {
    "type": "object",
    "required": ["command", "ell", "value"],
    "properties": {**_BASE, "value": _INT_STR, "a": _PARTITION, "c": _PARTITION},
}

S_VALUE = {
    "type": "object",
    "required": ["command", "ell", "a", "c", "value", "method"],
    "properties": {
        **_BASE,
        "a": _PARTITION,
        "c": _PARTITION,
        "value": _INT_STR,
        "method": {"enum": ["chain", "conv", "both"]},
        "methods_agree": {"type": "boolean"},
        "chains": _INT_STR,
    },
}

TABLE = {
    "type": "object",
    "required": ["command", "ell", "rows"],
    "properties": {
        **_BASE,
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": {"type": ["string", "boolean"]},
            },
        },
    },
}

_REPORT = {
    "type": "object",
    "required": ["check", "ell", "bound", "pairs_checked", "counterexamples"],
    "properties": {
        "check": {"type": "string"},
        "ell": {"type": "integer", "minimum": 3},
        "bound": {"type": "integer", "minimum": 0},
        "pairs_checked": {"type": "integer", "minimum": 0},
        "counterexamples": {"type": "array", "items": {"type": "object"}},
        "tallies": {"type": "object", "additionalProperties": {"type": "integer"}},
    },
}

VERIFY = {
    "type": "object",
    "required": ["command", "ell", "bound", "pairs_checked", "counterexamples", "checks"],
    "properties": {
        **_BASE,
        "bound": {"type": "integer", "minimum": 0},
        "pairs_checked": {"type": "integer", "minimum": 0},
        "counterexamples": {"type": "array", "items": {"type": "object"}},
        "checks": {"type": "array", "items": _REPORT},
    },
}

MEASURE = {
    "type": "object",
    "required": ["ell", "M", "N", "precision", "weights", "total_mass"],
    "properties": {
        **_BASE,
        "M": {"type": "integer", "minimum": 0},
        "N": {"type": ["integer", "null"], "minimum": 1},
        "precision": {"type": "integer", "minimum": 2},
        "weights": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_PARTITION, _DEC_STR], "minItems": 2, "maxItems": 2},
        },
        "total_mass": _DEC_STR,
    },
}

REAL_VALUE = {
    "type": "object",
    "required": ["command", "ell", "value"],
    "properties": {**_BASE, "value": _DEC_STR, "lower": _DEC_STR, "upper": _DEC_STR},
}

LATTICE = {
    "type": "object",
    "required": ["ell", "shape", "subgroups", "covers"],
    "properties": {
        "ell": {"type": "integer"},
        "shape": _PARTITION,
        "subgroups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "order", "iso_type"],
                "properties": {"index": {"type": "integer"}, "order": _INT_STR, "iso_type": _PARTITION},
            },
        },
        "covers": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
    },
}

BY_COMMAND = {
    "sub": VALUE,
    "inj": VALUE,
    "aut": VALUE,
    "surj": VALUE,
    "s": S_VALUE,
    "interval": TABLE,
    "chains": TABLE,
    "mu": TABLE,
    "amalgam": VALUE,
    "verify": VERIFY,
    "cl-nu": REAL_VALUE,
    "cl-measure": MEASURE,
    "cl-moment": REAL_VALUE,
}
