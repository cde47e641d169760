"""JSON Schemas (draft 2020-12) for the payload of every CLI subcommand.

The schemas are plain dictionaries so that the package itself needs no
validator; the test-suite checks golden runs against them.
"""

from __future__ import annotations

_STR = {"type": "string"}
_INT = {"type": "integer"}
_STRS = {"type": "array", "items": _STR}
_INTS = {"type": "array", "items": _INT}
_NULLABLE_STR = {"type": ["string", "null"]}

ERROR = {
    "type": "object",
    "required": ["command", "error"],
    "properties": {
        "command": _NULLABLE_STR,
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {
                "type": _STR,
                "message": _STR,
                "stage": _STR,
                "line": {"type": ["integer", "null"]},
                "column": {"type": ["integer", "null"]},
                "required_order": _INT,
            },
        },
    },
}

CERTIFICATE = {
    "type": "object",
    "required": ["instance", "sigma", "generators", "L", "N", "words", "verdict", "rank", "trace", "timings"],
    "properties": {
        "instance": _STR,
        "sigma": _STR,
        "generators": {
            "type": "object",
            "required": ["G1", "G2"],
            "additionalProperties": {
                "type": "object",
                "required": ["num", "den"],
                "properties": {"num": _STR, "den": _STR},
            },
        },
        "L": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 1},
        "words": {**_STRS, "minItems": 2},
        "verdict": {"enum": ["INDEPENDENT", "DEPENDENT", "INCONCLUSIVE"]},
        "rank": _INT,
        "relation": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "prefixItems": [_STR, _STR], "minItems": 2, "maxItems": 2},
        },
        "pivots": {"type": "array", "items": {**_INTS, "minItems": 3, "maxItems": 3}},
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["N", "rank", "words", "outcome"],
                "properties": {"N": _INT, "rank": _INT, "words": _INT, "outcome": _STR},
            },
        },
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
    "allOf": [
        {"if": {"properties": {"verdict": {"const": "INDEPENDENT"}}}, "then": {"required": ["pivots"]}},
        {"if": {"properties": {"verdict": {"const": "DEPENDENT"}}}, "then": {"required": ["relation"]}},
    ],
}

CERTIFY = {
    "type": "object",
    "required": ["command", "certificate"],
    "properties": {"command": {"const": "certify"}, "certificate": CERTIFICATE},
}

_OBSTRUCTION = {
    "type": "object",
    "required": ["kind"],
    "properties": {
        "kind": {"enum": ["pole-orbit", "constant-term"]},
        "representative": _STR,
        "orbit": {"type": "array", "items": {"type": "array", "prefixItems": [_STR, _INT]}},
        "residue": _STR,
        "residue_terms": {"type": "array", "items": {"type": "array", "prefixItems": [_INT, _STR]}},
        "constant": _STR,
        "reason": _STR,
    },
}

SIGMA_SOLVE = {
    "type": "object",
    "required": ["command", "mode", "sigma", "verdict"],
    "properties": {
        "command": {"const": "sigma-solve"},
        "mode": {"enum": ["solve", "hypothesis", "weyl"]},
        "sigma": _STR,
        "f": _STR,
        "fixed_field": _STR,
        "verdict": {
            "type": "object",
            "required": ["status"],
            "properties": {
                "status": {"enum": ["SOLVABLE", "UNSOLVABLE", "HYPOTHESIS_HOLDS", "FAILS", "YES", "NO"]},
                "u": _STR,
                "e": _STR,
                "obstruction": _OBSTRUCTION,
            },
            "allOf": [
                {"if": {"properties": {"status": {"enum": ["SOLVABLE", "FAILS", "YES"]}}},
                 "then": {"required": ["u"]}},
                {"if": {"properties": {"status": {"enum": ["UNSOLVABLE", "HYPOTHESIS_HOLDS"]}}},
                 "then": {"required": ["obstruction"]}},
                {"if": {"properties": {"status": {"const": "FAILS"}}}, "then": {"required": ["e"]}},
            ],
        },
    },
}

PROFILE = {
    "type": "object",
    "required": ["horizon", "f", "g", "cumulative"],
    "properties": {"horizon": _INT, "f": _INTS, "g": _INTS, "cumulative": _INTS},
}

PERIODIC = {
    "type": "object",
    "required": ["status"],
    "properties": {
        "status": {"enum": ["FOUND", "NOT_FOUND"]},
        "u": _STR,
        "index": _INT,
        "reason": {"enum": ["finite", "growth"]},
        "construction": {"type": "object"},
        "proof": {
            "type": "object",
            "required": ["states", "cycle_start", "cycle_length"],
            "properties": {"states": _INTS, "cycle_start": _INT, "cycle_length": {"type": "integer", "minimum": 1}},
        },
        "profile": PROFILE,
    },
    "allOf": [
        {"if": {"properties": {"status": {"const": "FOUND"}}}, "then": {"required": ["u", "index", "proof"]}},
        {"if": {"properties": {"status": {"const": "NOT_FOUND"}}}, "then": {"required": ["reason"]}},
    ],
}

DICHOTOMY = {
    "type": "object",
    "required": ["kind", "profile"],
    "properties": {
        "kind": {"enum": ["PERIODIC", "BINOMIAL_GROWTH", "NOT_FOUND"]},
        "profile": PROFILE,
        "d": _INT,
        "u": _NULLABLE_STR,
        "periodic": PERIODIC,
        "binomial": _INTS,
    },
}

WORDS = {
    "type": "object",
    "required": ["command", "mode", "alphabet", "forbid"],
    "properties": {
        "command": {"const": "words"},
        "mode": {"enum": ["dichotomy", "periodic", "growth", "member"]},
        "alphabet": _STR,
        "forbid": _STRS,
        "states": _INT,
        "infinite": {"type": "boolean"},
        "dichotomy": DICHOTOMY,
        "periodic": PERIODIC,
        "profile": PROFILE,
        "membership": {"type": "object", "additionalProperties": {"type": "boolean"}},
    },
}

TESTBED = {
    "type": "object",
    "required": ["command", "action"],
    "properties": {
        "command": {"const": "testbed"},
        "action": {"enum": ["centralizer", "clear-denominator", "embed", "verify"]},
        "a": _STR,
        "w": _STR,
        "basis": _STRS,
        "dimension": {"enum": [2, 4]},
        "p": _STR,
        "cofactor": _STR,
        "identity_checked": {"type": "boolean"},
        "order": _INT,
        "series": _STR,
        "coefficients": {"type": "array", "items": {"type": "array", "prefixItems": [_INT, _STR]}},
        "status": {"enum": ["IN_Zt", "NOT_COMMUTING", "COMMUTING_BUT_OUTSIDE"]},
        "offending": {"type": "array"},
    },
}

SPECIALIZE = {
    "type": "object",
    "required": ["command", "report"],
    "properties": {
        "command": {"const": "specialize"},
        "report": {
            "type": "object",
            "required": ["elements", "denominators", "basis", "matrix", "verdict", "bad_points", "minors_checked"],
            "properties": {
                "elements": _STRS,
                "denominators": _STRS,
                "basis": _STRS,
                "matrix": {"type": "array", "items": _STRS},
                "verdict": {"enum": ["INDEPENDENT", "DEPENDENT"]},
                "minors_checked": _INT,
                "bad_points": _STRS,
                "justification": {"type": "array"},
                "irrational_bad": _STRS,
                "relation": _STRS,
                "minor_gcd": _STR,
            },
        },
        "samples": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["alpha", "rank", "full_rank"],
                "properties": {"alpha": _STR, "rank": {"type": ["integer", "null"]}, "full_rank": {"type": "boolean"},
                               "pole": _STR},
            },
        },
    },
}

RUN = {
    "type": "object",
    "required": ["command", "result"],
    "properties": {
        "command": {"const": "run"},
        "out": _STR,
        "result": {
            "type": "object",
            "required": ["instance", "kind", "seed", "timings"],
            "properties": {
                "instance": _STR,
                "kind": {"enum": ["freeness", "words"]},
                "seed": _INT,
                "sigma": _STR,
                "b": _NULLABLE_STR,
                "hypothesis": {"oneOf": [{"type": "null"}, SIGMA_SOLVE["properties"]["verdict"]]},
                "certification": {"enum": ["run", "run (hypothesis fails)", "skipped"]},
                "certificate": {"oneOf": [{"type": "null"}, CERTIFICATE]},
                "spot_checks": {"type": "array"},
                "words": {"type": "object"},
                "timings": {"type": "object"},
            },
        },
    },
}

INSTANCES = {
    "type": "object",
    "required": ["command", "instances"],
    "properties": {
        "command": {"const": "instances"},
        "instances": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind", "path"],
                "properties": {"name": _STR, "kind": _STR, "description": _STR, "path": _STR},
            },
        },
    },
}

SCHEMA_CMD = {
    "type": "object",
    "required": ["command", "name", "schema"],
    "properties": {"command": {"const": "schema"}, "name": _STR, "schema": {"type": "object"}},
}

SCHEMAS = {
    "certify": CERTIFY,
    "sigma-solve": SIGMA_SOLVE,
    "words": WORDS,
    "testbed": TESTBED,
    "specialize": SPECIALIZE,
    "run": RUN,
    "instances": INSTANCES,
    "schema": SCHEMA_CMD,
    "error": ERROR,
}


def schema_for(command: str) -> dict:
    return {"$schema": "https://json-schema.org/draft/2020-12/schema", **SCHEMAS[command]}
