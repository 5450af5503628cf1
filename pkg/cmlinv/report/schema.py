# JSON schema for computation reports (draft-7)
from typing import Any, Dict, Optional, Tuple

from jsonschema import Draft7Validator, ValidationError, validate

SCHEMA_VERSION = 1

PADIC = {
    "type": "object",
    "required": ["p", "f", "val", "digits", "prec"],
    "properties": {
        "p": {"type": "integer", "minimum": 3},
        "f": {"type": "integer", "minimum": 1},
        "val": {"type": ["integer", "null"]},
        "digits": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "prec": {"type": "integer"},
    },
    "additionalProperties": False,
}

ROOT = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

EXPANSION = {
    "type": "object",
    "required": ["label", "weight", "nmax", "coeffs"],
    "properties": {
        "label": {"type": "string"},
        "weight": {"type": "string"},
        "nmax": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "object",
                   "patternProperties": {"^[0-9]+$": {"anyOf": [{"$ref": "#/definitions/padic"},
                                                                {"type": "integer"}]}},
                   "additionalProperties": False},
    },
}

REPORT_SCHEMA: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "cmlinv report",
    "type": "object",
    "definitions": {"padic": PADIC, "root": ROOT, "expansion": EXPANSION},
    "required": ["schema", "config", "setting", "invariants", "identities", "expansions",
                 "cross_ratios", "checks", "precision"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "config": {"type": "object"},
        "setting": {
            "type": "object",
            "required": ["D", "p", "psi", "psi_order", "h", "d1", "d2", "f", "prec", "psi_table"],
            "properties": {
                "D": {"type": "integer", "minimum": 3},
                "p": {"type": "integer", "minimum": 3},
                "psi_table": {"type": "object", "additionalProperties": {"$ref": "#/definitions/root"}},
            },
        },
        "invariants": {
            "type": "object",
            "required": ["L_p", "S_phi", "S_phibar", "L_minus_phi", "L_minus_phibar", "L", "Lbar",
                         "xi", "split", "nonsplit", "provenance"],
            "properties": {
                "L_p": {"$ref": "#/definitions/padic"},
                "S_phi": {"$ref": "#/definitions/padic"},
                "S_phibar": {"$ref": "#/definitions/padic"},
                "L_minus_phi": {"$ref": "#/definitions/padic"},
                "L_minus_phibar": {"$ref": "#/definitions/padic"},
                "L": {"$ref": "#/definitions/padic"},
                "Lbar": {"$ref": "#/definitions/padic"},
                "xi": {"$ref": "#/definitions/padic"},
                "nonsplit": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "object",
                        "required": ["L_l", "L_psi", "L_phi_lambda", "psi_tau_gamma"],
                        "properties": {"psi_tau_gamma": {"$ref": "#/definitions/root"}},
                    },
                },
            },
        },
        "identities": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "digits", "ok"],
                "properties": {"name": {"type": "string"}, "digits": {"type": "integer"},
                               "ok": {"type": "boolean"}},
            },
        },
        "expansions": {
            "type": "object",
            "required": ["f", "theta", "f_dag_F", "f_dag_Theta", "f_dag_psi"],
            "additionalProperties": {"$ref": "#/definitions/expansion"},
        },
        "cross_ratios": {"type": "object", "required": ["xi", "lines", "sections", "ok"]},
        "checks": {"type": "object"},
        "precision": {
            "type": "object",
            "required": ["prec", "required_digits"],
            "properties": {"prec": {"type": "integer"}, "required_digits": {"type": "integer"}},
        },
    },
}

Draft7Validator.check_schema(REPORT_SCHEMA)


def validate_report(doc: Dict[str, Any]) -> Tuple[bool, Optional[str]]:
    try:
        validate(instance=doc, schema=REPORT_SCHEMA)
        return True, None
    except ValidationError as e:
        return False, e.message
