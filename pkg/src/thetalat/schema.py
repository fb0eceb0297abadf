"""Tiny structural validator for the JSON schemas shipped in schemas/.

Supports the subset those schemas use: type (single or list), required,
properties, items, enum, additionalProperties. Returns problem strings so
callers can assert emptiness or report precisely.
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_DIR = Path(__file__).parent / "schemas"

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "boolean": bool,
    "null": type(None),
}


def load_schema(name: str) -> dict:
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def _type_ok(value, tname: str) -> bool:
    if tname == "integer":
        return isinstance(value, int) and not isinstance(value, bool)
    if tname == "number":
        return (isinstance(value, (int, float))
                and not isinstance(value, bool))
    return isinstance(value, _TYPES[tname])


def check(value, schema: dict, path: str = "$") -> list:
    problems = []
    tspec = schema.get("type")
    if tspec is not None:
        names = tspec if isinstance(tspec, list) else [tspec]
        if not any(_type_ok(value, t) for t in names):
            problems.append(f"{path}: expected {names}, got "
                            f"{type(value).__name__}")
            return problems
    if "enum" in schema and value not in schema["enum"]:
        problems.append(f"{path}: {value!r} not in {schema['enum']}")
    if isinstance(value, dict):
        props = schema.get("properties", {})
        for req in schema.get("required", ()):
            if req not in value:
                problems.append(f"{path}: missing required key {req!r}")
        if schema.get("additionalProperties") is False:
            for k in value:
                if k not in props:
                    problems.append(f"{path}: unexpected key {k!r}")
        for k, sub in props.items():
            if k in value:
                problems.extend(check(value[k], sub, f"{path}.{k}"))
    elif isinstance(value, list) and "items" in schema:
        for i, item in enumerate(value):
            problems.extend(check(item, schema["items"], f"{path}[{i}]"))
    return problems


def conforms(value, schema_name: str) -> list:
    return check(value, load_schema(schema_name))
