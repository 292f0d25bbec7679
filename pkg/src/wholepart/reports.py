"""JSON schemas for everything the CLI prints with --format json."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema

SCHEMA_NAMES = (
    "chain",
    "dcpo",
    "density",
    "displacement",
    "nt",
    "phase_ubiquity",
    "sp_embed",
    "star",
    "state",
    "topo",
    "ubiquity",
)


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"no schema named {name!r}")
    text = resources.files("wholepart").joinpath("schemas", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate(payload: dict, name: str) -> None:
    """Raise jsonschema.ValidationError when ``payload`` does not match."""
    jsonschema.validate(payload, load_schema(name))
