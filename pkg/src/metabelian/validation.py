"""Validation of JSON documents against the schemas shipped in ``schemas/``."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource

from .errors import MalformedInputError

SCHEMA_NAMES = ("poly", "module", "group", "map", "certificate", "report")


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(name)
    text = resources.files("metabelian").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _registry() -> Registry:
    pairs = [(f"{n}.schema.json", Resource.from_contents(load_schema(n))) for n in SCHEMA_NAMES]
    return Registry().with_resources(pairs)


@lru_cache(maxsize=None)
def _validator(name: str) -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(load_schema(name), registry=_registry())


def validate(instance, name: str) -> None:
    """Raise :class:`MalformedInputError` if ``instance`` violates schema ``name``."""
    error = jsonschema.exceptions.best_match(_validator(name).iter_errors(instance))
    if error is not None:
        where = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise MalformedInputError(f"{name} document invalid at {where}: {error.message}")
