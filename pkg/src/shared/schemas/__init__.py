"""_summary_
Draft-07 JSON schemas of the documents the simulator reads.

Functions:
    load_schema(name: str) -> dict: loads '<name>_schema.json' from this package.
    validator_for(name: str) -> Draft7Validator: a cached validator for that schema.
Schemas:
    scene: the scene document (grid, substrate, sources, inoculation, diffusion, engine).
    sites: planar site sets for the oracle command.
"""

import json
import os
from functools import lru_cache
from typing import Any, Dict

from jsonschema import Draft7Validator

SCHEMA_DIR = os.path.dirname(os.path.abspath(__file__))


def load_schema(name: str) -> Dict[str, Any]:
    with open(os.path.join(SCHEMA_DIR, f'{name}_schema.json'), encoding='utf-8') as handle:
        return json.load(handle)


@lru_cache(maxsize=None)
def validator_for(name: str) -> Draft7Validator:
    schema = load_schema(name)
    Draft7Validator.check_schema(schema)
    return Draft7Validator(schema)
