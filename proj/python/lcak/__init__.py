"""Python access to the lcak verification engine.

Reports and eval results come back as plain dicts, decoded from the same
JSON the command-line tool prints.
"""

import json

from ._lcak import (
    DefinitionError,
    DegenerateLeeField,
    LcakError,
    Manifold,
    NotLCaK,
    __version__,
    eval_operations,
    load,
    parse,
    zoo_names,
)
from . import _lcak


def verify(manifold, checks=None, points=25, seed=7, jobs=1, convention="canonical"):
    """Run check suites and return the report as a dict."""
    if isinstance(manifold, str):
        manifold = load(manifold)
    text = _lcak.verify_json(manifold, list(checks or []), points, seed, jobs, convention)
    return json.loads(text)


def evaluate(manifold, op, point, convention="canonical"):
    """Evaluate one operation at one point; returns the ``value`` entry."""
    if isinstance(manifold, str):
        manifold = load(manifold)
    return json.loads(_lcak.eval_json(manifold, op, list(point), convention))["value"]


__all__ = [
    "DefinitionError",
    "DegenerateLeeField",
    "LcakError",
    "Manifold",
    "NotLCaK",
    "__version__",
    "eval_operations",
    "evaluate",
    "load",
    "parse",
    "verify",
    "zoo_names",
]
