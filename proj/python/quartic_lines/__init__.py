"""Lines on quartic surfaces over finite fields."""

import json

from . import _core
from ._core import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_VIOLATION,
    SCHEMA,
    QuarticError,
    catalog_names,
    field_order,
    max_min_bound,
)

__all__ = [
    "EXIT_ERROR",
    "EXIT_OK",
    "EXIT_VIOLATION",
    "SCHEMA",
    "QuarticError",
    "analyze",
    "catalog_names",
    "census",
    "field_order",
    "max_min_bound",
    "run_cli",
    "run_entry",
]


def analyze(quartic, field, k=2, threads=1, seed=1):
    return json.loads(_core.analyze(quartic, field, k, threads, seed, False))


def census(quartic, field, k=2, threads=1):
    """Census and incidence graph only."""
    return json.loads(_core.analyze(quartic, field, k, threads, 1, True))


def run_entry(name, threads=1):
    return json.loads(_core.run_entry(name, threads))


def run_cli(*args):
    return _core.run_cli([str(a) for a in args])
