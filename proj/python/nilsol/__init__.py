"""Ricci-soliton checks for codimension-one subgroups of nilpotent Iwasawa groups."""

import json

from . import _core
from ._core import NilsolError

__all__ = ["NilsolError", "list_spaces", "check", "classify", "catalog_run", "verify"]


def list_spaces():
    return list(_core.list_spaces())


def check(space, xi, mode="auto", seed=None):
    """Verdict for one hypersurface as a dict (c and residual are exact strings in exact mode)."""
    return json.loads(_core.check(space, xi, mode, seed))


def classify(space, grid=9):
    return json.loads(_core.classify(space, grid))


def catalog_run(jobs=1):
    return json.loads(_core.catalog_run(jobs))


def verify(suite, space, seed=1, samples=100):
    """(passed, text) for the 'lemmas' or 'geometry' suite."""
    return _core.verify(suite, space, seed, samples)
