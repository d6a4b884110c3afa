"""Structure constants of dual Demazure-type classes over a root datum."""

import json

from . import _core
from ._core import AlgebraError, ConfigError, RootDatumError

__all__ = [
    "AlgebraError",
    "ConfigError",
    "RootDatumError",
    "restriction",
    "structure_constants",
    "verify",
    "weyl_group",
]


def weyl_group(type):
    """Reduced words of every Weyl group element, in id order ("" is e)."""
    return json.loads(_core.weyl_group(type))


def structure_constants(type, family="x", fgl=None, u=None, v=None, words="lexmin", provenance="formula", jobs=1):
    """Nonzero structure constants as records {u, v, w, family, backend, value}."""
    return json.loads(_core.structure_constants(type, family, fgl, u, v, words, provenance, jobs))


def restriction(type, w, v, family="x", fgl=None):
    """The value b_{v,I_w} as {num, den}."""
    return json.loads(_core.restriction(type, w, v, family, fgl))


def verify(suite, type=None, corpus=""):
    """Run a check suite: relations, duality or paper-examples (needs corpus)."""
    return json.loads(_core.verify(suite, type, corpus))
