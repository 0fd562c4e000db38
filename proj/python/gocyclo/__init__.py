"""Cyclic proofs for the logic Go: checking, cut elimination, translation."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
