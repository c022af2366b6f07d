"""Numerics for erasure-channel hypercontractivity, entropy inequalities and
common-randomness bounds. Thin re-export of the compiled core."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
