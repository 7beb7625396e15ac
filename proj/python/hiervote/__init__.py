"""Reliability of direct and hierarchical majority voting."""

from ._core import *  # noqa: F401,F403
from ._core import HiervoteError

__all__ = [name for name in dir() if not name.startswith("_")]
