"""Truncated Fock-space toolkit for heralded photonic vortex states."""

from ._vortexlab import *  # noqa: F401,F403
from ._vortexlab import __doc__  # noqa: F401

__version__ = "0.1.0"
