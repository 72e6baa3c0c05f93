"""Stand-alone PV/battery sizing: simulation, economics and multi-objective optimization."""

from ._sspvb import *  # noqa: F401,F403
from ._sspvb import __doc__  # noqa: F401

__version__ = "0.1.0"
