"""Classical and quantum (Szegedy) PageRank on directed networks."""

from ._qpagerank import *  # noqa: F401,F403
from ._qpagerank import __version__  # noqa: F401
