"""Top-k news recommendation via multi-winner voting rules.

Thin wrapper around the compiled extension; everything public lives there.
"""

from ._voterec import *  # noqa: F401,F403
from ._voterec import __doc__  # noqa: F401

__version__ = "0.1.0"
