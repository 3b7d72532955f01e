"""Distance-ratio metric on punctured disks and sharp Lipschitz constants of
disk automorphisms. Thin wrapper over the C++ extension ``jratio._core``."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
