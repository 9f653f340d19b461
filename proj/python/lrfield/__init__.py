"""Long-range dependent random fields, Hermite functionals and their
discretisation-distance experiments."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
