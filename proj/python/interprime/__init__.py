"""Python bindings for the interprime C++ library."""

from ._core import *  # noqa: F401,F403
from ._core import DomainError, NoLocalRoot, Poly, __version__  # noqa: F401
