"""Bounded color refinement, two variable counting logic and exact integer
network classifiers."""

try:
    from ._c2wl import *  # noqa: F401,F403
    from ._c2wl import __version__  # noqa: F401
except ImportError:  # build tree layout: extension next to this package
    from _c2wl import *  # noqa: F401,F403
    from _c2wl import __version__  # noqa: F401
