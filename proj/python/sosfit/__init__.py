"""Weibull and exponential lifetime fitting for sequential order statistics
under the power-trend conditionally proportional hazard model.

Thin wrapper over the C++ extension; see the individual functions'
docstrings and the project README for usage.
"""

try:
    from ._sosfit import *  # noqa: F401,F403  (installed package layout)
    from ._sosfit import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree test layout
    from _sosfit import *  # noqa: F401,F403
    from _sosfit import __version__  # noqa: F401
