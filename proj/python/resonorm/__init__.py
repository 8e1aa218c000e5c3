"""Resonant normal forms near a degenerate elliptic fixed point.

Thin wrapper over the compiled core; series and normal forms travel as JSON
strings with exact rational coefficients.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: _core on sys.path next to the build dir
    from _core import *  # noqa: F401,F403
