"""Weak-value numerical laboratory.

Thin python layer over the C++ core: states and operators, analytic weak
values, probe-free operational estimators, finite-trial statistics, and the
Gaussian-probe cross-validation oracle.
"""

from wvlab._core import *  # noqa: F401,F403
from wvlab._core import __version__  # noqa: F401
