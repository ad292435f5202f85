"""Double-well bosonic ground-state pipeline.

Thin wrapper over the compiled core: discretization, self-consistent ground
profile, mean-field spectrum, projected pair-mode problem, quadratic
excitation corrections, small-system exact diagonalization, and the scan
harness.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
