"""Service-chain placement with redundancy provisioning over heterogeneous
fog categories: reliability kernels, the placement evaluator and the solvers."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc
