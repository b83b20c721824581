"""Hyperbolic cone-manifold computations (isometries, tubes, smoothing
curvatures, Schlafli volumes, Gromov-Hausdorff approximations)."""

from ._core import *  # noqa: F401,F403
from ._core import HypconeError

__all__ = [name for name in dir() if not name.startswith("_")]
