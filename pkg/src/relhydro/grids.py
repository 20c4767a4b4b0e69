"""Logarithmic radial grids for the half-line L^2(R_+, dr).

The whole toolkit works on exponentially mapped nodes r_i = r_min * exp(i*h),
which resolve both the Coulomb region r << 1 and the Rydberg tails r >> 1
with a single spacing parameter.  Quadrature weights are the trapezoid rule
in t = log r, i.e. w_i = h * r_i; for integrands decaying at both window ends
this rule is exponentially accurate.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["RadialGrid", "build_grid", "refine"]


@dataclass(frozen=True)
class RadialGrid:
    """Log-spaced nodes and weights on (0, infinity).

    ``k_max`` is the requested momentum cutoff for channel bases built on this
    grid.  Momentum nodes themselves are channel-adapted (they depend on the
    angular momentum) and live on :class:`~relhydro.hankel.HankelOperator`.
    """

    r_nodes: np.ndarray
    r_weights: np.ndarray
    r_min: float
    r_max: float
    n: int
    h: float
    k_max: float

    def __post_init__(self):
        r = self.r_nodes
        if not (np.all(np.diff(r) > 0) and r[0] > 0):
            raise ValueError("grid nodes must be strictly positive and increasing")
        if not np.all(self.r_weights > 0):
            raise ValueError("grid weights must be strictly positive")

    def norm(self, samples: np.ndarray) -> float:
        """Discrete L^2(dr) norm of sampled values."""
        return float(np.sqrt(np.sum(self.r_weights * np.asarray(samples) ** 2)))

    def integrate(self, samples: np.ndarray) -> float:
        return float(np.sum(self.r_weights * np.asarray(samples)))

    def key(self) -> tuple:
        return (self.n, float(self.r_min), float(self.r_max), float(self.k_max))


def build_grid(r_min: float = 1e-7, r_max: float = 1e3, n: int = 1024,
               k_max: float = 1e4) -> RadialGrid:
    """Build a log-spaced radial grid.

    Parameters
    ----------
    r_min, r_max : window ends (both strictly positive, ``r_min < r_max``).
    n : number of nodes, at least 16.
    k_max : momentum cutoff handed to channel bases built on this grid.
    """
    if not (0 < r_min < r_max):
        raise ValueError(f"need 0 < r_min < r_max, got ({r_min}, {r_max})")
    if n < 16:
        raise ValueError(f"need at least 16 nodes, got {n}")
    if k_max <= 0:
        raise ValueError("k_max must be positive")
    h = (np.log(r_max) - np.log(r_min)) / (n - 1)
    r = np.exp(np.log(r_min) + h * np.arange(n))
    w = h * r
    return RadialGrid(r_nodes=r, r_weights=w, r_min=float(r_min),
                      r_max=float(r_max), n=int(n), h=float(h), k_max=float(k_max))


def refine(grid: RadialGrid, factor: int = 2) -> RadialGrid:
    """Same window, ``factor`` times the node count."""
    return build_grid(grid.r_min, grid.r_max, factor * grid.n, grid.k_max)
