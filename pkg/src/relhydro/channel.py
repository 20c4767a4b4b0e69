"""Finite symmetric representations of the Coulomb channel operators.

A channel operator is e(p_l^2) - gamma/r - (extra potential), represented in
the orthonormal momentum-mode basis of :class:`~relhydro.hankel.HankelOperator`:
the kinetic term is diagonal there and potentials are conjugated sampled
multiplication operators, so the matrix is the Rayleigh-Ritz restriction of
the quadratic form to the resolved subspace.  Enlarging the grid or the
momentum cutoff enlarges that subspace, which is what drives the eigenvalues
down toward their continuum limits.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .grids import RadialGrid
from .hankel import HankelOperator, build_hankel

__all__ = [
    "CRITICAL_COUPLING",
    "CriticalCouplingError",
    "ChannelOperator",
    "Spectrum",
    "build_channel",
    "add_potential",
    "eigensolve",
    "trace_neg",
    "comparability_norm",
    "hardy_defect",
]

CRITICAL_COUPLING = 2.0 / np.pi
RELATIVISTIC = "relativistic"
NONRELATIVISTIC = "nonrelativistic"


class CriticalCouplingError(ValueError):
    """Coupling at or beyond 2/pi: the relativistic operator is unbounded below."""


def dispersion_values(kind: str, k: np.ndarray) -> np.ndarray:
    if kind == RELATIVISTIC:
        return np.sqrt(k * k + 1.0) - 1.0
    if kind == NONRELATIVISTIC:
        return 0.5 * k * k
    raise ValueError(f"unknown dispersion {kind!r}")


@dataclass(frozen=True)
class ChannelOperator:
    """Symmetric matrix for C_l - gamma/r - extra, in the channel mode basis."""

    ell: int
    gamma: float
    dispersion: str
    grid: RadialGrid
    basis: HankelOperator
    matrix: np.ndarray
    extra_potential: np.ndarray | None = None  # samples of the potential
                                               # subtracted beyond -gamma/r

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def scale(self) -> float:
        return float(np.max(np.abs(np.diagonal(self.matrix))))


@dataclass(frozen=True)
class Spectrum:
    """Negative spectrum of one channel operator."""

    eigenvalues: np.ndarray      # ascending, all < -eps_cut
    eigenfunctions: np.ndarray   # (count, n_grid), unit discrete L^2(dr) norm
    eps_cut: float
    count: int
    grid: RadialGrid


def build_channel(gamma: float, ell: int, dispersion: str, grid: RadialGrid,
                  basis: HankelOperator | None = None) -> ChannelOperator:
    """Assemble e(p_l^2) - gamma/r in the channel mode basis.

    Relativistic dispersion requires 0 <= gamma < 2/pi; beyond the critical
    coupling the quadratic form is unbounded below and the build is refused.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if dispersion == RELATIVISTIC and gamma >= CRITICAL_COUPLING:
        raise CriticalCouplingError(
            f"gamma={gamma} >= 2/pi: relativistic channel operator unbounded below")
    if basis is None:
        basis = build_hankel(ell, grid)
    e = dispersion_values(dispersion, basis.k_nodes)
    M = np.diag(e)
    if gamma != 0.0:
        M = M - gamma * basis.sampled_matrix(1.0 / grid.r_nodes)
    M = 0.5 * (M + M.T)
    return ChannelOperator(ell=int(ell), gamma=float(gamma), dispersion=dispersion,
                           grid=grid, basis=basis, matrix=M)


def add_potential(op: ChannelOperator, u_samples: np.ndarray, lam: float) -> ChannelOperator:
    """Return the operator for C_l - gamma/r - lam * U; the input is unchanged."""
    u = np.asarray(u_samples, dtype=float)
    if not np.all(np.isfinite(u)):
        raise ValueError("potential samples must be finite at all grid nodes")
    if lam == 0.0:
        return replace(op, matrix=op.matrix.copy())
    M = op.matrix - lam * op.basis.sampled_matrix(u)
    extra = lam * u if op.extra_potential is None else op.extra_potential + lam * u
    return replace(op, matrix=0.5 * (M + M.T), extra_potential=extra)


def eigensolve(op: ChannelOperator, eps_cut: float | None = None) -> Spectrum:
    """All eigenvalues below -eps_cut, with normalized grid eigenfunctions.

    The default cut is 1e-6 * gamma^2 (the natural Rydberg scale); states
    trapped between -eps_cut and 0 are left to the truncation accounting of
    the density layer.
    """
    if eps_cut is None:
        eps_cut = 1e-6 * op.gamma**2 if op.gamma > 0 else 1e-12
    if eps_cut <= 0:
        raise ValueError("eps_cut must be positive")
    try:
        vals, vecs = eigh(op.matrix)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RuntimeError(f"eigensolver failed for ell={op.ell}: {exc}") from exc
    sel = vals < -eps_cut
    vals = vals[sel]
    vecs = vecs[:, sel]
    w = op.grid.r_weights
    funcs = np.empty((vals.size, op.grid.n))
    for j in range(vals.size):
        u = op.basis.kernel_values.T @ vecs[:, j]
        nz = np.flatnonzero(np.abs(u) > 1e-8)
        if nz.size and u[nz[0]] < 0:
            u = -u
        psi = u / np.sqrt(w)
        psi /= np.sqrt(np.sum(w * psi * psi))
        funcs[j] = psi
    return Spectrum(eigenvalues=vals, eigenfunctions=funcs,
                    eps_cut=float(eps_cut), count=int(vals.size), grid=op.grid)


def trace_neg(op: ChannelOperator) -> float:
    """tr (op)_- : absolute sum of the negative eigenvalues."""
    vals = eigvalsh(op.matrix)
    return float(-np.sum(vals[vals < 0.0]))


def comparability_norm(gamma: float, ell: int, s: float, M: float,
                       grid: RadialGrid, basis: HankelOperator | None = None,
                       dispersion: str = RELATIVISTIC) -> float:
    """Spectral norm of (C_l - gamma/r + M)^{-s} (C_l + M)^{s}.

    Admissible exponents: s <= 1 for gamma < 1/2, and s < 3/2 - sigma_gamma
    for 1/2 <= gamma < 2/pi.
    """
    from .bounds import sigma_gamma

    if not 0 <= gamma < CRITICAL_COUPLING:
        raise CriticalCouplingError(f"gamma={gamma} outside [0, 2/pi)")
    if gamma < 0.5:
        if s > 1.0:
            raise ValueError(f"s={s} > 1 not admissible for gamma={gamma} < 1/2")
    else:
        s_max = 1.5 - sigma_gamma(gamma)
        if s >= s_max:
            raise ValueError(
                f"s={s} >= 3/2 - sigma_gamma = {s_max:.6f} not admissible for gamma={gamma}")
    if basis is None:
        basis = build_hankel(ell, grid)
    op_h = build_channel(gamma, ell, dispersion, grid, basis=basis)
    vals_h, vecs_h = eigh(op_h.matrix)
    if M <= -vals_h[0]:
        raise ValueError(f"M={M} must exceed -inf spec = {-vals_h[0]:.6g}")
    free = dispersion_values(dispersion, basis.k_nodes)
    left = (vecs_h * ((vals_h + M) ** (-s))[None, :]) @ vecs_h.T
    prod = left * ((free + M) ** s)[None, :]
    return float(np.linalg.norm(prod, 2))


def hardy_defect(ell: int, grid: RadialGrid, delta: float = 0.0,
                 basis: HankelOperator | None = None) -> float:
    """Lowest eigenvalue of p_l^2 - (1+delta)(l+1/2)^2 / r^2.

    At delta = 0 this is the channel Hardy form, non-negative for the exact
    operator and for this discretization (up to roundoff).  Positive delta
    over-weights the centrifugal subtraction and must go negative on fine
    grids, which is the sharpness probe.
    """
    if ell < 0:
        raise ValueError("ell must be non-negative")
    if basis is None:
        basis = build_hankel(ell, grid)
    H = basis.hardy_matrix(delta=delta)
    return float(eigvalsh(H)[0])
