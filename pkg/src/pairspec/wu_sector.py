"""Fixed-N three-mode sector (k, -k, 0) of the particle-conserving model.

The transformed particle-conserving Hamiltonian acts on the basis
|n_k = p+s, n_{-k} = s, n_0 = Ntot - p - 2s> as an upper-bidiagonal matrix:
its spectrum reads off the diagonal eps_k (2s + p) with no numerics, and the
eigenvectors have an exact closed form in the sector coupling
ytilde(k) = 8 pi a / (|B| eps_k).  exp(W) with the nilpotent pair operator W
then maps them to eigenstates of the untransformed model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import ModelParams, ModeParams

__all__ = [
    "WuSector",
    "wu_ytilde",
    "build_transformed_wu",
    "wu_eigenstate",
    "apply_exp_w",
]


@dataclass(frozen=True)
class WuSector:
    """Basis bookkeeping for total particle number Ntot and imbalance p.

    Basis index s = 0 .. dim-1 labels |p+s, s, Ntot-p-2s>; every element
    conserves the total count by construction.
    """

    Ntot: int
    p: int
    mode: ModeParams

    def __post_init__(self) -> None:
        if self.Ntot < 1:
            raise ValueError(f"Ntot must be >= 1, got {self.Ntot}")
        if not 0 <= self.p <= self.Ntot:
            raise ValueError(f"p must lie in [0, Ntot], got {self.p}")

    @property
    def dim(self) -> int:
        return (self.Ntot - self.p) // 2 + 1

    def occupations(self, s: int) -> tuple[int, int, int]:
        return (self.p + s, s, self.Ntot - self.p - 2 * s)


def wu_ytilde(mode: ModeParams, mp: ModelParams) -> float:
    """Sector coupling 8 pi a / (|B| eps_k); 0 in the free limit a = 0.

    Scales like 1/L^3 at fixed k, a, rho.
    """
    if mp.a == 0.0:
        return 0.0
    return 8.0 * math.pi * mp.a / (mp.volume * mode.epsilon)


def _beta(mp: ModelParams) -> float:
    """Off-diagonal coupling strength 8 pi a / |B| (k and -k terms summed)."""
    return 8.0 * math.pi * mp.a / mp.volume


def build_transformed_wu(sector: WuSector, mp: ModelParams) -> np.ndarray:
    """Upper-bidiagonal sector matrix of the transformed Hamiltonian.

    Diagonal eps_k (2s + p); entry (s-1, s) couples s -> s-1 through
    a_k a_{-k} (a_0*)^2 with amplitude
    beta sqrt((p+s) s) sqrt((N0+2)(N0+1)), N0 = Ntot - p - 2s.  The
    sub-diagonal is identically zero and constant offsets are excluded
    (energies are relative to the sector ground).
    """
    dim = sector.dim
    eps = sector.mode.epsilon
    beta = _beta(mp)
    m = np.zeros((dim, dim))
    for s in range(dim):
        m[s, s] = eps * (2 * s + sector.p)
        if s >= 1:
            n0 = sector.Ntot - sector.p - 2 * s
            m[s - 1, s] = beta * math.sqrt((sector.p + s) * s) * math.sqrt(
                (n0 + 2) * (n0 + 1)
            )
    return m


def wu_eigenstate(sector: WuSector, mp: ModelParams, n_index: int) -> np.ndarray:
    """Unit eigenvector of the sector matrix at eigenvalue eps_k (2 n_index + p).

    Closed form (frozen against the back-substitution referee; see the
    regression tests):

        c_s = (ytilde/2)^(-s) binom(n, s)
              [ binom(p+s, s) binom(Ntot-p, 2s) (2s)! ]^(-1/2),  s = 0..n.

    The combinatorial weight differs from a naive reading of the sector
    formula exactly by the binom(Ntot-p, 2s) factor, which carries the
    depletion of the finite condensate; the sector operator is the ground
    truth that fixes it.  In the free limit the eigenvectors are the basis
    vectors themselves.
    """
    dim = sector.dim
    if not 0 <= n_index < dim:
        raise ValueError(f"n_index must lie in [0, {dim - 1}], got {n_index}")
    v = np.zeros(dim)
    if mp.a == 0.0:
        v[n_index] = 1.0
        return v
    ytil = wu_ytilde(sector.mode, mp)
    mtot = sector.Ntot - sector.p
    binom_n = 1.0
    for s in range(n_index + 1):
        if s > 0:
            binom_n *= (n_index - s + 1) / s
        weight = (
            math.comb(sector.p + s, s)
            * math.comb(mtot, 2 * s)
            * math.factorial(2 * s)
        )
        v[s] = (ytil / 2.0) ** (-s) * binom_n / math.sqrt(weight)
    return v / np.linalg.norm(v)


def _w_matrix(sector: WuSector, mp: ModelParams, sign: float) -> np.ndarray:
    """Strictly lower-triangular sector matrix of sign * W, W = P a_0^2 / Ntot."""
    dim = sector.dim
    alpha = sector.mode.alpha
    w = np.zeros((dim, dim))
    for s in range(dim - 1):
        n0 = sector.Ntot - sector.p - 2 * s
        w[s + 1, s] = (
            -sign
            * alpha
            / sector.Ntot
            * math.sqrt((sector.p + s + 1) * (s + 1))
            * math.sqrt(n0 * (n0 - 1))
        )
    return w


def apply_exp_w(
    state: np.ndarray, sector: WuSector, mp: ModelParams, sign: float = 1.0
) -> np.ndarray:
    """Apply exp(sign * W) to a sector vector; exact, the series terminates.

    W is strictly lower triangular and therefore nilpotent on the sector, so
    the exponential is the finite polynomial sum_{j<dim} W^j / j! with no
    truncation error.
    """
    state = np.asarray(state, dtype=float)
    if state.shape != (sector.dim,):
        raise ValueError(f"state must have shape ({sector.dim},)")
    w = _w_matrix(sector, mp, sign)
    out = state.copy()
    term = state.copy()
    for j in range(1, sector.dim):
        term = w @ term / j
        if not term.any():
            break
        out += term
    return out
