"""Independent dense linear algebra used to referee the analytic formulas.

Self-contained implementations (no LAPACK behind them): an implicit-shift QL
eigensolver for real symmetric tridiagonal matrices, a diagonal similarity
transform that symmetrizes the nonsymmetric ladder blocks (valid whenever
both couplings are positive), and a one-sided Jacobi SVD for the small Gram
matrices.  Being independent of the closed forms they certify is the whole
point; their own correctness is pinned by tests against known spectra.
"""

from __future__ import annotations

import math

import numpy as np

from .hamiltonians import HabMatrix

__all__ = [
    "sym_tridiag_eig",
    "symmetrize_tridiag",
    "svd_small",
]

_MAX_QL_SWEEPS = 50


def sym_tridiag_eig(
    diag: np.ndarray,
    offdiag: np.ndarray,
    vectors: bool = False,
) -> np.ndarray | tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) of a real symmetric tridiagonal matrix.

    Implicit-shift QL iteration with Givens rotations; ``offdiag[i]`` couples
    rows i and i+1.  With ``vectors=True`` the accumulated rotations are
    returned as columns of an orthogonal matrix alongside the values, with
    residuals ||M v - lambda v|| at the backward-stable level.

    Parameters
    ----------
    diag, offdiag : array_like
        Diagonal (length n >= 1) and off-diagonal (length n-1) entries.
    vectors : bool
        Also accumulate eigenvectors (adds an O(n^3) accumulation cost).
    """
    d = [float(x) for x in np.asarray(diag, dtype=float)]
    n = len(d)
    if n == 0:
        raise ValueError("empty matrix")
    e = [float(x) for x in np.asarray(offdiag, dtype=float)]
    if len(e) != n - 1:
        raise ValueError(f"offdiag must have length {n - 1}, got {len(e)}")
    e = e + [0.0]
    z = np.eye(n) if vectors else None

    for low in range(n):
        sweeps = 0
        while True:
            for m in range(low, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
            else:
                m = n - 1
            if m == low:
                break
            sweeps += 1
            if sweeps > _MAX_QL_SWEEPS:
                raise RuntimeError("QL iteration failed to converge")
            g = (d[low + 1] - d[low]) / (2.0 * e[low])
            r = math.hypot(g, 1.0)
            g = d[m] - d[low] + e[low] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, low - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if z is not None:
                    col = z[:, i + 1].copy()
                    z[:, i + 1] = s * z[:, i] + c * col
                    z[:, i] = c * z[:, i] - s * col
            else:
                d[low] -= p
                e[low] = g
                e[m] = 0.0

    values = np.array(d)
    order = np.argsort(values, kind="stable")
    if z is not None:
        return values[order], z[:, order]
    return values[order]


def symmetrize_tridiag(m: HabMatrix) -> tuple[np.ndarray, np.ndarray, dict]:
    """Diagonal similarity taking the y1/y2 block to symmetric tridiagonal form.

    Valid when both couplings are strictly positive (true on the whole
    amplitude range below critical); the transformed off-diagonals are the
    geometric means sqrt(y1 y2) sqrt((p+s+1)(s+1)) and eigenvalues are
    preserved exactly in exact arithmetic.  ``diagnostics`` reports the
    extreme entries of the scaling diagonal, which grow like
    (y2/y1)^(smax/2) and guard against overflow for lopsided couplings.
    """
    if m.y1 <= 0.0 or m.y2 <= 0.0:
        raise ValueError("symmetrization requires y1 > 0 and y2 > 0; "
                         "use the diagonal read-off for the bidiagonal case")
    off = np.sqrt(m.super_ * m.sub)
    half_log_ratio = 0.5 * math.log(m.y2 / m.y1)
    log_scale = np.arange(m.smax + 1) * half_log_ratio
    diagnostics = {
        "scale_log_min": float(log_scale.min()),
        "scale_log_max": float(log_scale.max()),
        "scale_extreme_ratio": float(np.exp(log_scale.max() - log_scale.min())),
    }
    return m.diag.copy(), off, diagnostics


def svd_small(matrix: np.ndarray) -> np.ndarray:
    """Singular values (descending) of a small real matrix, one-sided Jacobi.

    Columns are rotated pairwise until mutually orthogonal; the singular
    values are then the column norms.  Intended for matrices up to 64x64
    (Gram matrices of the completeness witness); accuracy ~1e-10 relative
    for well-conditioned inputs.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("matrix must be 2-D and nonempty")
    if max(a.shape) > 64:
        raise ValueError("svd_small is restricted to dimensions <= 64")
    u = a.copy()
    n = u.shape[1]
    for _ in range(60):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                aii = float(u[:, i] @ u[:, i])
                ajj = float(u[:, j] @ u[:, j])
                aij = float(u[:, i] @ u[:, j])
                den = math.sqrt(aii) * math.sqrt(ajj)  # sqrt first: no underflow
                if den == 0.0 or aij == 0.0:
                    continue
                rel = abs(aij) / den
                off = max(off, rel)
                if rel <= 1e-15:
                    continue
                zeta = (ajj - aii) / (2.0 * aij)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(zeta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = c * t
                col_i = u[:, i].copy()
                u[:, i] = c * col_i - s * u[:, j]
                u[:, j] = s * col_i + c * u[:, j]
        if off <= 1e-15:
            break
    sv = np.sqrt(np.sum(u * u, axis=0))
    return np.sort(sv)[::-1]
