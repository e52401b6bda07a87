"""States on a fixed-imbalance pair ladder and the elementary operator actions.

A ladder state is a finite coefficient sequence c_s over the occupation pairs
|p+s, s> for fixed integer imbalance p >= 0 (mirror=True means the swapped
|s, p+s> family).  Operators never mix ladders with different p or mirror
flag, so each state carries both labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "LadderState",
    "apply_ab",
    "apply_adbd",
    "apply_halfnumber",
    "inner",
]


@dataclass(frozen=True)
class LadderState:
    """Coefficients c_s of sum_s c_s |p+s, s> (or |s, p+s> when mirror)."""

    p: int
    coeffs: np.ndarray = field(repr=False)
    mirror: bool = False

    def __post_init__(self) -> None:
        if self.p < 0:
            raise ValueError(f"imbalance p must be >= 0, got {self.p}")
        arr = np.asarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", arr)

    @property
    def smax(self) -> int:
        return len(self.coeffs) - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def padded(self, smax: int) -> "LadderState":
        """Same state with zero coefficients appended through index smax."""
        if smax < self.smax:
            raise ValueError("padding cannot shrink the state")
        out = np.zeros(smax + 1, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return LadderState(self.p, out, self.mirror)


def apply_ab(st: LadderState) -> LadderState:
    """Annihilate one quantum from each mode: c'_s = sqrt((p+s+1)(s+1)) c_{s+1}.

    The truncation index shrinks by one; the vacuum row is dropped exactly.
    """
    c = st.coeffs
    if len(c) <= 1:
        return LadderState(st.p, np.zeros(0, dtype=complex), st.mirror)
    s = np.arange(len(c) - 1)
    out = np.sqrt((st.p + s + 1.0) * (s + 1.0)) * c[1:]
    return LadderState(st.p, out, st.mirror)


def apply_adbd(st: LadderState) -> LadderState:
    """Create one quantum in each mode: c'_s = sqrt((p+s) s) c_{s-1}."""
    c = st.coeffs
    if len(c) == 0:
        return st
    s = np.arange(1, len(c) + 1)
    out = np.zeros(len(c) + 1, dtype=complex)
    out[1:] = np.sqrt((st.p + s) * s.astype(float)) * c
    return LadderState(st.p, out, st.mirror)


def apply_halfnumber(st: LadderState) -> LadderState:
    """Half total number operator: c'_s = (p/2 + s) c_s."""
    s = np.arange(len(st.coeffs))
    return LadderState(st.p, (st.p / 2.0 + s) * st.coeffs, st.mirror)


def inner(x: LadderState, y: LadderState) -> complex:
    """l2 pairing, conjugate-linear in the first slot.

    States on different ladders (p or mirror flag differ) are orthogonal.
    """
    if x.p != y.p or x.mirror != y.mirror:
        return 0.0 + 0.0j
    n = min(len(x.coeffs), len(y.coeffs))
    if n == 0:
        return 0.0 + 0.0j
    return complex(np.vdot(x.coeffs[:n], y.coeffs[:n]))
