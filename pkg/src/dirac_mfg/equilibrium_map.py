"""
The mass map C -> F(C) and its derivative

F_j(C) is the mass of the envelope over bubble j. Equilibria of the game
are exactly the solutions of F(C) = a.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, NotInG
from .geometry import Case, _levels, bubble_endpoints, in_G

__all__ = [
    "TridiagonalMatrix",
    "CoercivityConstants",
    "F",
    "jacobian",
    "coercivity_constants",
    "monotonicity_gap",
    "mass_total",
]


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Band storage: ``sub[k] = A[k+1, k]``, ``sup[k] = A[k, k+1]``."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        n = self.diag.size
        if self.sub.size != max(n - 1, 0) or self.sup.size != max(n - 1, 0):
            raise LengthMismatch("off-diagonals must have n - 1 entries")

    @property
    def n(self):
        return self.diag.size

    def to_dense(self):
        return np.diag(self.diag) + np.diag(self.sub, -1) + np.diag(self.sup, 1)

    def matvec(self, v):
        v = np.asarray(v, dtype=float)
        out = self.diag * v
        out[1:] += self.sub * v[:-1]
        out[:-1] += self.sup * v[1:]
        return out


def _bubble_mass(C, x, geo):
    ne = geo.nonempty
    out = np.zeros_like(C)
    a = geo.alpha[ne] - x[ne]
    b = geo.beta[ne] - x[ne]
    out[ne] = C[ne] * (b - a) - b**3 / 3.0 + a**3 / 3.0
    return out


def F(C, m, geometry=None):
    """Mass of each bubble; zero for empty bubbles. Defined for all C."""
    C = _levels(C, m)
    geo = bubble_endpoints(C, m) if geometry is None else geometry
    return _bubble_mass(C, m.positions, geo)


def mass_total(C, m):
    return float(F(C, m).sum())


def _interface_heights(C, x, geo):
    """f_j(alpha_j) and f_j(beta_j), zero at zero crossings."""
    left = np.array([c is Case.NEIGHBOR for c in geo.left_case])
    right = np.array([c is Case.NEIGHBOR for c in geo.right_case])
    fa = np.where(left, C - (geo.alpha - x) ** 2, 0.0)
    fb = np.where(right, C - (geo.beta - x) ** 2, 0.0)
    return np.maximum(fa, 0.0), np.maximum(fb, 0.0)


def jacobian(C, m, geometry=None):
    """Analytic DF(C) as a symmetric tridiagonal matrix.

    Only defined where every bubble has positive length. An off-diagonal
    entry is minus the height of the shared interface divided by twice the
    gap between the two atoms, so it vanishes between detached bubbles.

    Raises
    ------
    NotInG
    """
    C = _levels(C, m)
    if not in_G(C, m):
        raise NotInG("the Jacobian is only available when every bubble is nonempty")
    x = m.positions
    geo = bubble_endpoints(C, m) if geometry is None else geometry
    fa, fb = _interface_heights(C, x, geo)
    gap2 = 2.0 * np.diff(x)
    w_right = fb[:-1] / gap2  # dF_j/dC_{j+1}, up to sign
    w_left = fa[1:] / gap2  # dF_{j+1}/dC_j, up to sign
    diag = geo.lengths.copy()
    diag[:-1] += w_right
    diag[1:] += w_left
    return TridiagonalMatrix(sub=-w_left, diag=diag, sup=-w_right)


@dataclass(frozen=True)
class CoercivityConstants:
    """Constants with F_j(C) >= delta * C_j whenever C_j = max(C) >= M."""

    delta_bar: float
    M_bar: float
    M: float
    delta: float


def coercivity_constants(m):
    """Coercivity constants for the atom positions of ``m``.

    The end atoms are handled with a mirrored ghost atom at the same gap
    as their only neighbour; for a single atom ``delta_bar`` is ``inf`` and
    the bound follows from F_1 = 4/3 C**1.5.
    """
    x = m.positions
    if x.size == 1:
        delta = 0.5
        return CoercivityConstants(np.inf, 0.0, (0.75 * delta) ** 2, delta)
    gaps = np.diff(x)
    left = np.concatenate(([gaps[0]], gaps))  # x_j - x_{j-1}
    right = np.concatenate((gaps, [gaps[-1]]))  # x_{j+1} - x_j
    delta_bar = float(np.min(left + right) / 2.0)
    # mass of (x - x_j)**2 over [x_j - left/2, x_j + right/2]
    M_bar = float(np.max((right / 2.0) ** 3 + (left / 2.0) ** 3) / 3.0)
    delta = min(delta_bar, 1.0) / 2.0
    M = max(M_bar / (delta_bar - delta), float(np.max((gaps / 2.0) ** 2)))
    return CoercivityConstants(delta_bar, M_bar, M, delta)


def monotonicity_gap(C, C2, m):
    """``(F(C) - F(C2)) . (C - C2)``, positive for distinct C, C2 in G."""
    C = _levels(C, m)
    C2 = _levels(C2, m)
    return float(np.dot(F(C, m) - F(C2, m), C - C2))
