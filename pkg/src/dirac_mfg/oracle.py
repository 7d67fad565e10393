"""
Brute-force checks that share no code path with the closed forms

Everything here works on a uniform grid or by finite differences and only
uses the raw parabolas ``C_j - (y - x_j)**2``.
"""

from dataclasses import dataclass

import numpy as np

from .equilibrium_map import F
from .errors import NotInG
from .geometry import _levels, bubble_endpoints, in_G

__all__ = ["GridSpec", "NashReport", "grid_F", "fd_jacobian", "nash_check", "mass_check"]


@dataclass(frozen=True)
class GridSpec:
    step: float = 1e-4
    padding: float = 1.0

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if not self.padding >= 1:
            raise ValueError("padding must be at least 1")

    def extent(self, C, m):
        reach = np.sqrt(max(float(np.max(C)), 0.0))
        x = m.positions
        return x[0] - reach - self.padding, x[-1] + reach + self.padding


def _cells(g, C, m):
    lo, hi = g.extent(C, m)
    k = int(np.ceil((hi - lo) / g.step))
    mids = lo + (np.arange(k) + 0.5) * g.step
    return mids


def _envelope_argmax(y, C, x):
    """Running max over atoms; strict ``>`` keeps ties on the lower index."""
    best = np.full(y.shape, -np.inf)
    who = np.full(y.shape, -1, dtype=np.intp)
    for j in range(x.size):
        fj = C[j] - (y - x[j]) ** 2
        better = fj > best
        best[better] = fj[better]
        who[better] = j
    return best, who


def grid_F(C, m, g=GridSpec()):
    """Midpoint-rule mass of the envelope, cell by cell, credited to the
    atom whose parabola is on top at the cell centre."""
    C = _levels(C, m)
    y = _cells(g, C, m)
    best, who = _envelope_argmax(y, C, m.positions)
    inside = best > 0
    return np.bincount(who[inside], weights=best[inside] * g.step, minlength=m.n).astype(float)


def fd_jacobian(C, m, eps=1e-6, func=None):
    """Dense central-difference Jacobian of ``func`` (default: the mass map)."""
    func = F if func is None else func
    C = _levels(C, m)
    n = C.size
    J = np.empty((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = eps
        J[:, i] = (func(C + e, m) - func(C - e, m)) / (2.0 * eps)
    return J


@dataclass
class NashReport:
    """Per-atom outcome of the best-response scan."""

    best_value: np.ndarray
    claimed_value: np.ndarray
    argmin_set_ok: np.ndarray
    worst_violation: np.ndarray
    grid_mass: np.ndarray
    target_mass: np.ndarray
    tol: float
    mass_tol: float

    @property
    def marginal_ok(self):
        return np.abs(self.grid_mass - self.target_mass) <= self.mass_tol

    @property
    def passed(self):
        return bool(np.all(self.argmin_set_ok) and np.all(self.marginal_ok))


def nash_check(C, m, g=GridSpec(), tol=None, mass_tol=None):
    """Scan every destination on the grid for each starting atom.

    For atom j the cost of moving to y is ``(x_j - y)**2 + f(y)``. The
    check passes when, up to ``tol``: the minimal cost equals C_j, every
    grid point of E_j achieves it, and nothing outside E_j beats it. The
    players starting at x_j must also fill E_j with exactly a_j of mass
    (grid integral of f over E_j, to ``mass_tol``).

    ``tol`` defaults to ``2 * step * diameter`` of the grid and
    ``mass_tol`` to ``step * (n + 1) * (1 + max C)``.

    Raises
    ------
    NotInG
    """
    C = _levels(C, m)
    if not in_G(C, m):
        raise NotInG("the Nash check needs every bubble nonempty")
    x = m.positions
    y = _cells(g, C, m)
    lo, hi = y[0] - 0.5 * g.step, y[-1] + 0.5 * g.step
    if tol is None:
        tol = 2.0 * g.step * (hi - lo)
    if mass_tol is None:
        mass_tol = g.step * (m.n + 1) * (1.0 + float(C.max()))

    f = np.maximum(_envelope_argmax(y, C, x)[0], 0.0)
    geo = bubble_endpoints(C, m)
    n = m.n
    best = np.empty(n)
    ok = np.empty(n, dtype=bool)
    worst = np.empty(n)
    mass = np.empty(n)
    for j in range(n):
        J = (x[j] - y) ** 2 + f
        best[j] = J.min()
        on = (y >= geo.alpha[j]) & (y <= geo.beta[j])
        excess_on = float(np.max(J[on] - C[j], initial=0.0))
        undercut = float(np.max(C[j] - J[~on], initial=0.0))
        off_level = abs(best[j] - C[j])
        worst[j] = max(excess_on, undercut, off_level, 0.0)
        ok[j] = worst[j] <= tol
        mass[j] = f[on].sum() * g.step
    return NashReport(
        best_value=best,
        claimed_value=C.copy(),
        argmin_set_ok=ok,
        worst_violation=worst,
        grid_mass=mass,
        target_mass=m.weights.copy(),
        tol=tol,
        mass_tol=mass_tol,
    )


def mass_check(C, m, a=None):
    """``max_j |F_j(C) - a_j|``; targets default to the measure's weights."""
    a = m.weights if a is None else np.asarray(a, dtype=float)
    return float(np.abs(F(C, m) - a).max())
