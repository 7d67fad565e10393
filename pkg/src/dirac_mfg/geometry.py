"""
Atoms, parabola intersections and the bubble supports of the envelope

For a level vector C the candidate density is the upper envelope

    f(x) = max(0, C_1 - (x - x_1)**2, ..., C_n - (x - x_n)**2)

and the bubble of atom j is the interval E_j = [alpha_j, beta_j] on which
the j-th parabola attains that maximum.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicatePosition,
    EmptyMeasure,
    IndexOutOfRange,
    LengthMismatch,
    NonpositiveLevel,
    NonpositiveWeight,
)

__all__ = [
    "Case",
    "DiscreteMeasure",
    "BubbleGeometry",
    "EquilibriumDensity",
    "build_measure",
    "gamma",
    "bubble_endpoints",
    "interval_length",
    "in_G",
    "density_eval",
]


class Case(enum.Enum):
    """How a bubble endpoint is determined."""

    NEIGHBOR = "neighbor_intersection"
    ZERO = "zero_crossing"
    EMPTY = "empty"


@dataclass(frozen=True)
class DiscreteMeasure:
    """Weighted Dirac atoms ``sum_j a_j delta_{x_j}`` with sorted positions."""

    positions: np.ndarray
    weights: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        self.positions.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def n(self):
        return self.positions.size

    def __len__(self):
        return self.positions.size

    @property
    def total_mass(self):
        return float(self.weights.sum())


def build_measure(positions, weights, normalize=False):
    """Validate and sort atoms.

    Raises
    ------
    EmptyMeasure, DuplicatePosition, NonpositiveWeight, LengthMismatch
    """
    x = np.array(positions, dtype=float).ravel()
    a = np.array(weights, dtype=float).ravel()
    if x.size != a.size:
        raise LengthMismatch(f"{x.size} positions but {a.size} weights")
    if x.size == 0:
        raise EmptyMeasure("a measure needs at least one atom")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(a))):
        raise ValueError("positions and weights must be finite")
    if np.any(a <= 0):
        raise NonpositiveWeight(f"weights must be positive, got {a.tolist()}")
    order = np.argsort(x, kind="stable")
    x, a = x[order], a[order]
    if np.any(np.diff(x) == 0):
        raise DuplicatePosition(f"positions must be distinct, got {x.tolist()}")
    if normalize:
        a = a / a.sum()
    return DiscreteMeasure(x, a, bool(normalize))


def _levels(C, m):
    C = np.asarray(C, dtype=float).ravel()
    if C.size != m.n:
        raise LengthMismatch(f"level vector has length {C.size}, measure has {m.n} atoms")
    return C


def gamma(i, j, C, m):
    """Abscissa where parabolas ``i`` and ``j`` cross (symmetric in i, j)."""
    C = _levels(C, m)
    n = m.n
    for k in (i, j):
        if not 0 <= k < n:
            raise IndexOutOfRange(f"index {k} outside 0..{n - 1}")
    if i == j:
        raise ValueError("gamma needs two distinct indices")
    x = m.positions
    return (C[i] - C[j]) / (2.0 * (x[j] - x[i])) + 0.5 * (x[j] + x[i])


def _neighbor_gammas(C, x):
    # g[k] = crossing of parabolas k and k+1
    return (C[:-1] - C[1:]) / (2.0 * np.diff(x)) + 0.5 * (x[:-1] + x[1:])


@dataclass(frozen=True)
class BubbleGeometry:
    """Per-atom bubble ``[alpha_j, beta_j]`` and how each end is pinned.

    Empty bubbles (including singletons) carry ``nan`` endpoints.
    """

    alpha: np.ndarray
    beta: np.ndarray
    left_case: tuple
    right_case: tuple
    nonempty: np.ndarray

    @property
    def lengths(self):
        return np.where(self.nonempty, self.beta - self.alpha, 0.0)

    @property
    def left_neighbor(self):
        return np.array([c is Case.NEIGHBOR for c in self.left_case])

    @property
    def right_neighbor(self):
        return np.array([c is Case.NEIGHBOR for c in self.right_case])


def _classify(C, x, lo_gamma, hi_gamma):
    """Clip the crossing window with the zero set of each parabola."""
    pos = C > 0
    root = np.sqrt(np.where(pos, C, 0.0))
    lo_zero = x - root
    hi_zero = x + root
    left_nb = lo_gamma >= lo_zero
    right_nb = hi_gamma <= hi_zero
    alpha = np.where(left_nb, lo_gamma, lo_zero)
    beta = np.where(right_nb, hi_gamma, hi_zero)
    nonempty = pos & (alpha < beta)
    alpha = np.where(nonempty, alpha, np.nan)
    beta = np.where(nonempty, beta, np.nan)
    left = tuple(
        Case.EMPTY if not ne else (Case.NEIGHBOR if nb else Case.ZERO)
        for ne, nb in zip(nonempty, left_nb)
    )
    right = tuple(
        Case.EMPTY if not ne else (Case.NEIGHBOR if nb else Case.ZERO)
        for ne, nb in zip(nonempty, right_nb)
    )
    return BubbleGeometry(alpha, beta, left, right, nonempty)


def _window_neighbors(C, x):
    g = _neighbor_gammas(C, x)
    lo = np.concatenate(([-np.inf], g))
    hi = np.concatenate((g, [np.inf]))
    return lo, hi


def _window_all(C, x):
    n = x.size
    dx = x[None, :] - x[:, None]
    np.fill_diagonal(dx, 1.0)
    # G[i, j] = gamma_ij, symmetric
    G = (C[:, None] - C[None, :]) / (2.0 * dx) + 0.5 * (x[None, :] + x[:, None])
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    lo = np.where(upper, G, -np.inf).max(axis=0)  # i < j
    hi = np.where(upper.T, G, np.inf).min(axis=0)  # i > j
    return lo, hi


def bubble_endpoints(C, m):
    """Bubble supports for an arbitrary level vector.

    Inside the domain where every bubble has positive length only the
    immediate neighbours can bind, and the O(n) formula is used. Elsewhere
    every pair of parabolas is compared.
    """
    C = _levels(C, m)
    x = m.positions
    if in_G(C, m):
        lo, hi = _window_neighbors(C, x)
    else:
        lo, hi = _window_all(C, x)
    return _classify(C, x, lo, hi)


def _lengths_neighbors(C, x):
    """k_j(C) for every j; ``nan`` where C_j <= 0."""
    lo, hi = _window_neighbors(C, x)
    with np.errstate(invalid="ignore"):
        root = np.sqrt(C)
    return np.minimum(hi, x + root) - np.maximum(lo, x - root)


def interval_length(j, C, m):
    """Neighbour-only bubble length ``k_j(C)``; may be negative."""
    C = _levels(C, m)
    if not 0 <= j < m.n:
        raise IndexOutOfRange(f"index {j} outside 0..{m.n - 1}")
    if C[j] <= 0:
        raise NonpositiveLevel(f"C[{j}] = {C[j]} has no square root")
    return float(_lengths_neighbors(C, m.positions)[j])


def in_G(C, m, rtol=1e-12):
    """True iff every bubble has length above ``rtol * (1 + max C)``."""
    C = _levels(C, m)
    if np.any(C <= 0):
        return False
    k = _lengths_neighbors(C, m.positions)
    return bool(np.all(k > rtol * (1.0 + C.max())))


@dataclass(frozen=True)
class EquilibriumDensity:
    """The piecewise parabolic envelope for a level vector."""

    measure: DiscreteMeasure
    levels: np.ndarray
    geometry: BubbleGeometry

    @classmethod
    def from_levels(cls, C, m):
        C = _levels(C, m).copy()
        C.setflags(write=False)
        return cls(m, C, bubble_endpoints(C, m))

    def __call__(self, y):
        return density_eval(self, y)

    def support(self):
        g = self.geometry
        if not g.nonempty.any():
            return (np.nan, np.nan)
        return (float(np.nanmin(g.alpha)), float(np.nanmax(g.beta)))

    def source_index(self, y):
        """Atom sending players to ``y``, or -1 outside the support.

        Interface points go to the lower index.
        """
        y = np.asarray(y, dtype=float)
        vals = self.levels[:, None] - (y.ravel()[None, :] - self.measure.positions[:, None]) ** 2
        idx = np.argmax(vals, axis=0)
        idx = np.where(vals.max(axis=0) > 0, idx, -1)
        return idx.reshape(y.shape)

    def transport_plan(self):
        """List of ``(x_j, alpha_j, beta_j)``: players at x_j spread over E_j."""
        g = self.geometry
        return [
            (float(xj), float(a), float(b))
            for xj, a, b, ne in zip(self.measure.positions, g.alpha, g.beta, g.nonempty)
            if ne
        ]


def density_eval(d, y):
    """Envelope value ``max(0, max_j C_j - (y - x_j)**2)``; vectorised over y."""
    y = np.asarray(y, dtype=float)
    x = d.measure.positions
    C = d.levels
    vals = C[:, None] - (y.ravel()[None, :] - x[:, None]) ** 2
    out = np.maximum(vals.max(axis=0), 0.0).reshape(y.shape)
    return float(out) if out.ndim == 0 else out
