"""
Solve F(C) = a for the equilibrium levels

Damped Newton on the tridiagonal Jacobian is the main path. The projected
fixed-point map C -> P((C + a - F(C))_+) is a derivative-free fallback for
starts where some bubble is empty.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .equilibrium_map import F, TridiagonalMatrix, coercivity_constants, jacobian
from .errors import LengthMismatch, NonpositiveTarget, NotConverged, NotInG, SingularMatrix
from .geometry import _levels, bubble_endpoints, in_G

__all__ = [
    "Path",
    "SolveOptions",
    "SolveReport",
    "initial_guess",
    "tridiagonal_solve",
    "newton_solve",
    "l_map_iterate",
    "solve",
]


class Path(enum.Enum):
    NEWTON_ONLY = "newton_only"
    LMAP_THEN_NEWTON = "lmap_then_newton"
    LMAP_ONLY = "lmap_only"


@dataclass(frozen=True)
class SolveOptions:
    tol: float = 1e-10
    max_newton_iters: int = 50
    max_lmap_iters: int = 100_000
    damping_shrink: float = 0.5
    min_step: float = 1e-12
    lmap_relaxation: float = 1.0
    # residual below which the fixed-point map hands over to Newton
    lmap_handoff: float = 1e-3

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_newton_iters < 0 or self.max_lmap_iters < 0:
            raise ValueError("iteration limits must be nonnegative")
        if not 0 < self.damping_shrink < 1:
            raise ValueError("damping_shrink must lie in (0, 1)")
        if not self.min_step > 0:
            raise ValueError("min_step must be positive")
        if not 0 < self.lmap_relaxation <= 1:
            raise ValueError("lmap_relaxation must lie in (0, 1]")


@dataclass
class SolveReport:
    C_star: np.ndarray
    residual_history: list
    newton_iters: int = 0
    lmap_iters: int = 0
    path: Path = Path.NEWTON_ONLY
    converged: bool = False
    message: str = ""
    min_bubble_length: float = float("nan")
    step_sizes: list = field(default_factory=list)

    @property
    def residual(self):
        return self.residual_history[-1]


def initial_guess(m, a=None):
    """Levels of detached bubbles with mass a_j: C_j = (3 a_j / 4)**(2/3).

    Since F_j(C) <= 4/3 C_j**1.5 this start never overshoots any target.
    """
    a = m.weights if a is None else np.asarray(a, dtype=float)
    return (0.75 * a) ** (2.0 / 3.0)


def tridiagonal_solve(A, rhs):
    """Thomas algorithm for ``A x = rhs`` without pivoting.

    Raises
    ------
    SingularMatrix
        When a pivot is negligible relative to the matrix scale.
    """
    d = np.asarray(rhs, dtype=float)
    n = A.n
    if d.size != n:
        raise LengthMismatch(f"rhs has length {d.size}, matrix has order {n}")
    scale = max(np.abs(A.diag).max(initial=0.0), np.abs(A.sub).max(initial=0.0),
                np.abs(A.sup).max(initial=0.0))
    tiny = 1e-14 * scale if scale > 0 else 0.0
    cp = np.empty(max(n - 1, 0))
    dp = np.empty(n)

    piv = A.diag[0]
    if abs(piv) <= tiny:
        raise SingularMatrix("zero pivot in row 0")
    if n > 1:
        cp[0] = A.sup[0] / piv
    dp[0] = d[0] / piv
    for i in range(1, n):
        piv = A.diag[i] - A.sub[i - 1] * cp[i - 1]
        if abs(piv) <= tiny:
            raise SingularMatrix(f"zero pivot in row {i}")
        if i < n - 1:
            cp[i] = A.sup[i] / piv
        dp[i] = (d[i] - A.sub[i - 1] * dp[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        dp[i] -= cp[i] * dp[i + 1]
    return dp


def _targets(m, a):
    a = m.weights if a is None else np.asarray(a, dtype=float).ravel()
    if a.size != m.n:
        raise LengthMismatch(f"target has length {a.size}, measure has {m.n} atoms")
    return a


def _resid(C, m, a, geo=None):
    r = F(C, m, geo) - a
    return r, float(np.abs(r).max())


def newton_solve(m, a=None, C0=None, opts=None):
    """Damped Newton iteration from a start inside G.

    A step is shortened by ``opts.damping_shrink`` until the new point is
    in G and the residual max-norm has not grown. A step shorter than
    ``opts.min_step`` ends the run with ``converged=False``.

    Raises
    ------
    NotInG
        If the start has an empty bubble.
    """
    opts = SolveOptions() if opts is None else opts
    a = _targets(m, a)
    C = initial_guess(m, a) if C0 is None else _levels(C0, m).copy()
    if not in_G(C, m):
        raise NotInG("Newton needs a start with every bubble nonempty")

    geo = bubble_endpoints(C, m)
    r, res = _resid(C, m, a, geo)
    report = SolveReport(C, [res])
    while res > opts.tol and report.newton_iters < opts.max_newton_iters:
        step = tridiagonal_solve(jacobian(C, m, geo), r)
        t = 1.0
        while True:
            trial = C - t * step
            if in_G(trial, m):
                trial_geo = bubble_endpoints(trial, m)
                trial_r, trial_res = _resid(trial, m, a, trial_geo)
                if trial_res <= res:
                    break
            t *= opts.damping_shrink
            if t < opts.min_step:
                report.message = f"stalled: step length fell below {opts.min_step:g}"
                report.C_star = C
                report.min_bubble_length = float(geo.lengths.min())
                return report
        C, geo, r, res = trial, trial_geo, trial_r, trial_res
        report.newton_iters += 1
        report.residual_history.append(res)
        report.step_sizes.append(t)

    report.C_star = C
    report.converged = res <= opts.tol
    report.min_bubble_length = float(geo.lengths.min())
    if not report.converged:
        report.message = f"no convergence after {report.newton_iters} Newton steps"
    return report


def _project(D, r):
    s = D.sum()
    return D if s <= r else D * (r / s)


def l_map_iterate(m, a=None, opts=None, handoff=True):
    """Projected fixed-point iteration ``C <- P((C + w (a - F(C)))_+)``.

    P rescales onto the nonnegative 1-norm ball of radius 2 n |a|_1 / delta.
    With ``handoff`` the run switches to Newton as soon as the iterate is in
    G with residual below ``opts.lmap_handoff``. The relaxation ``w`` starts
    at ``opts.lmap_relaxation`` and is shrunk whenever the residual grows.
    """
    opts = SolveOptions() if opts is None else opts
    a = _targets(m, a)
    if np.any(a <= 0):
        raise NonpositiveTarget("all targets must be positive")
    delta = coercivity_constants(m).delta
    radius = 2.0 * m.n * a.sum() / delta
    w = opts.lmap_relaxation
    w_floor = opts.lmap_relaxation * 1e-3

    C = _project(initial_guess(m, a), radius)
    r, res = _resid(C, m, a)
    report = SolveReport(C, [res], path=Path.LMAP_ONLY)
    while res > opts.tol and report.lmap_iters < opts.max_lmap_iters:
        if handoff and res <= opts.lmap_handoff and in_G(C, m):
            nr = newton_solve(m, a, C, opts)
            if nr.converged:
                nr.lmap_iters = report.lmap_iters
                nr.residual_history = report.residual_history + nr.residual_history[1:]
                nr.path = Path.LMAP_THEN_NEWTON
                return nr
            handoff = False
        C = _project(np.maximum(C - w * r, 0.0), radius)
        r, new_res = _resid(C, m, a)
        if new_res > res and w > w_floor:
            w *= opts.damping_shrink
        res = new_res
        report.lmap_iters += 1
        report.residual_history.append(res)

    report.C_star = C
    report.converged = res <= opts.tol
    geo = bubble_endpoints(C, m)
    report.min_bubble_length = float(geo.lengths.min())
    if not report.converged:
        report.message = f"fixed-point map stopped at residual {res:.3e}"
    return report


def solve(m, a=None, opts=None):
    """Equilibrium levels for the measure ``m`` (targets default to its weights).

    Newton from the detached-bubble guess when that guess is in G; otherwise,
    or after a stalled Newton run, the fixed-point map followed by Newton.

    Raises
    ------
    NonpositiveTarget, NotConverged
    """
    opts = SolveOptions() if opts is None else opts
    a = _targets(m, a)
    if np.any(a <= 0):
        raise NonpositiveTarget("all targets must be positive")

    C0 = initial_guess(m, a)
    newton_iters = 0
    if in_G(C0, m):
        report = newton_solve(m, a, C0, opts)
        if report.converged:
            return report
        newton_iters = report.newton_iters

    report = l_map_iterate(m, a, opts)
    report.newton_iters += newton_iters
    if not report.converged:
        raise NotConverged(
            f"no solution to tolerance {opts.tol:g} "
            f"(residual {report.residual:.3e}, smallest bubble {report.min_bubble_length:.3e})",
            report,
        )
    return report
