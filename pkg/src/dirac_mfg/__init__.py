"""Equilibria of a first-order mean field game with point-mass initial data.

Players start at atoms x_j with masses a_j, move to y at cost
(x - y)**2 + f(y), and f is the final density. The equilibrium density is
an envelope of parabolas C_j - (y - x_j)**2 whose levels solve F(C) = a.
"""

from .equilibrium_map import (
    CoercivityConstants,
    F,
    TridiagonalMatrix,
    coercivity_constants,
    jacobian,
    mass_total,
    monotonicity_gap,
)
from .errors import (
    DuplicatePosition,
    EmptyMeasure,
    IndexOutOfRange,
    LengthMismatch,
    MFGError,
    NonpositiveLevel,
    NonpositiveTarget,
    NonpositiveWeight,
    NotConverged,
    NotInG,
    SingularMatrix,
)
from .geometry import (
    BubbleGeometry,
    Case,
    DiscreteMeasure,
    EquilibriumDensity,
    bubble_endpoints,
    build_measure,
    density_eval,
    gamma,
    in_G,
    interval_length,
)
from .oracle import GridSpec, NashReport, fd_jacobian, grid_F, mass_check, nash_check
from .solver import (
    Path,
    SolveOptions,
    SolveReport,
    initial_guess,
    l_map_iterate,
    newton_solve,
    solve,
    tridiagonal_solve,
)

__version__ = "0.1.0"
