"""
==================================
Checking a solution by brute force
==================================

Nothing here trusts the closed-form bubble geometry. The masses are
re-integrated on a fine grid, the Jacobian is compared with central
differences, and every player's cost is minimised by scanning a grid.
"""

# %%

import numpy as np

from dirac_mfg import F, GridSpec, build_measure, fd_jacobian, grid_F, jacobian, nash_check, solve

m = build_measure([0.0, 0.7, 1.2, 2.9, 3.3], [0.1, 0.3, 0.2, 0.25, 0.15])
C = solve(m).C_star

# %%
# Grid masses against the analytic ones

for h in (1e-3, 1e-4, 1e-5):
    err = np.abs(grid_F(C, m, GridSpec(step=h)) - F(C, m)).max()
    print(f"h={h:g}  max mass error {err:.2e}")

# %%
# Jacobian: tridiagonal, symmetric, negative off the diagonal

A = jacobian(C, m).to_dense()
J = fd_jacobian(C, m)
print(np.round(A, 4))
print("max |A - FD|:", np.abs(A - J).max())

# %%
# Nash check: for each atom, the best reachable cost equals C_j and the
# minimisers are exactly its bubble

rep = nash_check(C, m, GridSpec(step=1e-4), tol=1e-3)
print("best values:", rep.best_value)
print("levels:     ", C)
print("passed:", rep.passed)
