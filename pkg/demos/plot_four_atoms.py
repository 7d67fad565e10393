"""
=====================================
Equilibrium density for four atoms
=====================================

Four groups of players with equal mass start at x = 1, 2.25, 3, 3.75.
Each group spreads over an interval ("bubble") where its parabola is the
top of the envelope. The first atom is far enough away that its bubble
never touches the others.
"""

# %%
# Solve for the levels
# --------------------

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dirac_mfg import EquilibriumDensity, bubble_endpoints, build_measure, solve

m = build_measure([1.0, 2.25, 3.0, 3.75], [0.25] * 4)
report = solve(m)
print("levels:", report.C_star)
print("newton steps:", report.newton_iters, "residual:", report.residual)

# %%
# Bubbles and how they end
# ------------------------
#
# An endpoint either meets the neighbouring parabola or is where the
# parabola drops to zero.

geo = bubble_endpoints(report.C_star, m)
for j in range(m.n):
    print(f"atom {j}: [{geo.alpha[j]:.4f}, {geo.beta[j]:.4f}]  "
          f"{geo.left_case[j].value} / {geo.right_case[j].value}")

# %%
# Plot the envelope and each parabola

d = EquilibriumDensity.from_levels(report.C_star, m)
y = np.linspace(0, 4.8, 2000)
fig, ax = plt.subplots(figsize=(7, 3))
for xj, Cj in zip(m.positions, report.C_star):
    ax.plot(y, Cj - (y - xj) ** 2, lw=0.6, color="0.6")
ax.plot(y, d(y), lw=2, label="density")
ax.plot(m.positions, np.zeros(m.n), "k^", label="atoms")
ax.set_ylim(0, 0.45)
ax.legend()
fig.savefig("four_atoms.png", dpi=120, bbox_inches="tight")
