"""
===================================
Equispaced atoms, random weights
===================================

Ten atoms at 1, ..., 10 with masses drawn uniformly from [0.05, 1]. The
masses are left unnormalised; only the scale of the density changes.
"""

# %%

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from dirac_mfg import solve
from dirac_mfg.files import density_samples, gen_instance

inst = gen_instance("equispaced_random_weights", 10, seed=3, normalize=False)
m = inst.measure()
report = solve(m)
print(report.path.value, report.newton_iters, "steps, residual", report.residual)

# %%
# Heavier atoms get higher parabolas and so wider bubbles.

y, f = density_samples(report.C_star, m, samples=4000)
fig, ax = plt.subplots(figsize=(7, 3))
ax.plot(y, f)
ax.vlines(m.positions, 0, m.weights * f.max() / m.weights.max(), color="C1", lw=3, alpha=0.5)
fig.savefig("equispaced.png", dpi=120, bbox_inches="tight")
