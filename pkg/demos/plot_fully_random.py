"""
==========================
Random atoms and weights
==========================

Fifteen atoms placed at random on [0, 15] with gaps of at least 0.1 and
normalised random masses. Clustered atoms build one wide hump; isolated
ones sit alone.
"""

# %%

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dirac_mfg import bubble_endpoints, solve
from dirac_mfg.files import density_samples, gen_instance

m = gen_instance("fully_random", 15, seed=11).measure()
report = solve(m)
geo = bubble_endpoints(report.C_star, m)
print("smallest gap:", np.diff(m.positions).min())
print("detached bubbles:", sum(l.value == r.value == "zero_crossing"
                              for l, r in zip(geo.left_case, geo.right_case)))

# %%

y, f = density_samples(report.C_star, m, samples=6000)
fig, ax = plt.subplots(figsize=(8, 3))
ax.plot(y, f)
ax.plot(m.positions, np.zeros(m.n), "k|", ms=12)
fig.savefig("fully_random.png", dpi=120, bbox_inches="tight")
