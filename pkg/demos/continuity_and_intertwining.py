# Integrated continuity identity for complex potentials, and a grid check of
# the first-order metric identity H^dag eta = eta H.
#
# Run: python demos/continuity_and_intertwining.py

# %%
import numpy as np

from qhscatter import analytic, current, metric, transfer
from qhscatter.model import DeltaSpike, UniformSegment, build_potential

# %% j(+inf) - j(-inf) = 2 integral Im V |psi|^2
pot = build_potential([DeltaSpike(-1.0, 1 + 0.5j)], [UniformSegment(0.0, 2.0, 0.3 - 1.0j)])
for k in (0.5, 1.0, 2.0, 4.0):
    d = current.continuity_defect(pot, transfer.scattering_wave(pot, k))
    print(f"k={k}: lhs={d.lhs:+.12f} rhs={d.rhs:+.12f}")

# %% intertwining residual: the first-order part is pure discretization error
p = analytic.SingleDeltaParams(1.0, 0.1, 1.0)
for h in (0.04, 0.02, 0.01):
    c = metric.intertwining_components(h, 10.0, 0.0, p)
    print(f"h={h}: first order {c.first_order:.3e}  second order {c.second_order:.4f}")

# %% what is left scales as eps^2
eps = np.array([0.2, 0.1, 0.05, 0.025])
r = np.array([metric.intertwining_residual(0.01, 10.0, 0.0, analytic.SingleDeltaParams(1.0, e, 1.0))
              for e in eps])
print(r, "slope", np.polyfit(np.log(eps), np.log(r), 1)[0])

# %% a smeared (Gaussian) delta leaves an error that only falls like its width
for w in (0.2, 0.1, 0.05):
    c = metric.intertwining_components(w / 8, 12.0, w, p)
    print(f"width={w}: first order {c.first_order:.3e}")
