# Two imaginary spikes and the imaginary square well: transmission above one.
#
# Run: python demos/transmission_excess.py

# %%
import numpy as np

from qhscatter import analytic, transfer
from qhscatter.model import square_well_potential, two_delta_potential

np.set_printoptions(precision=5, suppress=True)

# %% two spikes -i lam delta(x+a) + i lam delta(x-a), closed form against the matrix product
lam, a = 1.0, 1.0
pot = two_delta_potential(lam, a)
ks = np.linspace(0.25, 4.0, 16)
rows = []
for k in ks:
    p = analytic.TwoDeltaParams(lam, a, k)
    tm = transfer.probability_summary(transfer.scattering_coefficients(pot, k))
    rows.append((k, p.alpha, tm.T, tm.total, analytic.two_delta_total(p)))
rows = np.array(rows)
print("   k     alpha    |D|^2    total    closed form")
print(rows)

# total stays above 1 whenever alpha < 1 and sin 2ka != 0
print("alpha < 1 rows all > 1:", bool(np.all(rows[rows[:, 1] < 1, 3] > 1)))

# %% square well: -i on (-1, 0), +i on (0, 1)
well = square_well_potential(1.0, 1.0)
ks = np.linspace(0.1, 8.0, 200)
T = np.array([abs(transfer.scattering_coefficients(well, k).trans) ** 2 for k in ks])

above = ks[T > 1]
print(f"max T = {T.max():.4f} at k = {ks[T.argmax()]:.3f}")
print(f"first window with T > 1 starts at k = {above[0]:.3f}")

# crude text plot of the curve
for k, t in zip(ks[::10], T[::10]):
    bar = "#" * int(round(20 * t))
    print(f"{k:5.2f} {t:6.3f} {bar}{'|' if t < 1 else ''}")

# %% far above the barrier the well is transparent
for k in (10.0, 20.0, 50.0):
    print(k, abs(transfer.scattering_coefficients(well, k).trans) ** 2 - 1)
