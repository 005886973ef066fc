# Bound state of -2 alpha delta(x) + i lam (delta(x - L) - delta(x + L)).
#
# Run: python demos/three_delta_bound_state.py

# %%
import numpy as np

from qhscatter import boundstate as bs

# %% the residual near kappa = alpha, and the solved root
m = bs.ThreeDeltaModel(alpha=1.0, lam=1.0, L=5.0)
for kappa in (0.99, 0.99998, 1.0, 1.01):
    print(kappa, bs.eigenvalue_residual(kappa, m))
sol = bs.solve_kappa(m)
print("kappa", sol.kappa, "energy", sol.energy, "large-L", bs.large_L_kappa(m))

# %% exact minus asymptotic shrinks like exp(-4 alpha L)
Ls = np.arange(2.0, 6.5, 0.5)
gap = np.array([abs(bs.solve_kappa(bs.ThreeDeltaModel(1, 1, L)).kappa
                    - bs.large_L_kappa(bs.ThreeDeltaModel(1, 1, L))) for L in Ls])
print(np.column_stack([Ls, gap]))
print("slope of log gap:", np.polyfit(Ls[:7], np.log(gap[:7]), 1)[0])

# %% PT symmetry of the solution: |A| = |F| and psi(-x) = e^{i phi} psi*(x)
chk = bs.pt_symmetry_check(sol, m)
print(chk)
w = bs.bound_state_wave(sol, m)
for x in (1.0, 3.0, 6.0):
    print(x, w.psi(-x), np.exp(1j * chk.phase) * np.conj(w.psi(x)))

# %% off the root the symmetry is lost
wrong = bs.BoundStateSolution(sol.kappa * 1.01, bs.region_coefficients(sol.kappa * 1.01, m))
print("amp defect at 1.01 kappa:", bs.pt_symmetry_check(wrong, m).amp_defect)
