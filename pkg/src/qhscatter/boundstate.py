"""
Bound state of ``V = -2 alpha delta(x) + i lam (delta(x - L) - delta(x + L))``.

With ``beta = i lam / (2 kappa)`` and ``s = exp(-2 kappa L)`` the even-type
ansatz

    x < -L        A e^{kappa x}
    -L < x < 0    B e^{kappa x} + C e^{-kappa x}
    0 < x < L     D e^{-kappa x} + E e^{kappa x}
    L < x         F e^{-kappa x}

has B = A (1 - beta), C = A beta s, D = F (1 + beta), E = -F beta s.
Matching at the origin leaves the real equation

    alpha = kappa + s / (1 + (2 kappa / lam)^2) * [2 alpha - (kappa + alpha) s]

whose root near ``kappa = alpha`` shifts by ``-2 alpha s / (1 + (2 alpha/lam)^2)``
at large L. For lam = 0 the state is ``e^{-alpha |x|}`` with energy ``-alpha^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .current import PiecewiseWave, regions_from_amplitudes
from .errors import BracketError, ConvergenceError
from .model import DeltaSpike, Potential1D, build_potential


@dataclass(frozen=True)
class ThreeDeltaModel:
    alpha: float
    lam: float
    L: float

    def __post_init__(self):
        if not (self.alpha > 0 and self.L > 0 and self.lam >= 0):
            raise ValueError(f"need alpha > 0, L > 0, lam >= 0; got {self}")

    def potential(self) -> Potential1D:
        return build_potential(
            [
                DeltaSpike(-self.L, -1j * self.lam),
                DeltaSpike(0.0, -2 * self.alpha),
                DeltaSpike(self.L, 1j * self.lam),
            ]
        )


class Coefficients(NamedTuple):
    A: complex
    B: complex
    C: complex
    D: complex
    E: complex
    F: complex


@dataclass(frozen=True)
class BoundStateSolution:
    kappa: float
    coeffs: Coefficients

    @property
    def energy(self) -> float:
        return -self.kappa**2


def eigenvalue_residual(kappa: float, m: ThreeDeltaModel) -> float:
    """``f(kappa) = kappa + correction(kappa) - alpha``; zero at the bound state."""
    if m.lam == 0:
        return kappa - m.alpha
    s = math.exp(-2 * kappa * m.L)
    # 1 / (1 + (2 kappa / lam)^2), written so that tiny lam cannot overflow
    w = m.lam**2 / (m.lam**2 + 4 * kappa**2)
    return kappa + s * w * (2 * m.alpha - (kappa + m.alpha) * s) - m.alpha


def large_L_kappa(m: ThreeDeltaModel) -> float:
    """``alpha (1 - 2 e^{-2 alpha L} / (1 + (2 alpha / lam)^2))``."""
    if m.lam == 0:
        return m.alpha
    w = m.lam**2 / (m.lam**2 + 4 * m.alpha**2)
    return m.alpha * (1 - 2 * math.exp(-2 * m.alpha * m.L) * w)


def region_coefficients(kappa: float, m: ThreeDeltaModel) -> Coefficients:
    """Coefficients at an arbitrary kappa, with A = 1.

    F comes from the derivative jump at the origin, so continuity of psi
    at x = 0 and ``|A| = |F|`` hold only at a root of the eigenvalue
    equation.
    """
    beta = 1j * m.lam / (2 * kappa)
    s = math.exp(-2 * kappa * m.L)
    a2 = 2 * m.alpha
    A = 1 + 0j
    B = A * (1 - beta)
    C = A * beta * s
    F = A * ((a2 - kappa) * (1 - beta) + (a2 + kappa) * beta * s) / (
        kappa * (1 + beta * (1 + s))
    )
    D = F * (1 + beta)
    E = -F * beta * s
    return Coefficients(A, B, C, D, E, F)


def _suggest_L(m: ThreeDeltaModel) -> float:
    L = m.L
    for _ in range(60):
        L *= 1.25
        trial = ThreeDeltaModel(m.alpha, m.lam, L)
        if eigenvalue_residual(m.alpha / 2, trial) < 0:
            return L
    return math.inf


def solve_kappa(m: ThreeDeltaModel, tol: float = 1e-12, max_iter: int = 200) -> BoundStateSolution:
    """Bisect the eigenvalue residual on [alpha/2, 2 alpha] until ``|f| < tol``.

    Raises
    ------
    BracketError
        If the residual does not change sign on the bracket; carries a
        suggested larger L.
    ConvergenceError
        If ``max_iter`` halvings do not reach the tolerance.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if m.lam == 0:
        return BoundStateSolution(m.alpha, region_coefficients(m.alpha, m))
    lo, hi = m.alpha / 2, 2 * m.alpha
    f_lo, f_hi = eigenvalue_residual(lo, m), eigenvalue_residual(hi, m)
    if not (f_lo < 0 < f_hi):
        suggested = _suggest_L(m)
        raise BracketError(
            f"no sign change on [{lo}, {hi}] for alpha={m.alpha}, lam={m.lam}, L={m.L} "
            f"(f={f_lo:.3e}, {f_hi:.3e}); try L >= {suggested:.4g}",
            suggested_L=suggested,
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = eigenvalue_residual(mid, m)
        if abs(f_mid) < tol or mid in (lo, hi):
            return BoundStateSolution(mid, region_coefficients(mid, m))
        if f_mid < 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not reach |f| < {tol} in {max_iter} steps for {m}")


class PTCheck(NamedTuple):
    amp_defect: float
    phase: float


def pt_symmetry_check(s: BoundStateSolution, m: ThreeDeltaModel | None = None) -> PTCheck:
    """``||A| - |F||`` and the phase ``arg(F / A*)`` with ``psi(-x) = e^{i phase} psi*(x)``."""
    A, F = s.coeffs.A, s.coeffs.F
    return PTCheck(abs(abs(A) - abs(F)), cmath.phase(F / A.conjugate()))


def bound_state_wave(s: BoundStateSolution, m: ThreeDeltaModel) -> PiecewiseWave:
    """The solution as a PiecewiseWave; e^{+-kappa x} written as e^{+-i(-i kappa)x}."""
    c = s.coeffs
    kap = -1j * s.kappa
    return regions_from_amplitudes(
        [-m.L, 0.0, m.L],
        [(c.A, 0j), (c.B, c.C), (c.E, c.D), (0j, c.F)],
        [kap] * 4,
    )
