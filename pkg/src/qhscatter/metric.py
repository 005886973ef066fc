"""
First-order metric for the single complex delta ``z delta(x)``, ``z = 2 lam (1 + i eps)``.

The metric is ``eta = 1 + eps * eta1 + O(eps^2)`` with kernel

    eta1(x, y) = (i lam / 2) [theta(xy) e^{-lam|x-y|} + theta(-xy) e^{-lam|x+y|}] sgn(y^2 - x^2)

and the physical wavefunction is ``Psi = rho psi`` with
``rho = 1 + (eps/2) eta1``. Because ``|x - y| = ||x| - |y||`` when ``xy > 0``
and ``|x + y| = ||x| - |y||`` when ``xy < 0``, the kernel equals
``(i lam / 2) sgn(|y| - |x|) exp(-lam ||x| - |y||)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, NamedTuple

import numpy as np

from .analytic import SingleDeltaParams, single_delta_amplitudes
from .errors import BoundaryError, ResolutionError


@dataclass(frozen=True)
class MetricKernelFirstOrder:
    """Vectorized ``eta1(x, y)``; on ``|x| = |y|`` the kernel is taken as 0."""

    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")

    def __call__(self, x, y):
        ax = np.abs(np.asarray(x, dtype=float))
        ay = np.abs(np.asarray(y, dtype=float))
        d = ay - ax
        return 0.5j * self.lam * np.sign(d) * np.exp(-self.lam * np.abs(d))


def eta1_value(x: float, y: float, lam: float) -> complex:
    """Kernel value at a single point off the lines ``|x| = |y|``.

    Raises BoundaryError on ``|x| = |y|``, where ``sgn(y^2 - x^2)`` vanishes.
    """
    if not lam > 0:
        raise ValueError(f"lam must be positive, got {lam}")
    if abs(x) == abs(y):
        raise BoundaryError(f"eta1 undefined on |x| = |y| (x={x}, y={y})")
    if x * y > 0:
        t = math.exp(-lam * abs(x - y))
    else:
        t = math.exp(-lam * abs(x + y))
    return 0.5j * lam * t * math.copysign(1.0, y * y - x * x)


def _psi_pieces(p: SingleDeltaParams):
    """psi as [(lo, hi, [(amplitude, wavenumber), ...]), ...] with psi = sum A e^{i kappa y}."""
    amps = single_delta_amplitudes(p)
    k = p.k
    return [
        (-math.inf, 0.0, [(1 + 0j, k), (amps.refl, -k)]),
        (0.0, math.inf, [(amps.trans, k)]),
    ]


def _psi(x: float, pieces) -> complex:
    for lo, hi, waves in pieces:
        if lo <= x <= hi:
            return sum(a * cmath.exp(1j * kap * x) for a, kap in waves)
    raise ValueError(x)


def _sample_point(lo: float, hi: float) -> float:
    if math.isinf(lo):
        return hi - 1.0
    if math.isinf(hi):
        return lo + 1.0
    return 0.5 * (lo + hi)


def eta1_convolution(x: float, lam: float, pieces) -> complex:
    """Exact ``integral eta1(x, y) psi(y) dy`` for piecewise plane waves.

    The y-axis is cut at the kernel's breaks (-|x|, 0, |x|) and at the
    pieces' ends. On each cell the kernel is ``sign * exp(p*y + c)`` with
    constant p, c, so every term integrates to an elementary expression.
    """
    cuts = {-abs(x), 0.0, abs(x)}
    for lo, hi, _ in pieces:
        cuts.update(v for v in (lo, hi) if math.isfinite(v))
    edges = [-math.inf, *sorted(cuts), math.inf]
    total = 0j
    for lo, hi in zip(edges, edges[1:]):
        if not lo < hi:
            continue
        t = _sample_point(lo, hi)
        sgn = math.copysign(1.0, t * t - x * x)
        if x * t >= 0:
            s = math.copysign(1.0, x - t)
            rate, offset = lam * s, -lam * s * x  # -lam|x - y|
        else:
            s = math.copysign(1.0, x + t)
            rate, offset = -lam * s, -lam * s * x  # -lam|x + y|
        for plo, phi, waves in pieces:
            if plo <= t <= phi:
                for amp, kap in waves:
                    total += sgn * amp * _cell_integral(rate + 1j * kap, offset, lo, hi)
                break
    return 0.5j * lam * total


def _cell_integral(c: complex, offset: float, lo: float, hi: float) -> complex:
    """Integral of exp(c*y + offset) over (lo, hi); infinite ends must decay."""

    def primitive(y):
        if math.isinf(y):
            if (c.real < 0) != (y < 0):
                return 0j
            raise ValueError("non-decaying integrand on an infinite cell")
        return cmath.exp(c * y + offset) / c

    return primitive(hi) - primitive(lo)


def corrected_wavefunction(x, p: SingleDeltaParams):
    """``Psi(x) = psi(x) + (eps/2) integral eta1(x, y) psi(y) dy`` in closed form.

    ``psi`` is the exact scattering solution at the given ``eps``. Accepts a
    scalar or an array of positions.
    """
    pieces = _psi_pieces(p)

    def one(xv: float) -> complex:
        xv = float(xv)
        return _psi(xv, pieces) + 0.5 * p.epsilon * eta1_convolution(xv, p.lam, pieces)

    if np.ndim(x) == 0:
        return one(x)
    return np.array([one(v) for v in np.ravel(x)], dtype=complex).reshape(np.shape(x))


def bare_wavefunction(x, p: SingleDeltaParams):
    pieces = _psi_pieces(p)
    if np.ndim(x) == 0:
        return _psi(float(x), pieces)
    return np.array([_psi(float(v), pieces) for v in np.ravel(x)], dtype=complex).reshape(
        np.shape(x)
    )


@dataclass(frozen=True)
class CorrectedWave:
    """Plane-wave content of Psi far from the delta, where ``e^{-lam|x|}`` is negligible.

    ``amp_in`` multiplies the wave travelling toward the origin
    (``e^{ikx}`` on the left, ``e^{-ikx}`` on the right) and ``amp_out``
    the wave travelling away from it.
    """

    region: Literal["left", "right"]
    amp_out: complex
    amp_in: complex
    epsilon: float
    q: float

    def __call__(self, x, k: float):
        x = np.asarray(x, dtype=float)
        sign = 1.0 if self.region == "right" else -1.0
        return self.amp_out * np.exp(sign * 1j * k * x) + self.amp_in * np.exp(-sign * 1j * k * x)


def incoming_admixture(p: SingleDeltaParams) -> float:
    """``eps lam k / (2 (lam^2 + k^2))``: weight of the e^{-ikx} wave in Psi on the right."""
    return p.epsilon * p.lam * p.k / (2 * (p.lam**2 + p.k**2))


def corrected_plane_waves(p: SingleDeltaParams) -> tuple[CorrectedWave, CorrectedWave]:
    """(left, right) asymptotic decomposition of Psi.

    With ``g = incoming_admixture(p)``::

        Psi_>(x) = D e^{ikx} + g (e^{-ikx} - (C + D) e^{ikx})
        Psi_<(x) = (1 + g) e^{ikx} + (C - g (C + D)) e^{-ikx}

    These are exact for the first-order convolution, up to terms decaying
    like ``e^{-lam|x|}``.
    """
    amps = single_delta_amplitudes(p)
    C, D = amps.refl, amps.trans
    g = incoming_admixture(p)
    left = CorrectedWave("left", C - g * (C + D), 1 + g, p.epsilon, p.q)
    right = CorrectedWave("right", D - g * (C + D), g + 0j, p.epsilon, p.q)
    return left, right


class FluxFactors(NamedTuple):
    incoming: float
    reflected: float
    transmitted: float


def corrected_flux_factors(p: SingleDeltaParams) -> FluxFactors:
    """Non-oscillatory fluxes of Psi at first order in eps.

    Each Hermitian flux of the real delta ``2 lam delta(x)`` is multiplied by
    ``1 + eps q / (q^2 + 1)``, so reflected + transmitted equals incoming.
    Only meaningful for small |eps|.
    """
    q, eps = p.q, p.epsilon
    factor = 1 + eps * q / (q**2 + 1)
    return FluxFactors(factor, factor / (q**2 + 1), factor * q**2 / (q**2 + 1))


class FullFluxes(NamedTuple):
    incoming: float
    reflected: float
    transmitted: float
    incoming_right: float


def decomposed_fluxes(p: SingleDeltaParams) -> FullFluxes:
    """Squared plane-wave amplitudes of the full first-order Psi (interference dropped)."""
    left, right = corrected_plane_waves(p)
    return FullFluxes(
        abs(left.amp_in) ** 2,
        abs(left.amp_out) ** 2,
        abs(right.amp_out) ** 2,
        abs(right.amp_in) ** 2,
    )


def conservation_residual(p: SingleDeltaParams) -> float:
    """``(R' + T') / incoming' - 1`` from the full decomposition; O(eps^2)."""
    f = decomposed_fluxes(p)
    return (f.reflected + f.transmitted) / f.incoming - 1


# Discretized intertwining check -------------------------------------------


class IntertwiningComponents(NamedTuple):
    first_order: float
    second_order: float


def _test_functions(x: np.ndarray, lam: float) -> np.ndarray:
    centers = np.array([-3.5, -1.5, -0.5, 0.0, 0.7, 2.0, 3.0]) / lam
    width = 0.7 / lam
    P = np.exp(-((x[:, None] - centers[None, :]) ** 2) / (2 * width**2))
    return P / np.sqrt(np.sum(P**2, axis=0) * (x[1] - x[0]))


def _weak_blocks(h: float, half_width: float, lam: float, delta_width: float, block: int = 512):
    """Weak forms of the eps and eps^2 parts of ``H^dag eta - eta H`` and of eta1.

    On the grid ``x_j = j h`` the operators are: L the Dirichlet
    second-difference ``-d^2``, G the regularized delta (a single node of
    weight 1/h when ``delta_width == 0``, else a normalized Gaussian), and
    E the kernel times h. With ``H0 = L + 2 lam G``::

        H^dag eta - eta H = eps ([H0, E] - 4i lam G) - 2i lam eps^2 (G E + E G)

    Returns the n x n matrices ``<phi_a, X phi_b>`` for the two brackets and
    for E, with smooth Gaussian test functions phi.
    """
    m = int(round(half_width / h))
    x = np.arange(-m, m + 1) * h
    n = x.size
    P = _test_functions(x, lam)
    LP = 2 * P
    LP[1:] -= P[:-1]
    LP[:-1] -= P[1:]
    LP /= h * h
    if delta_width == 0:
        g = np.zeros(n)
        g[m] = 1 / h
    else:
        g = np.exp(-(x**2) / (2 * delta_width**2)) / (delta_width * math.sqrt(2 * math.pi))
    GP = g[:, None] * P
    rhs = np.concatenate([P, LP, GP], axis=1)
    ER = np.empty(rhs.shape, dtype=complex)
    ax = np.abs(x)
    for start in range(0, n, block):
        stop = min(start + block, n)
        d = ax[None, :] - ax[start:stop, None]
        Eb = (0.5j * lam * h) * np.sign(d) * np.exp(-lam * np.abs(d))
        ER[start:stop] = Eb @ rhs
    k = P.shape[1]
    EP, ELP, EGP = ER[:, :k], ER[:, k : 2 * k], ER[:, 2 * k :]
    w = h
    weak_E = w * P.T @ EP
    comm_L = w * (LP.T @ EP - P.T @ ELP)
    comm_G = w * (GP.T @ EP - P.T @ EGP)
    weak_G = w * P.T @ GP
    first = comm_L + 2 * lam * comm_G - 4j * lam * weak_G
    second = -2j * lam * w * (GP.T @ EP + P.T @ EGP)
    return first, second, weak_E


def _check_resolution(h, half_width, delta_width, lam):
    if not (h > 0 and half_width > 0 and delta_width >= 0):
        raise ResolutionError("grid_spacing, domain_half_width must be > 0, delta_width >= 0")
    if h * lam > 0.1:
        raise ResolutionError(f"grid_spacing {h} too coarse for lam={lam}; need h*lam <= 0.1")
    if half_width * lam < 10:
        raise ResolutionError(
            f"domain_half_width {half_width} too small for lam={lam}; need W*lam >= 10"
        )
    if delta_width > 0 and (h > delta_width / 4 or delta_width * lam > 0.5):
        raise ResolutionError(
            "need grid_spacing <= delta_width/4 and delta_width*lam <= 0.5"
        )


def intertwining_components(
    grid_spacing: float,
    domain_half_width: float,
    delta_width: float,
    p: SingleDeltaParams,
    extrapolate: bool = True,
) -> IntertwiningComponents:
    """Weak norms of the eps and eps^2 parts of ``H^dag eta - eta H``, relative to eta1.

    The first-order part vanishes in the continuum, so its size here is
    discretization error. With ``extrapolate`` the grids h and h/2 are
    combined by Richardson extrapolation, which removes the O(h) error of
    the single-node delta.
    """
    A, B, E = _extrapolated(grid_spacing, domain_half_width, delta_width, p.lam, extrapolate)
    norm = np.linalg.norm(E)
    return IntertwiningComponents(float(np.linalg.norm(A) / norm), float(np.linalg.norm(B) / norm))


def _extrapolated(h, half_width, delta_width, lam, extrapolate):
    _check_resolution(h, half_width, delta_width, lam)
    return _weak_parts(float(h), float(half_width), float(delta_width), float(lam), bool(extrapolate))


@lru_cache(maxsize=16)
def _weak_parts(h, half_width, delta_width, lam, extrapolate):
    coarse = _weak_blocks(h, half_width, lam, delta_width)
    if not extrapolate:
        return coarse
    fine = _weak_blocks(h / 2, half_width, lam, delta_width)
    return tuple(2 * f - c for f, c in zip(fine, coarse))


def intertwining_residual(
    grid_spacing: float,
    domain_half_width: float,
    delta_width: float,
    p: SingleDeltaParams,
    extrapolate: bool = True,
) -> float:
    """Relative weak norm of ``H^dag (1 + eps eta1) - (1 + eps eta1) H`` on a grid.

    ``H = -d^2/dx^2 + z delta(x)``. The result is measured on smooth
    Gaussian test functions and divided by the weak norm of eta1, so it is
    ``O(eps^2)`` plus ``eps`` times the discretization error. Set
    ``delta_width = 0`` to put the delta on the node at the origin; a
    positive width uses a Gaussian, whose error only falls like the width.

    Raises ResolutionError unless ``h*lam <= 0.1``, ``W*lam >= 10`` and,
    for a Gaussian, ``h <= width/4`` and ``width*lam <= 0.5``.
    """
    A, B, E = _extrapolated(grid_spacing, domain_half_width, delta_width, p.lam, extrapolate)
    eps = p.epsilon
    return float(np.linalg.norm(eps * A + eps * eps * B) / np.linalg.norm(E))
