"""
Complex 2x2 transfer matrices for piecewise-constant potentials with spikes.

Coefficient pairs are ordered (right-mover, left-mover) and refer to
exterior plane waves ``A exp(ik y) + B exp(-ik y)`` in a local frame whose
origin ``y = 0`` sits at the current reference point. Spikes act at the
reference point, and a region of length ``l`` moves the reference point
forward by ``l``. Composing left to right gives the map from the leftmost
feature to the rightmost one.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .current import PiecewiseWave, WaveRegion
from .errors import DegenerateBranchError, SingularCompositionError
from .model import Potential1D, ProbabilitySummary, ScatteringAmplitudes

_SINGULAR_RTOL = 1e-14


@dataclass(frozen=True)
class Matrix2c:
    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @classmethod
    def identity(cls) -> "Matrix2c":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_array(cls, a) -> "Matrix2c":
        return cls(complex(a[0][0]), complex(a[0][1]), complex(a[1][0]), complex(a[1][1]))

    def __matmul__(self, other: "Matrix2c") -> "Matrix2c":
        return Matrix2c(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def apply(self, a: complex, b: complex) -> tuple[complex, complex]:
        return self.m11 * a + self.m12 * b, self.m21 * a + self.m22 * b

    def det(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21

    def to_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]], dtype=complex)

    def scale(self) -> float:
        return max(abs(self.m11), abs(self.m12), abs(self.m21), abs(self.m22))


def delta_interface_matrix(k: float, z: complex) -> Matrix2c:
    """Matrix across a spike ``z * delta(y)`` at the local origin.

    psi is continuous and ``psi'(0+) - psi'(0-) = z psi(0)``; with
    ``beta = z / (2ik)`` this gives ``[[1 + beta, beta], [-beta, 1 - beta]]``,
    whose determinant is exactly 1.
    """
    _check_k(k)
    beta = complex(z) / (2j * k)
    return Matrix2c(1 + beta, beta, -beta, 1 - beta)


def free_propagation_matrix(k: float, length: float) -> Matrix2c:
    return Matrix2c(cmath.exp(1j * k * length), 0, 0, cmath.exp(-1j * k * length))


def interior_wavenumber(k: float, V: complex) -> complex:
    """Principal ``sqrt(k**2 - V)`` with non-negative imaginary part."""
    kv = cmath.sqrt(k * k - complex(V))
    if kv == 0:
        raise DegenerateBranchError(
            f"k**2 - V vanishes exactly (k={k}, V={V}); perturb k slightly"
        )
    if kv.imag < 0 or (kv.imag == 0 and kv.real < 0):
        kv = -kv
    return kv


def segment_propagation_matrix(k: float, V: complex, length: float) -> Matrix2c:
    """Carry exterior-basis coefficients across a constant-V region.

    Input coefficients refer to the left edge, output coefficients to the
    right edge. Inside, the solution is a combination of
    ``exp(+-i kv y)`` with ``kv = interior_wavenumber(k, V)``.
    """
    _check_k(k)
    if not length > 0:
        raise ValueError(f"segment length must be positive, got {length}")
    if V == 0:
        return free_propagation_matrix(k, length)
    kv = interior_wavenumber(k, V)
    c = cmath.cos(kv * length)
    s = cmath.sin(kv * length)
    # (psi, psi') propagator over the region, then back to the k basis:
    # coefficients (A, B) <-> (psi, psi') = (A + B, ik(A - B)).
    p11, p12, p21, p22 = c, s / kv, -kv * s, c
    return Matrix2c(
        0.5 * (p11 + p22) + 0.5j * (k * p12 - p21 / k),
        0.5 * (p11 - p22) - 0.5j * (k * p12 + p21 / k),
        0.5 * (p11 - p22) + 0.5j * (k * p12 + p21 / k),
        0.5 * (p11 + p22) - 0.5j * (k * p12 - p21 / k),
    )


def total_matrix(p: Potential1D, k: float) -> tuple[Matrix2c, float, float]:
    """Composite local-frame matrix plus the first and last reference points."""
    _check_k(k)
    points = p.breakpoints()
    if not points:
        return Matrix2c.identity(), 0.0, 0.0
    m = Matrix2c.identity()
    for x0, x1 in zip(points, points[1:]):
        z = p.delta_strength_at(x0)
        if z != 0:
            m = delta_interface_matrix(k, z) @ m
        m = segment_propagation_matrix(k, p.value_on(x0, x1), x1 - x0) @ m
    z = p.delta_strength_at(points[-1])
    if z != 0:
        m = delta_interface_matrix(k, z) @ m
    return m, points[0], points[-1]


def global_matrix(p: Potential1D, k: float) -> Matrix2c:
    """Map global left amplitudes (of exp(+-ikx)) to global right amplitudes."""
    m, first, last = total_matrix(p, k)
    return free_propagation_matrix(k, -last) @ m @ free_propagation_matrix(k, first)


def scattering_coefficients(p: Potential1D, k: float) -> ScatteringAmplitudes:
    """Solve ``(D, 0) = M (1, C)`` for unit incidence from the left.

    Raises SingularCompositionError when ``M22`` is numerically zero, which
    happens at spectral singularities of complex potentials.
    """
    if p.is_empty:
        _check_k(k)
        return ScatteringAmplitudes(k, 0j, 1 + 0j)
    m = global_matrix(p, k)
    if abs(m.m22) < _SINGULAR_RTOL * max(m.scale(), 1.0):
        raise SingularCompositionError(
            f"transfer matrix is singular at k={k}: |M22|={abs(m.m22):.3e}"
        )
    refl = -m.m21 / m.m22
    trans = m.m11 + m.m12 * refl
    return ScatteringAmplitudes(k, refl, trans)


def probability_summary(s: ScatteringAmplitudes) -> ProbabilitySummary:
    R = abs(s.refl) ** 2
    T = abs(s.trans) ** 2
    return ProbabilitySummary(R, T, R + T)


def scattering_wave(p: Potential1D, k: float) -> PiecewiseWave:
    """The full scattering solution as a :class:`PiecewiseWave`.

    (psi, psi') is carried from the leftmost breakpoint through each region
    in closed form, applying derivative jumps at spikes.
    """
    amps = scattering_coefficients(p, k)
    points = p.breakpoints()
    if not points:
        return PiecewiseWave((WaveRegion(-np.inf, np.inf, 1 + 0j, 0j, complex(k)),))
    regions = [WaveRegion(-np.inf, points[0], 1 + 0j, amps.refl, complex(k))]
    x = points[0]
    psi = regions[0].psi(x)
    dpsi = regions[0].dpsi(x)
    for x0, x1 in zip(points, points[1:]):
        dpsi += p.delta_strength_at(x0) * psi
        kv = interior_wavenumber(k, p.value_on(x0, x1))
        a, b = _coefficients_from_values(psi, dpsi, kv, x0)
        region = WaveRegion(x0, x1, a, b, kv)
        regions.append(region)
        psi, dpsi = region.psi(x1), region.dpsi(x1)
    regions.append(WaveRegion(points[-1], np.inf, amps.trans, 0j, complex(k)))
    return PiecewiseWave(tuple(regions))


def _coefficients_from_values(psi: complex, dpsi: complex, kv: complex, x0: float):
    """Global (A, B) with A e^{i kv x0} + B e^{-i kv x0} = psi and matching psi'."""
    u = dpsi / (1j * kv)
    a = 0.5 * (psi + u) * cmath.exp(-1j * kv * x0)
    b = 0.5 * (psi - u) * cmath.exp(1j * kv * x0)
    return a, b


def _check_k(k: float) -> None:
    if not k > 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
