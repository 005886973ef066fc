"""
Closed-form amplitudes for the two-imaginary-delta and single-complex-delta
potentials.

Two deltas, ``V = i lam (delta(x - a) - delta(x + a))`` with
``alpha = lam / (2k)``::

    D = 1 / (1 + 2i alpha^2 exp(2ika) sin 2ka)
    C = 2i D alpha (1 - alpha) sin 2ka

Single delta, ``V = z delta(x)`` with ``z = 2 lam (1 + i eps)``, ``q = k / lam``::

    D = 1 / (1 + iz / 2k),   C = -(iz / 2k) D
    |C|^2 + |D|^2 = 1 / (1 - 2 eps q / (1 + eps^2 + q^2))
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import SingularCompositionError
from .model import ScatteringAmplitudes

_POLE_TOL = 1e-14


@dataclass(frozen=True)
class TwoDeltaParams:
    lam: float
    a: float
    k: float

    def __post_init__(self):
        if not (self.lam >= 0 and self.a > 0 and self.k > 0):
            raise ValueError(f"need lam >= 0, a > 0, k > 0; got {self}")

    @property
    def alpha(self) -> float:
        return self.lam / (2 * self.k)


@dataclass(frozen=True)
class SingleDeltaParams:
    lam: float
    epsilon: float
    k: float

    def __post_init__(self):
        if not (self.lam > 0 and self.k > 0 and math.isfinite(self.epsilon)):
            raise ValueError(f"need lam > 0, k > 0, finite epsilon; got {self}")

    @classmethod
    def from_q(cls, lam: float, epsilon: float, q: float) -> "SingleDeltaParams":
        return cls(lam, epsilon, q * lam)

    @property
    def q(self) -> float:
        return self.k / self.lam

    @property
    def z(self) -> complex:
        return 2 * self.lam * (1 + 1j * self.epsilon)


def two_delta_amplitudes(p: TwoDeltaParams) -> ScatteringAmplitudes:
    al = p.alpha
    s = math.sin(2 * p.k * p.a)
    denom = 1 + 2j * al**2 * cmath.exp(2j * p.k * p.a) * s
    if abs(denom) < _POLE_TOL:
        raise SingularCompositionError(f"two-delta amplitude pole at {p}")
    D = 1 / denom
    C = 2j * D * al * (1 - al) * s
    return ScatteringAmplitudes(p.k, C, D)


def two_delta_transmission(p: TwoDeltaParams) -> float:
    """|D|^2 = 1 / (1 - 4 alpha^2 (1 - alpha^2) sin^2 2ka)."""
    al = p.alpha
    s2 = math.sin(2 * p.k * p.a) ** 2
    denom = 1 - 4 * al**2 * (1 - al**2) * s2
    if abs(denom) < _POLE_TOL:
        raise SingularCompositionError(f"two-delta transmission pole at {p}")
    return 1 / denom


def two_delta_total(p: TwoDeltaParams) -> float:
    al = p.alpha
    s2 = math.sin(2 * p.k * p.a) ** 2
    denom = 1 - 4 * al**2 * (1 - al**2) * s2
    if abs(denom) < _POLE_TOL:
        raise SingularCompositionError(f"two-delta total-probability pole at {p}")
    return (1 + 4 * al**2 * (1 - al) ** 2 * s2) / denom


def single_delta_amplitudes(p: SingleDeltaParams) -> ScatteringAmplitudes:
    u = 1j * p.z / (2 * p.k)
    if abs(1 + u) < _POLE_TOL:
        raise SingularCompositionError(f"single-delta amplitude pole at {p}")
    D = 1 / (1 + u)
    return ScatteringAmplitudes(p.k, -u * D, D)


def single_delta_total(p: SingleDeltaParams) -> float:
    eps, q = p.epsilon, p.q
    denom = 1 - 2 * eps * q / (1 + eps**2 + q**2)
    if abs(denom) < _POLE_TOL:
        raise SingularCompositionError(f"single-delta total-probability pole at {p}")
    return 1 / denom
