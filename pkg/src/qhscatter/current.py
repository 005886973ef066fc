"""
Probability current and the integrated continuity identity.

For ``-psi'' + V psi = E psi`` the current ``j = -i (psi* psi' - psi psi'*)``
obeys ``dj/dx = 2 Im V |psi|^2``, so

    j(+inf) - j(-inf) = 2 * integral Im V(x) |psi(x)|^2 dx.

Everything here is evaluated in closed form on piecewise plane-wave
solutions; nothing is differentiated or integrated numerically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import BoundaryError
from .model import Potential1D


@dataclass(frozen=True)
class WaveRegion:
    """``psi(x) = amp_right * exp(i*wavenumber*x) + amp_left * exp(-i*wavenumber*x)``.

    ``x`` is the global coordinate. A complex wavenumber covers evanescent
    and bound-state regions, e.g. ``wavenumber = -1j*kappa`` turns the two
    terms into ``exp(kappa*x)`` and ``exp(-kappa*x)``.
    """

    x_lo: float
    x_hi: float
    amp_right: complex
    amp_left: complex
    wavenumber: complex

    def psi(self, x: float) -> complex:
        kx = 1j * self.wavenumber * x
        return self.amp_right * cmath.exp(kx) + self.amp_left * cmath.exp(-kx)

    def dpsi(self, x: float) -> complex:
        kx = 1j * self.wavenumber * x
        ik = 1j * self.wavenumber
        return ik * (self.amp_right * cmath.exp(kx) - self.amp_left * cmath.exp(-kx))

    def current(self, x: float) -> float:
        return 2.0 * (self.psi(x).conjugate() * self.dpsi(x)).imag

    def density_integral(self) -> float:
        """Exact integral of |psi|^2 over the (finite) region."""
        if math.isinf(self.x_lo) or math.isinf(self.x_hi):
            raise ValueError("density integral needs a finite region")
        a, b, kap = self.amp_right, self.amp_left, self.wavenumber
        g = -2.0 * kap.imag
        total = abs(a) ** 2 * _exp_integral(g, self.x_lo, self.x_hi)
        total += abs(b) ** 2 * _exp_integral(-g, self.x_lo, self.x_hi)
        cross = a * b.conjugate() * _exp_integral(2j * kap.real, self.x_lo, self.x_hi)
        return float(total.real + 2.0 * cross.real)


def _exp_integral(c: complex, lo: float, hi: float) -> complex:
    """Integral of exp(c*x) over [lo, hi]."""
    width = hi - lo
    cw = c * width
    if abs(cw) < 1e-8:
        return cmath.exp(c * lo) * width * (1 + cw / 2)
    return (cmath.exp(c * hi) - cmath.exp(c * lo)) / c


@dataclass(frozen=True)
class PiecewiseWave:
    """Ordered regions tiling the whole line."""

    regions: tuple[WaveRegion, ...]

    def __post_init__(self):
        regions = tuple(self.regions)
        if not regions:
            raise ValueError("a piecewise wave needs at least one region")
        if not (math.isinf(regions[0].x_lo) and regions[0].x_lo < 0):
            raise ValueError("first region must start at -inf")
        if not (math.isinf(regions[-1].x_hi) and regions[-1].x_hi > 0):
            raise ValueError("last region must end at +inf")
        for left, right in zip(regions, regions[1:]):
            if left.x_hi != right.x_lo:
                raise ValueError("regions must tile the line without gaps")
        object.__setattr__(self, "regions", regions)

    def region_at(self, x: float) -> WaveRegion:
        for r in self.regions:
            if r.x_lo < x < r.x_hi:
                return r
        raise BoundaryError(f"x={x} lies on a region boundary")

    def psi(self, x: float) -> complex:
        """Value of psi; on a boundary the left and right limits are averaged."""
        try:
            return self.region_at(x).psi(x)
        except BoundaryError:
            left, right = self.limits(x)
            return 0.5 * (left + right)

    def limits(self, x: float) -> tuple[complex, complex]:
        """(psi(x-), psi(x+)) at a region boundary."""
        for left, right in zip(self.regions, self.regions[1:]):
            if left.x_hi == x:
                return left.psi(x), right.psi(x)
        raise ValueError(f"x={x} is not a region boundary")

    def derivative_limits(self, x: float) -> tuple[complex, complex]:
        for left, right in zip(self.regions, self.regions[1:]):
            if left.x_hi == x:
                return left.dpsi(x), right.dpsi(x)
        raise ValueError(f"x={x} is not a region boundary")

    def boundaries(self) -> list[float]:
        return [r.x_hi for r in self.regions[:-1]]


def probability_current(w: PiecewiseWave, x: float) -> float:
    """Standard current ``j = -i (psi* psi' - psi psi'*)`` at an interior point.

    Raises BoundaryError when ``x`` is a region edge.
    """
    return w.region_at(x).current(x)


def asymptotic_current(region: WaveRegion) -> float:
    """Current carried by an outer region of a V = 0 solution.

    For real wavenumber this is the interference-free ``2k(|A|^2 - |B|^2)``.
    Otherwise the current is x-independent and is read at the finite edge.
    """
    kap = region.wavenumber
    if kap.imag == 0:
        return 2.0 * kap.real * (abs(region.amp_right) ** 2 - abs(region.amp_left) ** 2)
    edge = region.x_hi if math.isfinite(region.x_hi) else region.x_lo
    return region.current(edge)


class ContinuityDefect(NamedTuple):
    lhs: float
    rhs: float


def continuity_defect(p: Potential1D, w: PiecewiseWave) -> ContinuityDefect:
    """Both sides of ``j(+inf) - j(-inf) = 2 * integral Im V |psi|^2``.

    ``w`` must solve the Schroedinger equation for ``p`` (not checked).
    Spikes contribute ``2 Im(z) |psi(x0)|^2`` with the continuous matched
    value; segments contribute their exact plane-wave density integral.
    """
    lhs = asymptotic_current(w.regions[-1]) - asymptotic_current(w.regions[0])
    rhs = 0.0
    for d in p.deltas:
        if d.strength.imag == 0:
            continue
        rhs += 2.0 * d.strength.imag * abs(w.psi(d.position)) ** 2
    for s in p.segments:
        if s.value.imag == 0:
            continue
        rhs += 2.0 * s.value.imag * _density_between(w, s.x_lo, s.x_hi)
    return ContinuityDefect(lhs, rhs)


def _density_between(w: PiecewiseWave, lo: float, hi: float) -> float:
    total = 0.0
    for r in w.regions:
        a, b = max(r.x_lo, lo), min(r.x_hi, hi)
        if a < b:
            total += WaveRegion(a, b, r.amp_right, r.amp_left, r.wavenumber).density_integral()
    return total


def mirror_conjugate(w: PiecewiseWave) -> PiecewiseWave:
    """The PT image ``psi*(-x)`` as a new piecewise wave."""
    regions: list[WaveRegion] = []
    for r in reversed(w.regions):
        # conj(A e^{i k (-x)}) = A* e^{i k* x}
        regions.append(
            WaveRegion(-r.x_hi, -r.x_lo, r.amp_right.conjugate(), r.amp_left.conjugate(),
                       r.wavenumber.conjugate())
        )
    return PiecewiseWave(tuple(regions))


def regions_from_amplitudes(
    edges: Sequence[float], amps: Sequence[tuple[complex, complex]], wavenumbers: Sequence[complex]
) -> PiecewiseWave:
    """Build a wave from interior edges and per-region (right, left) amplitude pairs."""
    bounds = [-math.inf, *edges, math.inf]
    if len(amps) != len(bounds) - 1 or len(wavenumbers) != len(amps):
        raise ValueError("need one amplitude pair and wavenumber per region")
    return PiecewiseWave(
        tuple(
            WaveRegion(lo, hi, complex(a), complex(b), complex(kap))
            for lo, hi, (a, b), kap in zip(bounds, bounds[1:], amps, wavenumbers)
        )
    )
