"""
Domain types for one-dimensional complex potentials.

Units are fixed to hbar = 2m = 1, so the Hamiltonian is
``H = -d^2/dx^2 + V(x)`` and a free wave of wavenumber k has energy k**2.
A spike ``z * delta(x - x0)`` makes the derivative jump by
``psi'(x0+) - psi'(x0-) = z * psi(x0)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import OverlapError, PlacementError


@dataclass(frozen=True)
class DeltaSpike:
    """A point interaction ``strength * delta(x - position)``."""

    position: float
    strength: complex

    def __post_init__(self):
        object.__setattr__(self, "position", float(self.position))
        object.__setattr__(self, "strength", complex(self.strength))
        if not math.isfinite(self.position):
            raise ValueError(f"delta position must be finite, got {self.position}")
        if not (math.isfinite(self.strength.real) and math.isfinite(self.strength.imag)):
            raise ValueError(f"delta strength must be finite, got {self.strength}")


@dataclass(frozen=True)
class UniformSegment:
    """A constant complex potential ``value`` on the open interval (x_lo, x_hi)."""

    x_lo: float
    x_hi: float
    value: complex

    def __post_init__(self):
        object.__setattr__(self, "x_lo", float(self.x_lo))
        object.__setattr__(self, "x_hi", float(self.x_hi))
        object.__setattr__(self, "value", complex(self.value))
        if not (math.isfinite(self.x_lo) and math.isfinite(self.x_hi)):
            raise ValueError("segment ends must be finite")
        if not self.x_lo < self.x_hi:
            raise ValueError(f"segment needs x_lo < x_hi, got ({self.x_lo}, {self.x_hi})")
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise ValueError(f"segment value must be finite, got {self.value}")

    @property
    def length(self) -> float:
        return self.x_hi - self.x_lo


@dataclass(frozen=True)
class Potential1D:
    """
    Sorted, validated collection of delta spikes and uniform segments.

    Outside every segment the potential vanishes. Segments may touch but
    not overlap. A spike strictly inside a segment is rejected unless
    ``allow_interior_deltas`` is set; a spike on a segment end is always
    accepted.
    """

    deltas: tuple[DeltaSpike, ...] = ()
    segments: tuple[UniformSegment, ...] = ()
    allow_interior_deltas: bool = field(default=False, compare=False)

    def __post_init__(self):
        deltas = tuple(sorted(self.deltas, key=lambda d: d.position))
        segments = tuple(sorted(self.segments, key=lambda s: (s.x_lo, s.x_hi)))
        for left, right in zip(segments, segments[1:]):
            if right.x_lo < left.x_hi:
                raise OverlapError(
                    f"segments ({left.x_lo}, {left.x_hi}) and "
                    f"({right.x_lo}, {right.x_hi}) overlap"
                )
        if not self.allow_interior_deltas:
            for d in deltas:
                for s in segments:
                    if s.x_lo < d.position < s.x_hi:
                        raise PlacementError(
                            f"delta at x={d.position} lies inside segment "
                            f"({s.x_lo}, {s.x_hi})"
                        )
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "segments", segments)

    @property
    def is_empty(self) -> bool:
        return not self.deltas and not self.segments

    @property
    def is_real(self) -> bool:
        """True when every strength and plateau value is real (Hermitian H)."""
        return all(d.strength.imag == 0 for d in self.deltas) and all(
            s.value.imag == 0 for s in self.segments
        )

    def features(self) -> list[DeltaSpike | UniformSegment]:
        """All spikes and segments ordered by (left) position."""
        items: list[DeltaSpike | UniformSegment] = [*self.deltas, *self.segments]
        return sorted(
            items,
            key=lambda f: f.position if isinstance(f, DeltaSpike) else f.x_lo,
        )

    def breakpoints(self) -> list[float]:
        """Sorted distinct positions where the potential changes or has a spike."""
        pts = {d.position for d in self.deltas}
        for s in self.segments:
            pts.update((s.x_lo, s.x_hi))
        return sorted(pts)

    def value_on(self, x_lo: float, x_hi: float) -> complex:
        """Plateau value on an interval that contains no breakpoint."""
        mid = 0.5 * (x_lo + x_hi)
        for s in self.segments:
            if s.x_lo <= mid <= s.x_hi:
                return s.value
        return 0j

    def delta_strength_at(self, x: float) -> complex:
        return sum((d.strength for d in self.deltas if d.position == x), 0j)

    def to_dict(self) -> dict:
        return {
            "deltas": [
                {"x": d.position, "re": d.strength.real, "im": d.strength.imag}
                for d in self.deltas
            ],
            "segments": [
                {"lo": s.x_lo, "hi": s.x_hi, "re": s.value.real, "im": s.value.imag}
                for s in self.segments
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict, allow_interior_deltas: bool = False) -> "Potential1D":
        deltas = [
            DeltaSpike(d["x"], complex(d.get("re", 0.0), d.get("im", 0.0)))
            for d in data.get("deltas", [])
        ]
        segments = [
            UniformSegment(s["lo"], s["hi"], complex(s.get("re", 0.0), s.get("im", 0.0)))
            for s in data.get("segments", [])
        ]
        return build_potential(deltas, segments, allow_interior_deltas)

    @classmethod
    def from_json(cls, text: str, allow_interior_deltas: bool = False) -> "Potential1D":
        return cls.from_dict(json.loads(text), allow_interior_deltas)


@dataclass(frozen=True)
class ScatteringAmplitudes:
    """Reflection (C) and transmission (D) amplitudes for left incidence.

    Left of the potential ``psi = exp(ikx) + C exp(-ikx)``; right of it
    ``psi = D exp(ikx)``.
    """

    k: float
    refl: complex
    trans: complex


@dataclass(frozen=True)
class ProbabilitySummary:
    R: float
    T: float
    total: float


def build_potential(
    deltas: Iterable[DeltaSpike] = (),
    segments: Iterable[UniformSegment] = (),
    allow_interior_deltas: bool = False,
) -> Potential1D:
    """Validate and sort spikes and segments into a :class:`Potential1D`.

    Raises
    ------
    OverlapError
        If two segments intersect.
    PlacementError
        If a spike lies strictly inside a segment and
        ``allow_interior_deltas`` is false.
    """
    return Potential1D(tuple(deltas), tuple(segments), allow_interior_deltas)


def single_delta_potential(lam: float, epsilon: float, position: float = 0.0) -> Potential1D:
    """``2*lam*(1 + i*epsilon) * delta(x - position)``."""
    return build_potential([DeltaSpike(position, 2 * lam * (1 + 1j * epsilon))])


def two_delta_potential(lam: float, a: float) -> Potential1D:
    """``i*lam*(delta(x - a) - delta(x + a))``."""
    return build_potential([DeltaSpike(-a, -1j * lam), DeltaSpike(a, 1j * lam)])


def square_well_potential(lam: float, a: float) -> Potential1D:
    """``-i*lam`` on (-a, 0) and ``+i*lam`` on (0, a)."""
    return build_potential(
        segments=[UniformSegment(-a, 0.0, -1j * lam), UniformSegment(0.0, a, 1j * lam)]
    )


def potentials_from_sequence(items: Sequence[DeltaSpike | UniformSegment]) -> Potential1D:
    """Split a mixed feature list into spikes and segments."""
    return build_potential(
        [f for f in items if isinstance(f, DeltaSpike)],
        [f for f in items if isinstance(f, UniformSegment)],
    )
