"""Collar and tube volumes around closed geodesic hypersurfaces in
hyperbolic 4-manifolds, and the Euler-characteristic volume obstruction.

A closed embedded orientable separating totally geodesic hypersurface of
3-volume A has an embedded tube of radius d4(A) around it, where d4 is half
the inverse of the decreasing composite x -> ball_volume(collar_radius(x))
evaluated at A/2.  The guaranteed tube volume is then
tube_volume(A) = 2A (sinh d + sinh^3 d / 3).  Comparing K disjoint tubes
against the total volume (4 pi^2 / 3) chi gives the obstruction.
"""

from __future__ import annotations

import math
from typing import NamedTuple

__all__ = [
    "CONTRADICTION_SLACK",
    "CollarProfile",
    "ObstructionVerdict",
    "collar_radius",
    "ball_volume",
    "d4",
    "c4",
    "tube_volume",
    "collar_profile",
    "volume_obstruction",
]

# The contradiction flag only fires with this much room, so floating-point
# rounding can never manufacture a contradiction.
CONTRADICTION_SLACK = 1e-6

_BISECTION_TOLERANCE = 1e-13


class CollarProfile(NamedTuple):
    area: float
    d4: float
    tube_volume: float


class ObstructionVerdict(NamedTuple):
    chi: int
    copies: int
    available: float
    required: float
    contradiction: bool


def collar_radius(x: float) -> float:
    """log(coth(x/2)); a strictly decreasing involution of (0, inf)."""
    if x <= 0:
        raise ValueError("argument must be positive")
    return math.log(1.0 / math.tanh(x / 2.0))


def ball_volume(r: float) -> float:
    """Volume pi (sinh 2r - 2r) of a hyperbolic 3-ball of radius r.

    This is the closed form of 4 pi times the integral of sinh^2 from 0 to
    r; a short series is used below r = 5e-3 where the closed form cancels.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    t = 2.0 * r
    if r < 5e-3:
        return math.pi * t**3 / 6.0 * (1.0 + t * t / 20.0 + t**4 / 840.0)
    return math.pi * (math.sinh(t) - t)


def _composite(x: float) -> float:
    return ball_volume(collar_radius(x))


def _inverse_composite(target: float) -> float:
    """The unique x > 0 with ball_volume(collar_radius(x)) = target."""
    if target <= 0:
        raise ValueError("target must be positive")
    lo, hi = 1e-12, 50.0
    while _composite(lo) < target:
        lo /= 2.0
        if lo < 1e-300:
            raise ValueError(f"target {target} too large to bracket")
    while _composite(hi) > target:
        hi *= 2.0
        if hi > 1e300:
            raise ValueError(f"target {target} too small to bracket")
    while hi - lo > _BISECTION_TOLERANCE * max(1.0, lo):
        mid = (lo + hi) / 2.0
        if _composite(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def d4(area: float) -> float:
    """Guaranteed embedded tube radius about a separating hypersurface of
    3-volume `area`: half the inverse composite at area/2."""
    if area <= 0:
        raise ValueError("area must be positive")
    return 0.5 * _inverse_composite(area / 2.0)


def c4(area: float) -> float:
    """The one-sided collar radius, half the inverse composite at `area`.

    Equals d4(2 * area); the separating case doubles the collar input, so
    d4(A) > c4(A) for every A.
    """
    if area <= 0:
        raise ValueError("area must be positive")
    return 0.5 * _inverse_composite(area)


def tube_volume(area: float) -> float:
    """Volume 2 A (sinh d + sinh^3 d / 3) of the radius-d4(A) tube; the
    closed form of 2 A times the integral of cosh^3 from 0 to d4(A)."""
    d = d4(area)
    s = math.sinh(d)
    return 2.0 * area * (s + s**3 / 3.0)


def collar_profile(area: float) -> CollarProfile:
    return CollarProfile(area, d4(area), tube_volume(area))


def volume_obstruction(chi: int, copies: int, area: float) -> ObstructionVerdict:
    """Compare the volume (4 pi^2 / 3) chi of the ambient manifold against
    `copies` disjoint tubes around hypersurfaces of 3-volume `area`."""
    if chi < 1 or copies < 1:
        raise ValueError("chi and copies must be positive")
    if area <= 0:
        raise ValueError("area must be positive")
    available = 4.0 * math.pi**2 / 3.0 * chi
    required = copies * tube_volume(area)
    return ObstructionVerdict(
        chi, copies, available, required, required > available + CONTRADICTION_SLACK
    )
