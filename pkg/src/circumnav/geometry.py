"""Target-relative geometry: range, range rate and bearing angle.

The bearing angle is measured counterclockwise from the line of sight
(vehicle -> target) to the vehicle heading, so that

    r_dot     = -V cos(theta_b)
    theta_b'  = omega + V sin(theta_b) / r

hold for a static target.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels

__all__ = [
    "Vec2",
    "UavState",
    "RelativeGeometry",
    "wrap_angle",
    "relative_geometry",
    "tangent_cos",
]


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        _require_finite("Vec2 component", self.x, self.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class UavState:
    """Planar pose of the vehicle. The heading is stored wrapped to [0, 2pi)."""

    position: Vec2
    psi: float

    def __post_init__(self):
        _require_finite("heading", self.psi)
        object.__setattr__(self, "psi", wrap_angle(self.psi))

    @classmethod
    def from_xy(cls, x: float, y: float, psi: float) -> UavState:
        return cls(Vec2(x, y), psi)

    @property
    def x(self) -> float:
        return self.position.x

    @property
    def y(self) -> float:
        return self.position.y


@dataclass(frozen=True)
class RelativeGeometry:
    r: float
    r_dot: float
    theta_b: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"range must be positive, got {self.r!r}")


def wrap_angle(a: float) -> float:
    """Return ``a`` reduced modulo 2pi into [0, 2pi)."""
    if not math.isfinite(a):
        raise ValueError(f"cannot wrap non-finite angle {a!r}")
    return _kernels.wrap(float(a))


def relative_geometry(state: UavState, target: Vec2, V: float) -> RelativeGeometry:
    """Ground-truth range, range rate and bearing of ``state`` w.r.t. ``target``.

    Raises
    ------
    ValueError
        If the vehicle sits on the target (zero range) or ``V <= 0``.
    """
    if not V > 0:
        raise ValueError(f"speed must be positive, got {V!r}")
    r, theta, r_dot = _kernels.geometry(
        state.x, state.y, state.psi, target.x, target.y, float(V))
    if r == 0.0:
        raise ValueError("vehicle is located at the target (zero range)")
    return RelativeGeometry(r=r, r_dot=r_dot, theta_b=theta)


def tangent_cos(r: float, r_d: float) -> float:
    """cos(pi - asin(r_d / r)), i.e. the range-rate fraction of a tangent heading.

    Evaluated as ``-sqrt(1 - (r_d/r)**2)``; lies in [-1, 0] and is exactly 0 on
    the circle ``r == r_d``.
    """
    if not r_d > 0:
        raise ValueError(f"r_d must be positive, got {r_d!r}")
    if r < r_d:
        raise ValueError(f"tangent undefined inside the circle (r={r!r} < r_d={r_d!r})")
    return _kernels.tangent_cos(float(r), float(r_d))
