"""Fixed-step integration of the constant-speed unicycle.

    x' = V cos(psi),  y' = V sin(psi),  psi' = omega

The turn rate is held constant over each step (zero-order hold).
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

from . import _kernels
from .geometry import UavState

__all__ = ["Scheme", "IntegrationSettings", "derivative", "step"]


class Scheme(enum.Enum):
    RK4 = "rk4"
    EULER = "euler"

    @property
    def code(self) -> int:
        return _kernels.SCHEME_RK4 if self is Scheme.RK4 else _kernels.SCHEME_EULER


@dataclass(frozen=True)
class IntegrationSettings:
    dt: float = 0.01
    scheme: Scheme = Scheme.RK4

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive and finite, got {self.dt!r}")
        object.__setattr__(self, "scheme", Scheme(self.scheme))

    def check_resolution(self, r_d: float, V: float) -> bool:
        """Warn if the step is coarse relative to the orbit (dt > 0.1 r_d / V)."""
        limit = 0.1 * r_d / V
        if self.dt > limit:
            warnings.warn(
                f"dt={self.dt:g} exceeds recommended bound {limit:g} s for r_d={r_d:g}, V={V:g}",
                RuntimeWarning, stacklevel=2)
            return False
        return True


def derivative(state: UavState, V: float, omega: float) -> tuple[float, float, float]:
    if not (math.isfinite(V) and V > 0):
        raise ValueError(f"speed must be positive and finite, got {V!r}")
    if not math.isfinite(omega):
        raise ValueError(f"turn rate must be finite, got {omega!r}")
    return V * math.cos(state.psi), V * math.sin(state.psi), float(omega)


def step(state: UavState, V: float, omega: float, settings: IntegrationSettings) -> UavState:
    """Advance ``state`` by one step of ``settings.dt`` with ``omega`` held."""
    derivative(state, V, omega)  # input validation only
    x, y, psi = _kernels.integrate(
        settings.scheme.code, state.x, state.y, state.psi,
        float(V), float(omega), settings.dt)
    return UavState.from_xy(x, y, psi)
