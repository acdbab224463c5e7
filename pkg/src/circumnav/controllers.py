"""Turn-rate laws driven by range and range rate only, plus equilibrium analysis.

Neither law sees the vehicle position or bearing: the only vehicle information
a law receives is a :class:`RangeObservation`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import _kernels

__all__ = [
    "Law",
    "GainVerdict",
    "InvalidGainError",
    "ControllerParams",
    "RangeObservation",
    "smooth_omega",
    "signum_omega",
    "command",
    "gain_bound",
    "validate_gain",
    "predicted_radius",
    "compensated_rd",
]


class InvalidGainError(ValueError):
    pass


class Law(enum.Enum):
    SMOOTH = "smooth"
    SIGNUM = "sign"

    @classmethod
    def parse(cls, value) -> Law:
        if isinstance(value, Law):
            return value
        value = str(value).lower()
        if value == "signum":
            return cls.SIGNUM
        return cls(value)

    @property
    def code(self) -> int:
        return _kernels.LAW_SMOOTH if self is Law.SMOOTH else _kernels.LAW_SIGNUM


class GainVerdict(enum.Enum):
    VALID = "valid"
    BELOW_THEOREM_BOUND = "below_theorem_bound"


@dataclass(frozen=True)
class ControllerParams:
    """Gain ``k`` has units 1/(m^2 s) for the smooth law and rad/s for the signum law."""

    k: float
    r_d: float
    V: float
    law: Law = Law.SMOOTH

    def __post_init__(self):
        object.__setattr__(self, "law", Law.parse(self.law))
        if not (math.isfinite(self.r_d) and self.r_d > 0):
            raise ValueError(f"r_d must be positive, got {self.r_d!r}")
        if not (math.isfinite(self.V) and self.V > 0):
            raise ValueError(f"V must be positive, got {self.V!r}")
        if not math.isfinite(self.k) or self.k == 0:
            raise InvalidGainError(f"k must be finite and nonzero, got {self.k!r}")

    @property
    def verdict(self) -> GainVerdict:
        return validate_gain(self)


@dataclass(frozen=True)
class RangeObservation:
    r: float
    r_dot: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"observed range must be positive, got {self.r!r}")
        if not math.isfinite(self.r_dot):
            raise ValueError(f"observed range rate must be finite, got {self.r_dot!r}")


def smooth_omega(obs: RangeObservation, p: ControllerParams) -> float:
    """k * [2 r V cos(pi - asin(r_d/r)) - 2 r r_dot] outside the circle, else 0."""
    if p.law is not Law.SMOOTH:
        raise ValueError("smooth_omega called with non-smooth parameters")
    return _kernels.smooth_omega(obs.r, obs.r_dot, p.k, p.r_d, p.V)


def signum_omega(obs: RangeObservation, p: ControllerParams) -> float:
    """k * sign(V cos(pi - asin(r_d/r)) - r_dot) outside the circle, else 0.

    sign(0) is taken as 0.
    """
    if p.law is not Law.SIGNUM:
        raise ValueError("signum_omega called with non-signum parameters")
    return _kernels.signum_omega(obs.r, obs.r_dot, p.k, p.r_d, p.V)


def command(obs: RangeObservation, p: ControllerParams) -> float:
    if p.law is Law.SMOOTH:
        return smooth_omega(obs, p)
    return signum_omega(obs, p)


def gain_bound(law: Law, r_d: float, V: float) -> float:
    """Sufficient lower bound on |k| for guaranteed convergence."""
    if Law.parse(law) is Law.SMOOTH:
        return 1.0 / (2.0 * r_d * r_d)
    return V / r_d


def validate_gain(p: ControllerParams) -> GainVerdict:
    if abs(p.k) > gain_bound(p.law, p.r_d, p.V):
        return GainVerdict.VALID
    return GainVerdict.BELOW_THEOREM_BOUND


def predicted_radius(r_d: float, k: float) -> float:
    """Equilibrium orbit radius of the smooth law.

    r_a = sqrt((r_d^2 + sqrt(r_d^4 + 1/k^2)) / 2)
    """
    if k == 0 or not math.isfinite(k):
        raise InvalidGainError(f"k must be finite and nonzero, got {k!r}")
    if not r_d > 0:
        raise ValueError(f"r_d must be positive, got {r_d!r}")
    rd2 = r_d * r_d
    # hypot keeps r_d^4 + 1/k^2 from overflowing for large r_d or tiny k
    return math.sqrt(0.5 * (rd2 + math.hypot(rd2, 1.0 / k)))


def compensated_rd(r_d: float, k: float) -> float:
    """Commanded radius for which the smooth law settles on ``r_d`` itself.

    Requires |k| > 1/(2 r_d^2); raises :class:`InvalidGainError` otherwise.
    """
    if not r_d > 0:
        raise ValueError(f"r_d must be positive, got {r_d!r}")
    if not math.isfinite(k) or abs(k) <= 1.0 / (2.0 * r_d * r_d):
        raise InvalidGainError(
            f"|k|={abs(k)!r} must exceed 1/(2 r_d^2)={1.0 / (2.0 * r_d * r_d)!r}")
    return r_d * math.sqrt(1.0 - 1.0 / (4.0 * k * k * r_d ** 4))
