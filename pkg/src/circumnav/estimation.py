"""Dirty-derivative range-rate estimator, s / (tau s + 1), explicit Euler."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import _kernels

__all__ = ["RateFilterState", "UnstableFilterError", "filter_init", "filter_step"]


class UnstableFilterError(ValueError):
    pass


@dataclass(frozen=True)
class RateFilterState:
    y_hat: float
    tau: float
    initialized: bool = True


def filter_init(r0: float, tau: float) -> RateFilterState:
    if not (math.isfinite(tau) and tau > 0):
        raise ValueError(f"time constant must be positive, got {tau!r}")
    if not (math.isfinite(r0) and r0 > 0):
        raise ValueError(f"initial range must be positive, got {r0!r}")
    return RateFilterState(y_hat=float(r0), tau=float(tau), initialized=True)


def filter_step(state: RateFilterState, r: float, dt: float) -> tuple[RateFilterState, float]:
    """Feed one range sample; return the new state and the rate estimate.

    The estimate is taken before the lag state is advanced, so the first call
    after :func:`filter_init` with ``r == r0`` returns exactly 0.
    """
    if not state.initialized:
        raise ValueError("filter used before initialization")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    if dt >= state.tau:
        raise UnstableFilterError(
            f"dt={dt!r} >= tau={state.tau!r}: explicit update is not stable")
    y_hat, est = _kernels.filter_update(state.y_hat, float(r), state.tau, float(dt))
    return replace(state, y_hat=y_hat), est
