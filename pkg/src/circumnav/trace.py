"""Column-oriented simulation traces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .geometry import RelativeGeometry, UavState, Vec2

__all__ = ["COLUMNS", "TraceSample", "SimTrace"]

COLUMNS = ("t", "x", "y", "psi", "r", "theta_b", "omega", "rdot_true", "rdot_est", "lyap")


@dataclass(frozen=True)
class TraceSample:
    t: float
    state: UavState
    geom: RelativeGeometry
    omega: float
    r_dot_est: Optional[float] = None
    lyap: Optional[float] = None


def _opt(v: float) -> Optional[float]:
    return None if math.isnan(v) else float(v)


@dataclass
class SimTrace:
    """Time-indexed record of one run, one numpy array per column.

    Undefined entries (no filter estimate, Lyapunov value outside its domain)
    are stored as NaN.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    psi: np.ndarray
    r: np.ndarray
    theta_b: np.ndarray
    omega: np.ndarray
    rdot_true: np.ndarray
    rdot_est: np.ndarray
    lyap: np.ndarray
    target: Vec2 = Vec2(0.0, 0.0)
    dt: float = float("nan")
    config: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_columns(cls, t, target: Vec2 = Vec2(0.0, 0.0), dt: Optional[float] = None,
                     config: Optional[dict] = None, **columns) -> SimTrace:
        """Build a trace from whichever columns are given; the rest are NaN."""
        t = np.asarray(t, dtype=float)
        unknown = set(columns) - set(COLUMNS)
        if unknown:
            raise KeyError(f"unknown trace columns: {sorted(unknown)}")
        cols = {}
        for name in COLUMNS[1:]:
            if name in columns:
                col = np.asarray(columns[name], dtype=float)
                if col.shape != t.shape:
                    raise ValueError(f"column {name!r} has shape {col.shape}, expected {t.shape}")
            else:
                col = np.full(t.shape, np.nan)
            cols[name] = col
        if dt is None:
            dt = float(t[1] - t[0]) if len(t) > 1 else float("nan")
        return cls(t=t, target=target, dt=dt, config=dict(config or {}), **cols)

    def __len__(self) -> int:
        return len(self.t)

    def __getitem__(self, i: int) -> TraceSample:
        return TraceSample(
            t=float(self.t[i]),
            state=UavState.from_xy(float(self.x[i]), float(self.y[i]), float(self.psi[i])),
            geom=RelativeGeometry(float(self.r[i]), float(self.rdot_true[i]), float(self.theta_b[i])),
            omega=float(self.omega[i]),
            r_dot_est=_opt(self.rdot_est[i]),
            lyap=_opt(self.lyap[i]),
        )

    def column_matrix(self) -> np.ndarray:
        return np.column_stack([getattr(self, c) for c in COLUMNS]) if len(self) else np.empty((0, len(COLUMNS)))

    @property
    def duration(self) -> float:
        return float(self.t[-1] - self.t[0]) if len(self) else 0.0
