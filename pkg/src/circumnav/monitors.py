"""Numeric runtime checks of the convergence and invariance properties.

Every check works on a completed :class:`~circumnav.trace.SimTrace` and only
uses sampled ground-truth quantities, never controller internals.

For k < 0 the closed loop is the mirror image of the k > 0 case (the orbit is
counterclockwise and theta_b settles at 3pi/2). The monitors handle this by
working with the *oriented* bearing ``2pi - theta_b`` whenever k < 0, so the
same intervals ([0, pi] for capture, pi/2 at steady state) apply to both signs.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .controllers import ControllerParams, GainVerdict, Law, predicted_radius
from .geometry import RelativeGeometry
from .trace import SimTrace

__all__ = [
    "Rotation",
    "MonitorSettings",
    "RunReport",
    "oriented_bearing",
    "count_cd_episodes",
    "bearing_capture_time",
    "signum_reaching_time",
    "lyapunov_smooth",
    "lyapunov_smooth_values",
    "lyapunov_signum",
    "lyapunov_values",
    "descent_tolerance",
    "check_lyapunov_descent",
    "rotation_direction",
    "convergence_time",
    "expected_radius",
    "evaluate_run",
]

HALF_PI = 0.5 * math.pi
CAPTURE_TOL = 1e-6
ROTATION_THRESHOLD = 0.25 * math.pi


class Rotation(enum.Enum):
    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"
    INDETERMINATE = "indeterminate"


def oriented_bearing(theta_b, k: float):
    """theta_b for k > 0, its reflection 2pi - theta_b (wrapped) for k < 0."""
    theta_b = np.asarray(theta_b, dtype=float)
    if k > 0:
        return theta_b
    return np.mod(2.0 * math.pi - theta_b, 2.0 * math.pi)


def count_cd_episodes(trace: SimTrace, r_d: float, tol: float = 0.0) -> int:
    """Number of maximal runs of consecutive samples with r < r_d - tol."""
    if len(trace) == 0:
        raise ValueError("empty trace")
    inside = np.asarray(trace.r) < r_d - tol
    starts = np.count_nonzero(inside[1:] & ~inside[:-1])
    return int(starts + inside[0])


def _captured_mask(theta: np.ndarray, upper: float) -> np.ndarray:
    # angles just below 2pi are "just below 0" and count as inside [0, upper]
    return (theta <= upper + CAPTURE_TOL) | (theta >= 2.0 * math.pi - CAPTURE_TOL)


def _capture_index(trace: SimTrace, k: float) -> Optional[int]:
    if len(trace) == 0:
        raise ValueError("empty trace")
    ok = _captured_mask(oriented_bearing(trace.theta_b, k), math.pi)
    bad = np.flatnonzero(~ok)
    if len(bad) == 0:
        return 0
    idx = int(bad[-1]) + 1
    return idx if idx < len(trace) else None


def bearing_capture_time(trace: SimTrace, k: float = 1.0) -> Optional[float]:
    """Earliest sample time after which the (oriented) bearing stays in [0, pi].

    Returns ``None`` if the final sample is still outside.
    """
    idx = _capture_index(trace, k)
    return None if idx is None else float(trace.t[idx])


def _last_exit_index(trace: SimTrace, r_d: float, tol: float) -> int:
    inside = np.flatnonzero(np.asarray(trace.r) < r_d - tol)
    return 0 if len(inside) == 0 else int(inside[-1]) + 1


def _descent_start_index(trace: SimTrace, p: ControllerParams) -> Optional[int]:
    """First sample of the phase in which the Lyapunov value must not grow.

    That is after bearing capture and after the last pass through the circle;
    for the signum law additionally after the oriented bearing first reaches
    pi/2.
    """
    capture = _capture_index(trace, p.k)
    if capture is None:
        return None
    start = max(capture, _last_exit_index(trace, p.r_d, p.V * _step(trace)))
    if start >= len(trace):
        return None
    if p.law is Law.SMOOTH:
        return start
    theta = oriented_bearing(trace.theta_b[start:], p.k)
    hits = np.flatnonzero(_captured_mask(theta, HALF_PI))
    return None if len(hits) == 0 else start + int(hits[0])


def signum_reaching_time(trace: SimTrace, p: ControllerParams) -> Optional[float]:
    """Time from which the signum law keeps the range non-increasing.

    First sample, after capture and after the last pass through the circle,
    with oriented bearing <= pi/2.
    """
    if p.law is not Law.SIGNUM:
        raise ValueError("reaching time is defined for the signum law")
    idx = _descent_start_index(trace, p)
    return None if idx is None else float(trace.t[idx])


def _step(trace: SimTrace) -> float:
    if np.isnan(trace.dt):
        return float(np.median(np.diff(trace.t))) if len(trace) > 1 else 0.0
    return trace.dt


def _ln_antiderivative(z, r_d):
    s = np.sqrt(np.maximum(z * z - r_d * r_d, 0.0))
    return 0.5 * z * s - 0.5 * r_d * r_d * np.log(z + s)


def lyapunov_smooth_values(r, theta_oriented, r_d: float, k: float):
    """Closed-form 1 - sin(theta) + phi(r) for arrays; no domain checks.

    phi(r) = integral from r_a to r of (-1/z + 2|k| sqrt(z^2 - r_d^2)) dz
    """
    r = np.asarray(r, dtype=float)
    kk = abs(k)
    r_a = predicted_radius(r_d, kk)
    phi = -np.log(r / r_a) + 2.0 * kk * (_ln_antiderivative(r, r_d) - _ln_antiderivative(r_a, r_d))
    return np.maximum(1.0 - np.sin(theta_oriented) + phi, 0.0)


def lyapunov_smooth(geom: RelativeGeometry, p: ControllerParams) -> float:
    """Smooth-law Lyapunov value at one sample.

    Requires r >= r_d and the oriented bearing in [0, pi].
    """
    if geom.r < p.r_d:
        raise ValueError(f"Lyapunov function undefined inside the circle (r={geom.r!r})")
    theta = float(oriented_bearing(geom.theta_b, p.k))
    if not bool(_captured_mask(np.array([theta]), math.pi)[0]):
        raise ValueError(f"Lyapunov function undefined for bearing {geom.theta_b!r}")
    if theta > math.pi:
        theta = 0.0
    return float(lyapunov_smooth_values(geom.r, theta, p.r_d, p.k))


def lyapunov_signum(geom: RelativeGeometry, r_d: float) -> float:
    if geom.r < r_d:
        raise ValueError(f"Lyapunov function undefined inside the circle (r={geom.r!r})")
    return geom.r - r_d


def lyapunov_values(trace: SimTrace, p: ControllerParams) -> np.ndarray:
    """Per-sample Lyapunov value for the law in ``p``; NaN where undefined."""
    r = np.asarray(trace.r, dtype=float)
    out = np.full(r.shape, np.nan)
    outside = r >= p.r_d
    if p.law is Law.SIGNUM:
        out[outside] = r[outside] - p.r_d
        return out
    theta = oriented_bearing(trace.theta_b, p.k)
    ok = outside & _captured_mask(theta, math.pi)
    th = np.where(theta[ok] > math.pi, 0.0, theta[ok])
    out[ok] = lyapunov_smooth_values(r[ok], th, p.r_d, p.k)
    return out


def descent_tolerance(dt: float) -> float:
    return 1e-6 + 1e-4 * dt


def check_lyapunov_descent(trace: SimTrace, p: ControllerParams) -> int:
    """Count consecutive-sample increases of the Lyapunov value beyond tolerance.

    Only pairs after the descent phase starts are considered (see
    :func:`_descent_start_index`); pairs with either sample inside the circle
    are skipped.
    """
    if len(trace) < 2:
        return 0
    start = _descent_start_index(trace, p)
    if start is None:
        return 0
    values = lyapunov_values(trace, p)[start:]
    dt = _step(trace)
    inc = values[1:] - values[:-1]
    valid = ~(np.isnan(values[1:]) | np.isnan(values[:-1]))
    return int(np.count_nonzero(inc[valid] > descent_tolerance(dt)))


def rotation_direction(trace: SimTrace, window: float) -> Rotation:
    """Direction of travel around the target over the final ``window`` seconds."""
    if len(trace) < 2 or trace.duration < window * (1.0 - 1e-12):
        raise ValueError(f"trace spans {trace.duration!r} s, shorter than window {window!r} s")
    sel = trace.t >= trace.t[-1] - window * (1.0 + 1e-12)
    los = np.unwrap(np.arctan2(trace.target.y - trace.y[sel], trace.target.x - trace.x[sel]))
    net = float(los[-1] - los[0])
    if net < -ROTATION_THRESHOLD:
        return Rotation.CLOCKWISE
    if net > ROTATION_THRESHOLD:
        return Rotation.COUNTERCLOCKWISE
    return Rotation.INDETERMINATE


def convergence_time(trace: SimTrace, target_radius: float, band: float,
                     hold: float) -> Optional[float]:
    """Earliest t with |r - target_radius| <= band from t to the end, at least ``hold`` long."""
    if not band > 0 or not hold > 0:
        raise ValueError("band and hold must be positive")
    if len(trace) == 0:
        return None
    outside = np.abs(np.asarray(trace.r) - target_radius) > band
    bad = np.flatnonzero(outside)
    idx = 0 if len(bad) == 0 else int(bad[-1]) + 1
    if idx >= len(trace):
        return None
    t = float(trace.t[idx])
    if trace.t[-1] - t < hold * (1.0 - 1e-12):
        return None
    return t


def expected_radius(p: ControllerParams) -> float:
    """Radius the law should settle on for commanded radius ``p.r_d``."""
    if p.law is Law.SMOOTH:
        return predicted_radius(p.r_d, p.k)
    return p.r_d


@dataclass(frozen=True)
class MonitorSettings:
    # capped at half the trace duration
    steady_window: float = 500.0
    bearing_band: float = 0.02
    # radius band for the convergence check; None picks 0.05 m (smooth) / 0.10 m (signum)
    radius_band: Optional[float] = None
    hold: float = 100.0
    # None -> two orbit periods of the expected orbit, capped at steady_window
    rotation_window: Optional[float] = None

    def band_for(self, law: Law) -> float:
        if self.radius_band is not None:
            return self.radius_band
        return 0.05 if law is Law.SMOOTH else 0.10


@dataclass
class RunReport:
    run_index: int
    status: str = "ok"
    error: Optional[str] = None
    initial_state: Optional[tuple[float, float, float]] = None
    final_radius: Optional[float] = None
    steady_radius_mean: Optional[float] = None
    steady_radius_max: Optional[float] = None
    steady_radius_min: Optional[float] = None
    steady_bearing_max_dev: Optional[float] = None
    expected_radius: Optional[float] = None
    convergence_time: Optional[float] = None
    bearing_capture_time: Optional[float] = None
    cd_entry_episodes: Optional[int] = None
    rotation: Optional[Rotation] = None
    lyapunov_violations: Optional[int] = None
    max_abs_omega: Optional[float] = None
    gain_verdict: Optional[GainVerdict] = None
    theorem_verdicts: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if self.cd_entry_episodes is not None and self.cd_entry_episodes < 0:
            raise ValueError("negative episode count")
        lo, mid, hi = self.steady_radius_min, self.steady_radius_mean, self.steady_radius_max
        if None not in (lo, mid, hi) and not lo <= mid <= hi:
            raise ValueError("steady radius statistics out of order")

    @property
    def passed(self) -> bool:
        return self.status == "ok" and all(self.theorem_verdicts.values())

    @classmethod
    def failed(cls, run_index: int, error: str, initial_state=None) -> RunReport:
        return cls(run_index=run_index, status="failed", error=error, initial_state=initial_state,
                   theorem_verdicts={"completed": False})


def evaluate_run(trace: SimTrace, p: ControllerParams, V: float,
                 settings: MonitorSettings = MonitorSettings(), run_index: int = 0) -> RunReport:
    """Apply every monitor to ``trace`` and collect the verdicts.

    ``p`` carries the commanded (possibly compensated) radius actually used by
    the law. Convergence claims are only checked for gains above the
    sufficient bound; the entry and capture properties are checked always.
    """
    if len(trace) < 2:
        raise ValueError("trace too short to evaluate")
    t_end = float(trace.t[-1])
    # short traces: never let the steady window reach back into the first half
    window = min(settings.steady_window, 0.5 * trace.duration)
    steady = trace.t >= t_end - window * (1.0 + 1e-12)
    r_steady = trace.r[steady]
    theta_steady = oriented_bearing(trace.theta_b[steady], p.k)

    target_r = expected_radius(p)
    band = settings.band_for(p.law)
    hold = min(settings.hold, trace.duration)
    rot_window = settings.rotation_window
    if rot_window is None:
        rot_window = min(2.0 * 2.0 * math.pi * target_r / V, window)
    rot_window = min(rot_window, trace.duration)

    gain = p.verdict
    eps = V * trace.dt
    report = RunReport(
        run_index=run_index,
        initial_state=(float(trace.x[0]), float(trace.y[0]), float(trace.psi[0])),
        final_radius=float(trace.r[-1]),
        steady_radius_mean=float(np.mean(r_steady)),
        steady_radius_max=float(np.max(r_steady)),
        steady_radius_min=float(np.min(r_steady)),
        steady_bearing_max_dev=float(np.max(np.abs(theta_steady - HALF_PI))),
        expected_radius=target_r,
        convergence_time=convergence_time(trace, target_r, band, hold),
        bearing_capture_time=bearing_capture_time(trace, p.k),
        cd_entry_episodes=count_cd_episodes(trace, p.r_d, tol=eps),
        rotation=rotation_direction(trace, rot_window),
        lyapunov_violations=check_lyapunov_descent(trace, p),
        max_abs_omega=float(np.max(np.abs(trace.omega))),
        gain_verdict=gain,
    )
    v = report.theorem_verdicts
    v["single_cd_entry"] = report.cd_entry_episodes <= 1
    v["bearing_captured"] = report.bearing_capture_time is not None
    if p.law is Law.SIGNUM:
        v["saturated"] = report.max_abs_omega <= abs(p.k)
    if gain is GainVerdict.VALID:
        v["lyapunov_descent"] = report.lyapunov_violations == 0
        v["converged"] = (report.convergence_time is not None
                          and abs(report.steady_radius_mean - target_r) <= band)
        v["bearing_settled"] = report.steady_bearing_max_dev <= settings.bearing_band
        want = Rotation.CLOCKWISE if p.k > 0 else Rotation.COUNTERCLOCKWISE
        v["rotation"] = report.rotation is want
    return report
