"""Circumnavigation of an unknown static target from range and range-rate only.

A constant-speed unicycle is steered by one of two turn-rate laws (smooth or
signum) that see nothing but the range to the target and its rate of change.
The package simulates the closed loop, predicts the orbit it settles on, and
checks the convergence properties numerically along each trajectory.
"""
from .config import ConfigError, RdotSource, ScenarioConfig, load_config
from .controllers import (ControllerParams, GainVerdict, InvalidGainError, Law,
                          RangeObservation, command, compensated_rd, predicted_radius,
                          signum_omega, smooth_omega, validate_gain)
from .dynamics import IntegrationSettings, Scheme, derivative, step
from .estimation import RateFilterState, UnstableFilterError, filter_init, filter_step
from .geometry import RelativeGeometry, UavState, Vec2, relative_geometry, tangent_cos, wrap_angle
from .harness import BatchEntry, SingularityError, run_batch, run_simulation, sample_initial_state
from .monitors import (MonitorSettings, Rotation, RunReport, bearing_capture_time,
                       check_lyapunov_descent, convergence_time, count_cd_episodes,
                       evaluate_run, lyapunov_signum, lyapunov_smooth, rotation_direction)
from .outputs import read_trace_csv, write_report_json, write_trace_csv
from .trace import SimTrace, TraceSample

__version__ = "0.1.0"
