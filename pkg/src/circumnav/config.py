"""Scenario configuration and its flat-JSON representation.

Defaults reproduce the reference scenario: V = 1, target at (0, -10),
r_d = 10, smooth law with k = 0.01, initial pose drawn from
[0, 10] x [0, 10] x [0, 2pi).
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Optional

from .controllers import (ControllerParams, InvalidGainError, Law, compensated_rd,
                          predicted_radius, validate_gain)
from .dynamics import IntegrationSettings, Scheme
from .geometry import UavState, Vec2

__all__ = ["ConfigError", "RdotSource", "ScenarioConfig", "load_config"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RdotSource:
    """Where the controller's range rate comes from: ``tau=None`` means ground truth."""

    tau: Optional[float] = None

    @classmethod
    def parse(cls, value) -> RdotSource:
        if isinstance(value, RdotSource):
            return value
        text = str(value).strip().lower()
        if text in ("truth", "ground_truth"):
            return cls(None)
        if text.startswith("filter:"):
            try:
                tau = float(text.split(":", 1)[1])
            except ValueError:
                raise ConfigError(f"bad filter time constant in {value!r}") from None
            if not (math.isfinite(tau) and tau > 0):
                raise ConfigError(f"filter time constant must be positive, got {tau!r}")
            return cls(tau)
        raise ConfigError(f"rdot source must be 'truth' or 'filter:<tau>', got {value!r}")

    @property
    def filtered(self) -> bool:
        return self.tau is not None

    def __str__(self) -> str:
        return "truth" if self.tau is None else f"filter:{self.tau:g}"


Box = tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class ScenarioConfig:
    v: float = 1.0
    target: tuple[float, float] = (0.0, -10.0)
    r_d: float = 10.0
    k: float = 0.01
    law: Law = Law.SMOOTH
    compensate_rd: bool = False
    rdot_source: RdotSource = RdotSource()
    dt: float = 0.01
    scheme: Scheme = Scheme.RK4
    duration: float = 3000.0
    # explicit initial pose (x, y, psi); when None the pose is sampled from init_box
    init_state: Optional[tuple[float, float, float]] = None
    init_box: Box = ((0.0, 10.0), (0.0, 10.0))
    # a zero-width position box is rejected unless explicitly allowed
    allow_point_box: bool = False
    seed: int = 0
    runs: int = 1

    def __post_init__(self):
        set_ = lambda name, val: object.__setattr__(self, name, val)  # noqa: E731
        try:
            set_("law", Law.parse(self.law))
            set_("scheme", Scheme(self.scheme))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        set_("rdot_source", RdotSource.parse(self.rdot_source))
        set_("target", _pair("target", self.target))
        set_("init_box", (_pair("init_box x", self.init_box[0]), _pair("init_box y", self.init_box[1])))
        if self.init_state is not None:
            state = tuple(float(v) for v in self.init_state)
            if len(state) != 3 or not all(map(math.isfinite, state)):
                raise ConfigError(f"init_state must be three finite numbers, got {self.init_state!r}")
            set_("init_state", state)
        for name in ("v", "r_d", "dt", "duration"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val > 0):
                raise ConfigError(f"{name} must be a positive number, got {val!r}")
        if not (isinstance(self.k, (int, float)) and math.isfinite(self.k) and self.k != 0):
            raise ConfigError(f"k must be a finite nonzero number, got {self.k!r}")
        if isinstance(self.runs, bool) or not isinstance(self.runs, int) or self.runs < 1:
            raise ConfigError(f"runs must be an integer >= 1, got {self.runs!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        (x0, x1), (y0, y1) = self.init_box
        if x1 < x0 or y1 < y0:
            raise ConfigError(f"init_box bounds are inverted: {self.init_box!r}")
        if (x1 == x0 or y1 == y0) and not self.allow_point_box:
            raise ConfigError("init_box has zero width; set allow_point_box to accept it")
        if self.compensate_rd:
            if self.law is not Law.SMOOTH:
                raise ConfigError("radius compensation is only defined for the smooth law")
            try:
                compensated_rd(self.r_d, self.k)
            except InvalidGainError as exc:
                raise ConfigError(f"cannot compensate r_d: {exc}") from None
        if self.rdot_source.filtered and self.dt >= self.rdot_source.tau:
            raise ConfigError(f"dt={self.dt!r} must be below filter tau={self.rdot_source.tau!r}")

    # derived quantities, resolved once per config

    @property
    def target_vec(self) -> Vec2:
        return Vec2(*self.target)

    @property
    def effective_r_d(self) -> float:
        return compensated_rd(self.r_d, self.k) if self.compensate_rd else self.r_d

    @property
    def controller(self) -> ControllerParams:
        return ControllerParams(k=self.k, r_d=self.effective_r_d, V=self.v, law=self.law)

    @property
    def integration(self) -> IntegrationSettings:
        return IntegrationSettings(dt=self.dt, scheme=self.scheme)

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))

    @property
    def initial_state(self) -> Optional[UavState]:
        return None if self.init_state is None else UavState.from_xy(*self.init_state)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["law"] = self.law.value
        d["scheme"] = self.scheme.value
        d["rdot_source"] = str(self.rdot_source)
        d["target"] = list(self.target)
        d["init_box"] = [list(self.init_box[0]), list(self.init_box[1])]
        d["init_state"] = None if self.init_state is None else list(self.init_state)
        return d

    def resolved(self) -> dict[str, Any]:
        """Config plus the derived values used by the run, for provenance."""
        d = self.to_dict()
        p = self.controller
        d["effective_r_d"] = p.r_d
        d["gain_verdict"] = validate_gain(p).value
        d["expected_radius"] = predicted_radius(p.r_d, p.k) if self.law is Law.SMOOTH else p.r_d
        d["n_steps"] = self.n_steps
        return d

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ScenarioConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def override(self, **changes) -> ScenarioConfig:
        """Copy with the non-None entries of ``changes`` applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _pair(name: str, value) -> tuple[float, float]:
    try:
        a, b = value
        a, b = float(a), float(b)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a pair of numbers, got {value!r}") from None
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return a, b


def load_config(path: str | Path) -> ScenarioConfig:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return ScenarioConfig.from_dict(data)
