import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

Matrix = list[list[float]]

_PSD_TOLERANCE = 1e-10


def _as_square_matrix(value):
    # A flat list of numbers is shorthand for a diagonal matrix.
    if isinstance(value, (list, tuple)) and value and all(isinstance(v, (int, float)) for v in value):
        return np.diag(np.asarray(value, dtype=float)).tolist()
    return value


def _check_psd(name: str, matrix: np.ndarray) -> None:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"{name} must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError(f"{name} has non-finite entries")
    if not np.allclose(matrix, matrix.T, rtol=0.0, atol=_PSD_TOLERANCE):
        raise ValueError(f"{name} must be symmetric")
    if matrix.size and np.linalg.eigvalsh(matrix).min() < -_PSD_TOLERANCE:
        raise ValueError(f"{name} must be positive semidefinite")


class CartPoleParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    cart_mass: float = Field(default=1.0, gt=0)
    pole_mass: float = Field(default=0.1, gt=0)
    pole_half_length: float = Field(default=0.5, gt=0)
    gravity: float = 9.8
    dt: float = Field(default=0.02, gt=0)
    force_limit: float | None = Field(default=None, gt=0)
    cart_friction: float = Field(default=0.0, ge=0)
    pole_friction: float = Field(default=0.0, ge=0)


class DoubleIntegratorParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    dt: float = Field(default=0.02, gt=0)


class PendulumParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    mass: float = Field(default=1.0, gt=0)
    length: float = Field(default=1.0, gt=0)
    gravity: float = 9.8
    damping: float = Field(default=0.0, ge=0)
    dt: float = Field(default=0.02, gt=0)


class CostSpec(BaseModel):
    """Quadratic running / terminal weights plus target state and optional reference controls."""

    model_config = ConfigDict(extra="forbid")

    q: Matrix
    r: Matrix
    q_terminal: Matrix
    x_target: list[float]
    u_ref: list[list[float]] | None = None
    angle_dims: list[int] = Field(default_factory=list)

    _q: np.ndarray = PrivateAttr()
    _r: np.ndarray = PrivateAttr()
    _q_terminal: np.ndarray = PrivateAttr()
    _x_target: np.ndarray = PrivateAttr()
    _u_ref: np.ndarray | None = PrivateAttr(default=None)
    _angle_mask: np.ndarray = PrivateAttr()

    @field_validator("q", "r", "q_terminal", mode="before")
    @classmethod
    def _expand_diagonal(cls, value):
        return _as_square_matrix(value)

    @model_validator(mode="after")
    def _validate_shapes(self) -> "CostSpec":
        q = np.asarray(self.q, dtype=float)
        r = np.asarray(self.r, dtype=float)
        q_terminal = np.asarray(self.q_terminal, dtype=float)
        for name, matrix in (("q", q), ("r", r), ("q_terminal", q_terminal)):
            _check_psd(name, matrix)

        n = len(self.x_target)
        if q.shape != (n, n) or q_terminal.shape != (n, n):
            raise ValueError(f"q and q_terminal must be {n}x{n} to match x_target")
        if self.u_ref is not None:
            u_ref = np.asarray(self.u_ref, dtype=float)
            if u_ref.ndim != 2 or u_ref.shape[1] != r.shape[0]:
                raise ValueError(f"u_ref rows must have {r.shape[0]} entries")
        for index in self.angle_dims:
            if not 0 <= index < n:
                raise ValueError(f"angle dim {index} outside state dimension {n}")
        return self

    def model_post_init(self, __context) -> None:
        self._q = np.asarray(self.q, dtype=float)
        self._r = np.asarray(self.r, dtype=float)
        self._q_terminal = np.asarray(self.q_terminal, dtype=float)
        self._x_target = np.asarray(self.x_target, dtype=float)
        self._u_ref = None if self.u_ref is None else np.asarray(self.u_ref, dtype=float)
        mask = np.zeros(len(self.x_target), dtype=bool)
        mask[[i for i in self.angle_dims if 0 <= i < mask.size]] = True
        self._angle_mask = mask

    @property
    def state_dim(self) -> int:
        return len(self.x_target)

    @property
    def control_dim(self) -> int:
        return self._r.shape[0]

    @property
    def q_matrix(self) -> np.ndarray:
        return self._q

    @property
    def r_matrix(self) -> np.ndarray:
        return self._r

    @property
    def q_terminal_matrix(self) -> np.ndarray:
        return self._q_terminal

    @property
    def target(self) -> np.ndarray:
        return self._x_target

    @property
    def reference(self) -> np.ndarray | None:
        return self._u_ref

    @property
    def angle_mask(self) -> np.ndarray:
        return self._angle_mask


class SvgdConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    step_size: float = Field(default=0.05, ge=0)
    iterations: int = Field(default=100, ge=0)
    bandwidth: float | Literal["median"] = 1.0
    alpha: float = Field(default=1.0, gt=0)
    use_squared_norm: bool = True
    grad_clip: float | None = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _validate(self) -> "SvgdConfig":
        if self.iterations > 0 and self.step_size <= 0:
            raise ValueError("svgd step_size must be > 0 when iterations > 0")
        if isinstance(self.bandwidth, float) and self.bandwidth <= 0:
            raise ValueError("svgd bandwidth must be > 0 or 'median'")
        return self


class ControllerConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    num_samples: int = Field(ge=1)
    horizon: int = Field(ge=1)
    lambda_: float = Field(alias="lambda", gt=0)
    sigma: float | list[float]
    seed: int = Field(default=0, ge=0, lt=2**64)
    terminal_init: Literal["zero", "ppo-hook"] = "zero"
    svgd: SvgdConfig = Field(default_factory=SvgdConfig)

    @field_validator("sigma")
    @classmethod
    def _positive_sigma(cls, value):
        values = [value] if isinstance(value, (int, float)) else value
        if not values or any(not math.isfinite(v) or v <= 0 for v in values):
            raise ValueError("sigma must be finite and > 0 in every control dimension")
        return value

    def sigma_vector(self, control_dim: int) -> np.ndarray:
        sigma = np.atleast_1d(np.asarray(self.sigma, dtype=float))
        if sigma.size == 1:
            return np.full(control_dim, float(sigma[0]))
        if sigma.size != control_dim:
            raise ValueError(f"sigma has {sigma.size} entries, control dimension is {control_dim}")
        return sigma


class MseCriterion(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    signal_index: int = Field(ge=0)
    target: float = 0.0
    wrap_angle: bool = False


class SettlingCriterion(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str
    signal_index: int = Field(ge=0)
    target: float = 0.0
    band: float = Field(gt=0)
    mode: Literal["absolute", "fraction-of-range"] = "absolute"
    step_range: float = Field(default=math.pi, gt=0)
    wrap_angle: bool = False

    @property
    def half_width(self) -> float:
        # Fraction-of-range bands are half-widths of band * step_range around the target.
        if self.mode == "absolute":
            return self.band
        return self.band * self.step_range
