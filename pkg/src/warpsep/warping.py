"""Time-warping operator and warping-function representation.

The warping operator sends x to y(t) = sqrt(g'(t)) * x(g(t)) for a strictly
increasing C^2 function g.  It is unitary on L^2: warping preserves energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import InterpolatedUnivariateSpline

from .errors import DomainError, InvalidWarping
from .signals import MultichannelSignal

SINC_HALF_WIDTH = 32
KAISER_BETA = 8.0


@dataclass(frozen=True)
class WarpingFunction:
    """Strictly increasing warping g sampled at knots, with its derivative.

    knots_t / knots_value hold (t, g(t)) pairs in seconds; knots_deriv holds
    g'(t) > 0 at the same knots.  Evaluation between knots uses a spline of
    the given order (quadratic by default).
    """

    knots_t: np.ndarray
    knots_value: np.ndarray
    knots_deriv: np.ndarray
    order: int = 2

    def __post_init__(self):
        t = np.asarray(self.knots_t, dtype=float)
        v = np.asarray(self.knots_value, dtype=float)
        d = np.asarray(self.knots_deriv, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.shape != d.shape:
            raise InvalidWarping("knot arrays must be 1-D and of equal length")
        if t.size < self.order + 1:
            raise InvalidWarping("not enough knots for the interpolation order")
        if not np.all(np.diff(t) > 0):
            raise InvalidWarping("knot times must be strictly increasing")
        if not np.all(np.diff(v) > 0):
            raise InvalidWarping("warping values must be strictly increasing")
        if not np.all(d > 0):
            raise InvalidWarping("warping derivative must be positive everywhere")
        object.__setattr__(self, "knots_t", t)
        object.__setattr__(self, "knots_value", v)
        object.__setattr__(self, "knots_deriv", d)

    @classmethod
    def from_callable(cls, gamma, gamma_prime, duration: float,
                      n_knots: int = 1025, order: int = 2) -> "WarpingFunction":
        t = np.linspace(0.0, duration, n_knots)
        return cls(t, gamma(t), gamma_prime(t), order=order)

    @classmethod
    def identity(cls, duration: float, n_knots: int = 65) -> "WarpingFunction":
        return cls.from_callable(lambda t: t, lambda t: np.ones_like(t),
                                 duration, n_knots=n_knots)

    @classmethod
    def dilation(cls, rate: float, duration: float, n_knots: int = 65) -> "WarpingFunction":
        """g(t) = rate * t with rate > 0."""
        if rate <= 0:
            raise InvalidWarping("dilation rate must be positive")
        return cls.from_callable(lambda t: rate * t,
                                 lambda t: np.full_like(t, rate),
                                 duration, n_knots=n_knots)

    @classmethod
    def sinusoidal_rate(cls, amplitude: float, freq_hz: float, phase: float,
                        duration: float, n_knots: int = 4097) -> "WarpingFunction":
        """g'(t) = 1 + amplitude*sin(2*pi*freq_hz*t + phase), g(0) = 0."""
        if not (0 <= amplitude < 1):
            raise InvalidWarping("sinusoidal rate amplitude must be in [0, 1)")
        w = 2 * np.pi * freq_hz

        def gamma(t):
            if freq_hz == 0:
                return (1 + amplitude * np.sin(phase)) * t
            return t + amplitude / w * (np.cos(phase) - np.cos(w * t + phase))

        def gamma_prime(t):
            return 1 + amplitude * np.sin(w * t + phase)

        return cls.from_callable(gamma, gamma_prime, duration, n_knots=n_knots)

    def _spline(self, values):
        return InterpolatedUnivariateSpline(self.knots_t, values, k=self.order, ext="raise")

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        try:
            return self._spline(self.knots_value)(t)
        except ValueError as exc:
            raise DomainError(f"warping evaluated outside knot span: {exc}") from exc

    def derivative(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        try:
            return self._spline(self.knots_deriv)(t)
        except ValueError as exc:
            raise DomainError(f"warping derivative outside knot span: {exc}") from exc

    def inverse(self) -> "WarpingFunction":
        """Inverse warping, knotted at the image points g(t)."""
        return WarpingFunction(self.knots_value, self.knots_t,
                               1.0 / self.knots_deriv, order=self.order)


def sinc_interpolate(x: np.ndarray, positions: np.ndarray,
                     half_width: int = SINC_HALF_WIDTH,
                     beta: float = KAISER_BETA) -> np.ndarray:
    """Band-limited interpolation of samples x at fractional sample positions.

    Kaiser-windowed sinc kernel; samples outside [0, len(x)) are treated as
    zero.  Positions within 1e-9 of an integer snap to the sample value.
    """
    x = np.asarray(x, dtype=float)
    pos = np.asarray(positions, dtype=float)
    rounded = np.round(pos)
    snap = np.abs(pos - rounded) < 1e-9
    pos = np.where(snap, rounded, pos)

    base = np.floor(pos).astype(int)
    offsets = np.arange(-half_width + 1, half_width + 1)
    idx = base[:, None] + offsets[None, :]
    u = pos[:, None] - idx
    arg = 1.0 - (u / half_width) ** 2
    window = np.i0(beta * np.sqrt(np.clip(arg, 0.0, None))) / np.i0(beta)
    kernel = np.sinc(u) * window
    valid = (idx >= 0) & (idx < x.size)
    vals = x[np.clip(idx, 0, x.size - 1)] * valid
    return np.sum(kernel * vals, axis=1)


def apply_time_warp(x: MultichannelSignal, gamma: WarpingFunction,
                    pad: bool = False) -> MultichannelSignal:
    """Warp a single-channel signal: y(t) = sqrt(g'(t)) * x(g(t)).

    The output is sampled on the input grid and has the input length.  When
    g maps outside the support of x, raises DomainError unless pad=True, in
    which case x is taken as zero outside its support.
    """
    if x.n_channels != 1:
        raise ValueError("apply_time_warp expects a single-channel signal")
    t = x.times()
    g = gamma(t)
    gp = gamma.derivative(t)
    if np.any(gp <= 0) or np.any(np.diff(g) <= 0):
        raise InvalidWarping("warping must be strictly increasing on the sample grid")
    if not pad and (g[0] < -0.5 / x.sample_rate or g[-1] > x.duration + 0.5 / x.sample_rate):
        raise DomainError(
            f"warped support [{g[0]:.6f}, {g[-1]:.6f}] s exceeds signal support "
            f"[0, {x.duration:.6f}] s; enable padding or extend the input")
    y = np.sqrt(gp) * sinc_interpolate(x.samples[0], g * x.sample_rate)
    return MultichannelSignal(y[None, :], x.sample_rate)
