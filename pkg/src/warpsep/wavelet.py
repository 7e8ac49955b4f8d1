"""Analytic wavelet, scale grid, and the fast continuous wavelet transform.

The transform of x at scale s and time tau is the inner product of x with
q^(-s/2) * psi((t - tau)/q^s); it is evaluated for all tau at once by
multiplying the signal spectrum with q^(s/2)*conj(psi_hat(q^s * xi)) and
inverse transforming, then subsampling at the requested frame times.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .errors import DomainError
from .signals import MultichannelSignal


@dataclass(frozen=True)
class LogGaussianWavelet:
    """Analytic wavelet with log-Gaussian frequency profile.

    psi_hat(xi) = exp(-bandwidth * log(xi/peak_freq)^2) for xi > 0, else 0.
    peak_freq is in rad/s.  Larger bandwidth values give a narrower filter
    in log-frequency.  psi_hat(0) = 0, so the wavelet is admissible.
    """

    peak_freq: float
    bandwidth: float

    def __post_init__(self):
        if not self.peak_freq > 0:
            raise ValueError("peak_freq must be positive (rad/s)")
        if not self.bandwidth > 0:
            raise ValueError("bandwidth must be positive")

    def fourier(self, xi) -> np.ndarray:
        """Closed-form psi_hat(xi); zero for xi <= 0."""
        xi = np.asarray(xi, dtype=float)
        scalar = xi.ndim == 0
        xi = np.atleast_1d(xi)
        out = np.zeros_like(xi)
        pos = xi > 0
        out[pos] = np.exp(-self.bandwidth * np.log(xi[pos] / self.peak_freq) ** 2)
        return out[0] if scalar else out

    def log_halfwidth(self, tol: float = 1e-18) -> float:
        """Natural-log frequency radius where psi_hat drops below tol."""
        return np.sqrt(np.log(1.0 / tol) / self.bandwidth)

    def energy(self) -> float:
        """Closed form of the squared-filter integral over xi > 0.

        With a = 2*bandwidth:  integral exp(-a u^2 + u) du * peak_freq
        = peak_freq * sqrt(pi/a) * exp(1/(4a)).
        """
        a = 2.0 * self.bandwidth
        return self.peak_freq * np.sqrt(np.pi / a) * np.exp(1.0 / (4.0 * a))

    def time_radius(self, energy_frac: float = 0.9999) -> float:
        """Effective half-support of the mother wavelet in seconds.

        Radius around the envelope center containing energy_frac of the
        mother wavelet's energy, computed once numerically.
        """
        return _mother_time_radius(self.peak_freq, self.bandwidth, energy_frac)


@functools.lru_cache(maxsize=32)
def _mother_time_radius(peak_freq: float, bandwidth: float, energy_frac: float) -> float:
    wav = LogGaussianWavelet(peak_freq, bandwidth)
    xi_max = peak_freq * np.exp(wav.log_halfwidth())
    n = 1 << 16
    xi = np.linspace(0.0, xi_max, n)
    psi = scipy.fft.ifft(wav.fourier(xi))
    # time step of the synthesis grid: 2*pi / xi_max
    dt = 2.0 * np.pi / xi_max
    e = np.abs(psi) ** 2
    # envelope is centered at t = 0 (wrapped); unwrap to [-n/2, n/2)
    e = np.roll(e, n // 2)
    center = n // 2
    total = e.sum()
    radius = 0
    acc = e[center]
    while acc < energy_frac * total and radius < n // 2 - 1:
        radius += 1
        acc += e[center + radius] + e[center - radius]
    return radius * dt


@dataclass(frozen=True)
class ScaleGrid:
    """Log-scale grid: scale factors are base**s for the listed s values."""

    base: float
    scales: np.ndarray

    def __post_init__(self):
        if not self.base > 1:
            raise ValueError("base q must exceed 1")
        s = np.asarray(self.scales, dtype=float)
        if s.ndim != 1 or s.size < 2:
            raise ValueError("need at least 2 scales")
        if not np.all(np.diff(s) > 0):
            raise ValueError("scales must be strictly increasing")
        object.__setattr__(self, "scales", s)

    @classmethod
    def regular(cls, base: float, n_scales: int, s_min: float = 0.0,
                step: float = 1.0) -> "ScaleGrid":
        return cls(base, s_min + step * np.arange(n_scales))

    @property
    def n_scales(self) -> int:
        return self.scales.size

    @property
    def step(self) -> float:
        """Uniform scale spacing; raises if the grid is irregular."""
        d = np.diff(self.scales)
        if not np.allclose(d, d[0], rtol=1e-9, atol=0):
            raise ValueError("scale grid is not uniform")
        return float(d[0])

    def scale_factors(self) -> np.ndarray:
        return self.base ** self.scales

    def center_frequencies(self, wavelet: LogGaussianWavelet) -> np.ndarray:
        """Peak frequency of each scale's filter, rad/s (decreasing in s)."""
        return wavelet.peak_freq * self.base ** (-self.scales)


@dataclass(frozen=True)
class WaveletCoefficientBlock:
    """Transform coefficients indexed by (channel, scale, frame).

    frame_times are in seconds with uniform spacing; boundary_margins gives,
    per scale, the number of samples near either signal edge whose
    coefficients are contaminated by the zero-padding (one wavelet support).
    """

    coefficients: np.ndarray
    frame_times: np.ndarray
    grid: ScaleGrid
    boundary_margins: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coefficients)
        if c.ndim != 3:
            raise ValueError("coefficients must be (channels, scales, frames)")
        if c.shape[1] != self.grid.n_scales:
            raise ValueError("scale axis does not match the grid")
        t = np.asarray(self.frame_times, dtype=float)
        if t.size != c.shape[2]:
            raise ValueError("frame axis does not match frame_times")
        if t.size > 1:
            d = np.diff(t)
            if not np.allclose(d, d[0], rtol=1e-6, atol=1e-12):
                raise ValueError("frame grid must be uniform")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "frame_times", t)

    @property
    def n_channels(self) -> int:
        return self.coefficients.shape[0]

    @property
    def n_frames(self) -> int:
        return self.coefficients.shape[2]

    @property
    def frame_spacing(self) -> float:
        t = self.frame_times
        return float(t[1] - t[0]) if t.size > 1 else 0.0

    def frame_matrix(self, j: int) -> np.ndarray:
        """(channels, scales) coefficient matrix of frame j."""
        return self.coefficients[:, :, j]


def boundary_margin_samples(wavelet: LogGaussianWavelet, grid: ScaleGrid,
                            sample_rate: float) -> np.ndarray:
    """Per-scale boundary contamination margin, in samples."""
    radius = wavelet.time_radius()
    return np.ceil(radius * grid.scale_factors() * sample_rate).astype(int)


def cwt(signal: MultichannelSignal, wavelet: LogGaussianWavelet,
        grid: ScaleGrid, frame_times: np.ndarray) -> WaveletCoefficientBlock:
    """FFT-based continuous wavelet transform sampled at frame times.

    The signal is zero-padded past its end by the largest wavelet support so
    the transform is a linear (non-circular) filtering; coefficients within
    one wavelet support of either edge are flagged via boundary_margins.
    """
    fs = signal.sample_rate
    t_frames = np.asarray(frame_times, dtype=float)
    idx = np.round(t_frames * fs).astype(int)
    if np.any(idx < 0) or np.any(idx >= signal.n_samples):
        raise DomainError("frame times fall outside the signal support")

    margins = boundary_margin_samples(wavelet, grid, fs)
    nfft = scipy.fft.next_fast_len(signal.n_samples + 2 * int(margins.max()))
    xf = scipy.fft.fft(signal.samples, n=nfft, axis=1)
    xi = 2.0 * np.pi * scipy.fft.fftfreq(nfft, d=1.0 / fs)

    n_scales = grid.n_scales
    coeffs = np.empty((signal.n_channels, n_scales, idx.size), dtype=complex)
    for k, s in enumerate(grid.scales):
        filt = grid.base ** (s / 2.0) * np.conj(wavelet.fourier(grid.base**s * xi))
        w_full = scipy.fft.ifft(xf * filt[None, :], axis=1)
        coeffs[:, k, :] = w_full[:, idx]
    return WaveletCoefficientBlock(coeffs, t_frames, grid, margins)
