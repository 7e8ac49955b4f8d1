"""Source power spectra and scale-domain covariance matrices.

A stationary source with two-sided power spectral density S (normalized so
that the process variance equals the integral of S over all of R, in rad/s)
has analytic-wavelet coefficients whose covariance across scales k, k' is

    q^((s_k + s_k')/2) * integral S(q^-theta * xi)
                         * conj(psi_hat(q^s_k * xi)) * psi_hat(q^s_k' * xi) dxi

where theta is the log-base-q local dilation rate.  Only xi > 0 contributes
because the wavelet is analytic, so the integral runs over xi > 0.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvalidSpectrum
from .wavelet import LogGaussianWavelet, ScaleGrid

WAVELET_TAIL_TOL = 1e-18


@dataclass(frozen=True)
class SourceSpectrum:
    """Sampled nonnegative power spectrum on a positive frequency grid.

    frequencies are in rad/s, strictly increasing and nonnegative; values
    interpolate piecewise-linearly between grid points and are zero outside
    the grid.  The represented process is real, so the density is implicitly
    even: variance = 2 * integral over xi > 0.
    """

    frequencies: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if f.ndim != 1 or f.shape != v.shape or f.size < 2:
            raise InvalidSpectrum("need matching 1-D frequency and value arrays")
        if np.any(f < 0) or not np.all(np.diff(f) > 0):
            raise InvalidSpectrum("frequency grid must be nonnegative and strictly increasing")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise InvalidSpectrum("spectrum values must be finite and nonnegative")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "values", v)

    def __call__(self, xi) -> np.ndarray:
        return np.interp(np.asarray(xi, dtype=float), self.frequencies,
                         self.values, left=0.0, right=0.0)

    @classmethod
    def flat(cls, level: float, xi_max: float) -> "SourceSpectrum":
        """Constant density over (0, xi_max]."""
        return cls(np.array([0.0, xi_max]), np.array([level, level]))

    @classmethod
    def band_pass(cls, low_hz: float, high_hz: float,
                  variance: float = 1.0) -> "SourceSpectrum":
        """Ideal band-pass density carrying the given total variance."""
        if not 0 < low_hz < high_hz:
            raise InvalidSpectrum("need 0 < low_hz < high_hz")
        lo, hi = 2 * np.pi * low_hz, 2 * np.pi * high_hz
        level = variance / (2.0 * (hi - lo))
        return cls(np.array([lo, hi]), np.array([level, level]))

    def variance(self) -> float:
        return 2.0 * float(np.trapezoid(self.values, self.frequencies))

    def is_flat(self, rtol: float = 1e-12) -> bool:
        v = self.values
        return bool(np.all(np.abs(v - v[0]) <= rtol * max(abs(v[0]), 1e-300)))


@dataclass(frozen=True)
class CovarianceMatrix:
    """Scale-domain covariance for one source at one dilation parameter.

    entries is Hermitian (M_s, M_s), already regularized by adding
    `regularization` to the diagonal so the minimum eigenvalue is at least
    the floor used downstream for inversion.
    """

    entries: np.ndarray
    grid: ScaleGrid
    theta: float
    regularization: float = 0.0

    @property
    def n_scales(self) -> int:
        return self.entries.shape[0]


def wavelet_fourier(wavelet: LogGaussianWavelet, xi) -> np.ndarray:
    """Closed-form frequency response psi_hat(xi); zero for xi <= 0."""
    return wavelet.fourier(xi)


class CovarianceBuilder:
    """Precomputed quadrature for covariance matrices on a fixed grid.

    Uses the trapezoid rule on a log-spaced frequency grid with at least
    points_per_bandwidth nodes per wavelet full-width-half-maximum.  The
    node set translates exactly when the scale grid is shifted, which makes
    the scale-shift identity hold to roundoff.
    """

    def __init__(self, grid: ScaleGrid, wavelet: LogGaussianWavelet,
                 points_per_bandwidth: int = 16, floor_scale: float = 1e-8,
                 xi_range: tuple[float, float] | None = None):
        if points_per_bandwidth < 1:
            raise ConfigError("points_per_bandwidth: must be >= 1")
        self.grid = grid
        self.wavelet = wavelet
        self.floor_scale = floor_scale

        lnq = np.log(grid.base)
        ln_peak = np.log(wavelet.peak_freq)
        centers = ln_peak - grid.scales * lnq
        halfwidth = wavelet.log_halfwidth(WAVELET_TAIL_TOL)
        lo = centers.min() - halfwidth
        hi = centers.max() + halfwidth
        if xi_range is not None:
            xlo, xhi = np.log(xi_range[0]), np.log(xi_range[1])
            if xlo > lo or xhi < hi:
                raise ConfigError(
                    "xi_range: quadrature grid does not cover the wavelet band")
            lo, hi = xlo, xhi
        fwhm = 2.0 * np.sqrt(np.log(2.0) / wavelet.bandwidth)
        n_nodes = int(np.ceil((hi - lo) / (fwhm / points_per_bandwidth))) + 1
        u = np.linspace(lo, hi, n_nodes)
        h = (hi - lo) / (n_nodes - 1)
        trap = np.full(n_nodes, h)
        trap[0] = trap[-1] = h / 2.0

        self._u = u
        self._xi = np.exp(u)
        self._weights = self._xi * trap  # d(xi) measure on the log grid
        # filter bank: rows are scales, columns quadrature nodes
        log_ratio = u[None, :] + (grid.scales * lnq)[:, None] - ln_peak
        self._filters = np.exp(-wavelet.bandwidth * log_ratio**2)
        self._prefactor = np.sqrt(grid.base ** grid.scales)
        self._lnq = lnq

    def filter_energies(self) -> np.ndarray:
        """Per-scale energy q^s * integral psi_hat(q^s xi)^2 dxi."""
        e = self._filters**2 @ self._weights
        return self.grid.base ** self.grid.scales * e

    def build(self, spectrum: SourceSpectrum, theta: float,
              floor_scale: float | None = None) -> CovarianceMatrix:
        if not np.isfinite(theta):
            raise ConfigError("theta: must be finite")
        svals = spectrum(np.exp(self._u - theta * self._lnq))
        weighted = self._filters * (self._weights * svals)[None, :]
        core = weighted @ self._filters.T
        sigma = np.outer(self._prefactor, self._prefactor) * core
        sigma = 0.5 * (sigma + sigma.T)
        fs = self.floor_scale if floor_scale is None else floor_scale
        floor = fs * np.trace(sigma) / self.grid.n_scales
        entries = sigma.astype(complex)
        if floor > 0:
            entries[np.diag_indices_from(entries)] += floor
        return CovarianceMatrix(entries, self.grid, float(theta), float(floor))


@functools.lru_cache(maxsize=16)
def _cached_builder(grid_key, wavelet_key, points_per_bandwidth, floor_scale):
    base, scales_bytes = grid_key
    grid = ScaleGrid(base, np.frombuffer(scales_bytes))
    wavelet = LogGaussianWavelet(*wavelet_key)
    return CovarianceBuilder(grid, wavelet, points_per_bandwidth, floor_scale)


def get_builder(grid: ScaleGrid, wavelet: LogGaussianWavelet,
                points_per_bandwidth: int = 16,
                floor_scale: float = 1e-8) -> CovarianceBuilder:
    grid_key = (grid.base, grid.scales.tobytes())
    wavelet_key = (wavelet.peak_freq, wavelet.bandwidth)
    return _cached_builder(grid_key, wavelet_key, points_per_bandwidth, floor_scale)


def build_covariance(spectrum: SourceSpectrum, theta: float, grid: ScaleGrid,
                     wavelet: LogGaussianWavelet,
                     points_per_bandwidth: int = 16,
                     floor_scale: float = 1e-8) -> CovarianceMatrix:
    """Covariance of one source's coefficients across scales at parameter theta."""
    builder = get_builder(grid, wavelet, points_per_bandwidth, floor_scale=0.0)
    return builder.build(spectrum, theta, floor_scale=floor_scale)
