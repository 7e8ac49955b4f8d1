"""Multichannel time-domain signal container."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MultichannelSignal:
    """N uniformly sampled real channels.

    samples has shape (n_channels, n_samples); sample_rate is in Hz.
    """

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        samples = np.atleast_2d(np.asarray(self.samples, dtype=float))
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 2:
            raise ValueError("samples must be a (channels, time) matrix")
        n, t = samples.shape
        if n < 1 or t < 2:
            raise ValueError(f"need N >= 1 channels and T >= 2 samples, got {n}x{t}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        if not self.sample_rate > 0:
            raise ValueError("sample_rate must be positive")

    @property
    def n_channels(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    @property
    def duration(self) -> float:
        """Signal support length in seconds, (T-1)/fs."""
        return (self.n_samples - 1) / self.sample_rate

    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sample_rate

    def channel(self, i: int) -> "MultichannelSignal":
        return MultichannelSignal(self.samples[i : i + 1].copy(), self.sample_rate)

    def energy(self) -> np.ndarray:
        """Per-channel energy, sum(x^2)/fs (integral approximation)."""
        return np.sum(self.samples**2, axis=1) / self.sample_rate
