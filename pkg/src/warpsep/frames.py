"""Frame-grid bookkeeping.

Time-varying quantities (unmixing matrices, dilation parameters) live on a
uniform grid of frame centers; frame j owns the half-open sample interval
[j*hop, (j+1)*hop).  Wavelet coefficients may be taken at several evenly
spaced columns inside each interval (oversampling) to stabilize estimates.
"""

from __future__ import annotations

import numpy as np


def n_frames(n_samples: int, hop: int) -> int:
    return n_samples // hop


def frame_center_samples(n_samples: int, hop: int) -> np.ndarray:
    """Center sample index of each complete frame interval."""
    f = n_frames(n_samples, hop)
    return hop // 2 + hop * np.arange(f)


def frame_center_times(n_samples: int, hop: int, sample_rate: float) -> np.ndarray:
    return frame_center_samples(n_samples, hop) / sample_rate


def column_samples(n_samples: int, hop: int, oversampling: int) -> np.ndarray:
    """Sample indices of the oversampled coefficient columns, frame-major.

    With oversampling m, frame j contributes columns j*m .. j*m + m - 1 at
    evenly spaced positions inside its interval; m = 1 reduces to the frame
    centers.
    """
    f = n_frames(n_samples, hop)
    sub = (np.arange(oversampling) + 0.5) * hop / oversampling
    pos = (hop * np.arange(f))[:, None] + sub[None, :]
    return np.floor(pos).astype(int).ravel()


def column_times(n_samples: int, hop: int, oversampling: int,
                 sample_rate: float) -> np.ndarray:
    return column_samples(n_samples, hop, oversampling) / sample_rate


def frame_slice(j: int, hop: int) -> slice:
    """Sample slice of frame j's interval."""
    return slice(j * hop, (j + 1) * hop)
