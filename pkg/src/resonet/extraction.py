"""Inverse design helpers: coupling and external-Q extraction from responses.

These invert the standard bench procedure: a weakly loaded resonator pair
shows two resonance peaks whose splitting encodes the inter-resonator
coupling, and a singly loaded resonator's 3 dB width encodes its external
quality factor. Any FrequencyResponse works, including ones parsed from
measured two-port files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import signal

from .errors import (
    InsufficientPeaksError,
    InsufficientSpanError,
    InvalidSpecError,
)
from .response import FrequencyResponse

# Relative prominence below which a bump is ripple, not a resonance.
PEAK_PROMINENCE = 0.01


@dataclass(frozen=True)
class PeakPair:
    """Two resonance peak frequencies; the constructor orders them."""

    f_p1: float
    f_p2: float

    def __post_init__(self):
        if not (self.f_p1 > 0 and self.f_p2 > 0):
            raise InvalidSpecError("peak frequencies must be positive")
        if self.f_p1 > self.f_p2:
            lo, hi = self.f_p2, self.f_p1
            object.__setattr__(self, "f_p1", lo)
            object.__setattr__(self, "f_p2", hi)


def extract_k(peaks: PeakPair) -> float:
    """Coupling coefficient from resonance splitting.

    k = (f_p2^2 - f_p1^2) / (f_p2^2 + f_p1^2), positive branch. The sign
    distinguishing electric from magnetic coupling is not recoverable from
    magnitude data. Scale-invariant and zero for coincident peaks.
    """
    a = peaks.f_p1 * peaks.f_p1
    b = peaks.f_p2 * peaks.f_p2
    return (b - a) / (b + a)


def _parabolic_vertex(x, y, i):
    """Vertex of the parabola through three samples around index i."""
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0.0:
        return x[i], y[i]
    d = 0.5 * (y[i - 1] - y[i + 1]) / denom
    step = 0.5 * (x[i + 1] - x[i - 1])
    return x[i] + d * step, y[i] - 0.25 * (y[i - 1] - y[i + 1]) * d


def find_peaks(resp: FrequencyResponse, expected: int | None = None) -> np.ndarray:
    """Resonance peak frequencies from |S21|, ascending.

    Strict local maxima whose prominence exceeds PEAK_PROMINENCE of the
    global maximum, refined by three-point parabolic interpolation. When
    `expected` is given and fewer peaks are found, raises
    InsufficientPeaksError carrying the count found.
    """
    if len(resp) < 3:
        raise InvalidSpecError("peak finding needs at least 3 samples")
    mag = np.abs(resp.s21)
    top = mag.max()
    if top > 0.0:
        idx, _ = signal.find_peaks(mag, prominence=PEAK_PROMINENCE * top)
    else:
        idx = np.array([], dtype=int)
    freqs = np.array([_parabolic_vertex(resp.grid, mag, i)[0] for i in idx])
    if expected is not None and freqs.size < expected:
        raise InsufficientPeaksError(found=int(freqs.size), needed=int(expected))
    return freqs


def extract_qe(resp: FrequencyResponse, f0: float) -> float:
    """External quality factor from a singly loaded resonator response.

    Qe = f0 / (f_hi - f_lo) where f_lo and f_hi are the frequencies at
    which |S21| falls 3 dB below its (parabola-refined) peak. With the far
    port much more weakly coupled than the input, the loaded Q this
    measures approximates the input external Q.
    """
    if len(resp) < 3:
        raise InvalidSpecError("Q extraction needs at least 3 samples")
    if not f0 > 0:
        raise InvalidSpecError("f0 must be positive")
    mag = np.abs(resp.s21)
    ipk = int(np.argmax(mag))
    if ipk in (0, mag.size - 1):
        raise InsufficientSpanError("resonance peak sits at the grid boundary")
    _, peak = _parabolic_vertex(resp.grid, mag, ipk)
    half = peak / math.sqrt(2.0)

    left = np.nonzero(mag[:ipk] < half)[0]
    right = np.nonzero(mag[ipk:] < half)[0]
    if left.size == 0 or right.size == 0:
        raise InsufficientSpanError("3 dB points fall outside the sampled span")
    lo = left[-1]
    hi = ipk + right[0]
    f = resp.grid
    f_lo = f[lo] + (half - mag[lo]) * (f[lo + 1] - f[lo]) / (mag[lo + 1] - mag[lo])
    f_hi = f[hi - 1] + (half - mag[hi - 1]) * (f[hi] - f[hi - 1]) / (mag[hi] - mag[hi - 1])
    return f0 / (f_hi - f_lo)
