"""Normalized coupling-matrix model of a coupled-resonator filter.

The matrix entries live in the low-pass prototype domain: off-diagonal
m_ij = k_ij / FBW and normalized external quality factors qe = Qe * FBW.
This normalization makes designs that share order and ripple identical
regardless of their center frequency and bandwidth.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError
from .prototype import CouplingTargets


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Symmetric n x n coupling matrix plus external loading.

    The diagonal is zero for synchronously tuned filters; nonzero diagonal
    entries represent resonator frequency offsets and are legal (the
    optimizer may introduce them).
    """

    m: np.ndarray
    qe1: float
    qen: float

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise InvalidSpecError(f"coupling matrix must be square, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise InvalidSpecError("coupling matrix must be symmetric")
        if not (self.qe1 > 0 and self.qen > 0):
            raise InvalidSpecError("external quality factors must be positive")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return self.m.shape[0]


def from_couplings(targets: CouplingTargets, fbw: float) -> CouplingMatrix:
    """Build the normalized ladder matrix from bandpass-domain targets.

    Superdiagonal entries are k_i / fbw, the diagonal is zero (synchronous
    tuning), and the external loading is qe = Qe * fbw.
    """
    if not 0 < fbw < 1:
        raise InvalidSpecError(f"fractional bandwidth must lie in (0, 1), got {fbw}")
    n = len(targets.k) + 1
    m = np.zeros((n, n))
    for i, ki in enumerate(targets.k):
        m[i, i + 1] = m[i + 1, i] = ki / fbw
    return CouplingMatrix(m=m, qe1=targets.qe_in * fbw, qen=targets.qe_out * fbw)


def system_matrix(cm: CouplingMatrix, s: complex) -> np.ndarray:
    """Frequency-dependent filter matrix at complex prototype frequency s.

    A(s) = Q + s I - j m, where Q is zero except for 1/qe1 and 1/qen in
    the first and last diagonal entries. A is complex-symmetric (not
    Hermitian) and affine in s.
    """
    a = (-1j) * cm.m.astype(complex)
    a[np.diag_indices(cm.n)] += s
    a[0, 0] += 1.0 / cm.qe1
    a[-1, -1] += 1.0 / cm.qen
    return a


def pole_matrix(cm: CouplingMatrix) -> np.ndarray:
    """Constant matrix M = j m - Q whose eigenvalues are the response poles.

    Satisfies system_matrix(cm, s) == s I - pole_matrix(cm) for every s;
    for a passive loaded network all eigenvalues lie in the left half
    plane.
    """
    mm = 1j * cm.m.astype(complex)
    mm[0, 0] -= 1.0 / cm.qe1
    mm[-1, -1] -= 1.0 / cm.qen
    return mm
