"""S-parameter evaluation and response metrics for coupled-resonator filters.

Two independent routes compute the same scattering parameters: a dense LU
solve of the filter matrix, and an explicit determinant/cofactor route.
The second is slower and exists to cross-validate the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coupling import CouplingMatrix, system_matrix
from .errors import InvalidSpecError, NoPassbandError, SingularFrequencyError
from .prototype import FilterSpec

# |S| may exceed unity only by numerical noise on a lossless model.
PASSIVITY_TOL = 1e-9

# Local minima of |S11| shallower than this are ripple artifacts of a
# coarse grid, not reflection zeros.
ZERO_FLOOR_DB = -40.0

_COND_LIMIT = 1e12
_MAG_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class FrequencyResponse:
    """Sampled two-port response over a strictly increasing grid.

    The grid is in Hz for bandpass data (domain "bandpass") or in
    dimensionless prototype frequency (domain "prototype").
    """

    grid: np.ndarray
    s11: np.ndarray
    s21: np.ndarray
    spec: FilterSpec | None = None
    domain: str = "bandpass"

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        s11 = np.array(self.s11, dtype=complex)
        s21 = np.array(self.s21, dtype=complex)
        if grid.ndim != 1 or grid.size == 0:
            raise InvalidSpecError("grid must be a non-empty 1-d sequence")
        if s11.shape != grid.shape or s21.shape != grid.shape:
            raise InvalidSpecError("grid, s11 and s21 must have equal length")
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise InvalidSpecError("grid must be strictly increasing")
        if not (np.all(np.isfinite(grid)) and np.all(np.isfinite(s11)) and np.all(np.isfinite(s21))):
            raise InvalidSpecError("response data must be finite")
        worst = max(np.abs(s11).max(), np.abs(s21).max())
        if worst > 1.0 + PASSIVITY_TOL:
            raise InvalidSpecError(f"non-passive data: max |S| = {worst}")
        if self.domain not in ("bandpass", "prototype"):
            raise InvalidSpecError(f"unknown domain tag {self.domain!r}")
        for name, arr in (("grid", grid), ("s11", s11), ("s21", s21)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self) -> int:
        return self.grid.size


@dataclass(frozen=True)
class ResponseMetrics:
    """Passband measurements taken at a given reflection level."""

    f_center: float
    bandwidth_at_level: float
    max_inband_s11_db: float
    reflection_zero_count: int

    def __post_init__(self):
        if self.bandwidth_at_level < 0:
            raise InvalidSpecError("bandwidth cannot be negative")


def s_parameters(cm: CouplingMatrix, s: complex) -> tuple[complex, complex]:
    """Reflection and transmission at one complex prototype frequency.

    S11 = 1 - (2 / qe1) inv(A)[1,1] and
    S21 = 2 / sqrt(qe1 qen) * inv(A)[n,1],
    both taken from one LU solve against the first unit vector. The sign
    convention makes a fully uncoupled network reflect with S11 = -1.
    """
    a = system_matrix(cm, s)
    try:
        if np.linalg.cond(a) > _COND_LIMIT:
            raise SingularFrequencyError(f"filter matrix ill-conditioned at s = {s}")
        rhs = np.zeros(cm.n, dtype=complex)
        rhs[0] = 1.0
        x = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as err:
        raise SingularFrequencyError(f"filter matrix singular at s = {s}") from err
    s11 = 1.0 - (2.0 / cm.qe1) * x[0]
    s21 = (2.0 / math.sqrt(cm.qe1 * cm.qen)) * x[-1]
    return s11, s21


def s_parameters_cramer(cm: CouplingMatrix, s: complex) -> tuple[complex, complex]:
    """Same contract as s_parameters, via the adjugate of the filter matrix.

    inv(A) = adj(A) / det(A); the two adjugate entries needed are the
    cofactors obtained by deleting the first row and the first (or last)
    column and taking determinants. Cross-validation route only.
    """
    a = system_matrix(cm, s)
    det = np.linalg.det(a)
    # det(A) scales like ||A||^n, so the singularity floor must too.
    if abs(det) < 1e-12 * (1.0 + np.linalg.norm(a)) ** cm.n:
        raise SingularFrequencyError(f"determinant vanished at s = {s}")
    cof11 = np.linalg.det(a[1:, 1:])
    cof1n = (-1) ** (1 + cm.n) * np.linalg.det(a[1:, :-1])
    s11 = 1.0 - (2.0 / cm.qe1) * cof11 / det
    s21 = (2.0 / math.sqrt(cm.qe1 * cm.qen)) * cof1n / det
    if not (np.isfinite(s11) and np.isfinite(s21)):
        raise SingularFrequencyError(f"cofactor route overflowed at s = {s}")
    return s11, s21


def s_matrix(cm: CouplingMatrix, s: complex) -> np.ndarray:
    """Full 2x2 scattering matrix [[S11, S12], [S21, S22]].

    Solves against both port unit vectors; S12 equals S21 to rounding
    because the filter matrix is complex-symmetric (reciprocity).
    """
    a = system_matrix(cm, s)
    rhs = np.zeros((cm.n, 2), dtype=complex)
    rhs[0, 0] = 1.0
    rhs[-1, 1] = 1.0
    try:
        x = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as err:
        raise SingularFrequencyError(f"filter matrix singular at s = {s}") from err
    c = 2.0 / math.sqrt(cm.qe1 * cm.qen)
    return np.array(
        [
            [1.0 - (2.0 / cm.qe1) * x[0, 0], c * x[0, 1]],
            [c * x[-1, 0], 1.0 - (2.0 / cm.qen) * x[-1, 1]],
        ]
    )


def normalized_frequency(f_hz, spec: FilterSpec):
    """Bandpass-to-prototype mapping (f/f0 - f0/f) / FBW.

    Strictly increasing for f > 0, zero at f0, and +-1 at the band edges.
    """
    f = np.asarray(f_hz, dtype=float)
    out = (f / spec.f0_hz - spec.f0_hz / f) / spec.fbw
    return float(out) if np.isscalar(f_hz) else out


def band_edge_frequencies(spec: FilterSpec) -> tuple[float, float]:
    """Frequencies that map exactly to prototype -1 and +1.

    Roots of the mapping quadratic: f = f0 (sqrt(1 + FBW^2/4) -+ FBW/2).
    Their difference is exactly the design bandwidth.
    """
    root = math.sqrt(1.0 + spec.fbw**2 / 4.0)
    return (
        spec.f0_hz * (root - spec.fbw / 2.0),
        spec.f0_hz * (root + spec.fbw / 2.0),
    )


def _sweep_arrays(cm, spec, f_start_hz, f_stop_hz, points):
    if int(points) != points or points < 2:
        raise InvalidSpecError(f"points must be an integer >= 2, got {points}")
    if not 0 < f_start_hz < f_stop_hz:
        raise InvalidSpecError("need 0 < f_start < f_stop")
    f = np.linspace(f_start_hz, f_stop_hz, int(points))
    omega = normalized_frequency(f, spec)

    base = (-1j) * cm.m.astype(complex)
    base[0, 0] += 1.0 / cm.qe1
    base[-1, -1] += 1.0 / cm.qen
    a = base[None, :, :] + (1j * omega)[:, None, None] * np.eye(cm.n)

    rhs = np.zeros((cm.n, 2), dtype=complex)
    rhs[0, 0] = 1.0
    rhs[-1, 1] = 1.0
    try:
        x = np.linalg.solve(a, np.broadcast_to(rhs, (f.size, cm.n, 2)))
    except np.linalg.LinAlgError as err:
        raise SingularFrequencyError("filter matrix singular on the sweep grid") from err
    if not np.all(np.isfinite(x)):
        raise SingularFrequencyError("filter matrix singular on the sweep grid")

    c = 2.0 / math.sqrt(cm.qe1 * cm.qen)
    s11 = 1.0 - (2.0 / cm.qe1) * x[:, 0, 0]
    s21 = c * x[:, -1, 0]
    s12 = c * x[:, 0, 1]
    s22 = 1.0 - (2.0 / cm.qen) * x[:, -1, 1]
    return f, s11, s21, s12, s22


def sweep(
    cm: CouplingMatrix,
    spec: FilterSpec,
    f_start_hz: float,
    f_stop_hz: float,
    points: int,
) -> FrequencyResponse:
    """Evaluate S11/S21 on a linear frequency grid.

    Each grid frequency maps to the prototype domain through
    normalized_frequency and the response is evaluated at s = j omega.
    Grid points are independent, so the output is identical however the
    evaluation is scheduled.
    """
    f, s11, s21, _, _ = _sweep_arrays(cm, spec, f_start_hz, f_stop_hz, points)
    return FrequencyResponse(grid=f, s11=s11, s21=s21, spec=spec)


def sweep_two_port(
    cm: CouplingMatrix,
    spec: FilterSpec,
    f_start_hz: float,
    f_stop_hz: float,
    points: int,
) -> tuple[FrequencyResponse, np.ndarray, np.ndarray]:
    """Like sweep, but also returns the far-port entries S12 and S22.

    Returns (response, s12, s22) so a full two-port file can be written.
    """
    f, s11, s21, s12, s22 = _sweep_arrays(cm, spec, f_start_hz, f_stop_hz, points)
    return FrequencyResponse(grid=f, s11=s11, s21=s21, spec=spec), s12, s22


def _interp_crossing(x0, y0, x1, y1, level):
    if y1 == y0:
        return x1
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def analyze_response(
    resp: FrequencyResponse,
    level_db: float,
    zero_floor_db: float = ZERO_FLOOR_DB,
) -> ResponseMetrics:
    """Measure the passband where |S11| stays at or below level_db.

    The band is the longest contiguous run of samples meeting the level;
    its edges are refined by interpolating the level crossings. Reflection
    zeros are counted as strict local minima of |S11| inside the band that
    dip below zero_floor_db.
    """
    if not level_db < 0:
        raise InvalidSpecError(f"level_db must be negative, got {level_db}")
    s11_db = 20.0 * np.log10(np.maximum(np.abs(resp.s11), _MAG_FLOOR))
    below = s11_db <= level_db
    if not below.any():
        raise NoPassbandError(f"no samples with |S11| <= {level_db} dB")

    # longest contiguous run of in-band samples
    runs = []
    start = None
    for i, flag in enumerate(below):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, below.size - 1))
    a, b = max(runs, key=lambda r: r[1] - r[0])

    f = resp.grid
    f_lo = f[a] if a == 0 else _interp_crossing(f[a - 1], s11_db[a - 1], f[a], s11_db[a], level_db)
    f_hi = f[b] if b == f.size - 1 else _interp_crossing(f[b], s11_db[b], f[b + 1], s11_db[b + 1], level_db)

    zeros = 0
    for i in range(max(a, 1), min(b, f.size - 2) + 1):
        if s11_db[i] < s11_db[i - 1] and s11_db[i] < s11_db[i + 1] and s11_db[i] <= zero_floor_db:
            zeros += 1

    return ResponseMetrics(
        f_center=0.5 * (f_lo + f_hi),
        bandwidth_at_level=f_hi - f_lo,
        max_inband_s11_db=float(s11_db[a : b + 1].max()),
        reflection_zero_count=zeros,
    )
