"""Characteristic polynomials of the filtering function via eigenvalue methods.

The scattering response factors into three polynomials: S11 = F/E and
S21 = P/(eps E), where the roots of E are the common poles, the roots of
F the reflection zeros and the roots of P the transmission zeros. No
polynomial arithmetic is needed: each root set is the spectrum of a small
matrix derived from the pole matrix, so standard eigen-solvers do all the
root finding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .coupling import CouplingMatrix, pole_matrix
from .errors import InvalidSpecError, NumericalError, SingularFrequencyError

_POLE_FLOOR = 1e-250


@dataclass(frozen=True)
class PolynomialCoefficients:
    """Monic polynomial, coefficients stored in ascending degree order."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise InvalidSpecError("polynomial needs at least one coefficient")
        if self.coeffs[-1] != 1.0:
            raise InvalidSpecError("leading coefficient must be exactly 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s: complex) -> complex:
        out = 0.0 + 0.0j
        for c in reversed(self.coeffs):
            out = out * s + c
        return out


@dataclass(frozen=True)
class CharacteristicPolynomials:
    """Root form of the response polynomials plus the ripple constant.

    e_roots are the poles (left half plane for a passive network), f_roots
    the reflection zeros (on the imaginary axis for a lossless matched
    filter) and p_roots the finite transmission zeros (empty for ladder
    topologies, where every zero sits at infinity). epsilon scales S21 so
    the band edge sits at the equiripple level.
    """

    e_roots: tuple[complex, ...]
    f_roots: tuple[complex, ...]
    p_roots: tuple[complex, ...]
    epsilon: float

    def __post_init__(self):
        if not self.epsilon > 0:
            raise InvalidSpecError("ripple constant must be positive")


def char_poly_from_eigenvalues(eigenvalues) -> PolynomialCoefficients:
    """Monic characteristic polynomial from its roots.

    Expands prod(s - lambda_i) one root at a time, which accumulates the
    alternating elementary-symmetric sums: the coefficient of s^(N-k) is
    (-1)^k e_k(lambda), down to the constant term (-1)^N prod(lambda_i).
    """
    lam = np.atleast_1d(np.asarray(eigenvalues, dtype=complex))
    if lam.size == 0:
        raise InvalidSpecError("need at least one eigenvalue")
    coeffs = np.array([1.0 + 0.0j])
    for li in lam:
        coeffs = np.convolve(coeffs, np.array([1.0, -li]))
    return PolynomialCoefficients(coeffs=tuple(coeffs[::-1]))


def _prod_over_roots(roots, s: complex) -> complex:
    out = 1.0 + 0.0j
    for r in roots:
        out *= s - r
    return out


def _ripple_constant(e_roots, f_roots, p_roots) -> float:
    # Lossless network: |S21| = 1 wherever S11 vanishes, so eps |E| = |P|
    # at every reflection zero projected onto the imaginary axis.
    vals = []
    for r in f_roots:
        s0 = 1j * r.imag
        vals.append(abs(_prod_over_roots(p_roots, s0)) / abs(_prod_over_roots(e_roots, s0)))
    return float(np.median(vals))


def extract_polynomials(cm: CouplingMatrix) -> CharacteristicPolynomials:
    """Recover E, F, P roots and the ripple constant from a coupling matrix.

    The poles are the eigenvalues of the pole matrix M. Subtracting the
    reflection term 2/qe1 * cof11(A) from det(A) only changes the
    first diagonal entry of M, flipping the sign of its loading
    contribution, so the reflection zeros are the eigenvalues of that
    modified matrix. Transmission zeros solve the generalized problem
    det(s I' - M') = 0 with the first row and last column deleted; the
    deleted-identity pencil is singular, so infinite generalized
    eigenvalues appear and are discarded as zeros at infinity.
    """
    if cm.n < 2:
        raise InvalidSpecError("polynomial extraction needs order >= 2")
    mm = pole_matrix(cm)
    mf = mm.copy()
    mf[0, 0] += 2.0 / cm.qe1
    try:
        e_roots = np.linalg.eigvals(mm)
        f_roots = np.linalg.eigvals(mf)
        gen = scipy.linalg.eig(mm[1:, :-1], np.eye(cm.n)[1:, :-1], right=False)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as err:
        raise NumericalError(
            f"eigen solve failed on an order-{cm.n} matrix "
            f"(cond ~ {np.linalg.cond(mm):.3e})"
        ) from err
    p_roots = gen[np.isfinite(gen)]
    return CharacteristicPolynomials(
        e_roots=tuple(e_roots),
        f_roots=tuple(f_roots),
        p_roots=tuple(p_roots),
        epsilon=_ripple_constant(e_roots, f_roots, p_roots),
    )


def response_from_polynomials(
    cp: CharacteristicPolynomials, s: complex
) -> tuple[float, float]:
    """Evaluate (|S11|, |S21|) from the root products.

    Magnitudes only: the relative phase between this route and the
    matrix-inverse route is not pinned down, but the magnitudes must
    agree.
    """
    e = _prod_over_roots(cp.e_roots, s)
    if abs(e) < _POLE_FLOOR:
        raise SingularFrequencyError(f"s = {s} is a pole of the response")
    f = _prod_over_roots(cp.f_roots, s)
    p = _prod_over_roots(cp.p_roots, s)
    return abs(f) / abs(e), abs(p) / (cp.epsilon * abs(e))
