"""
Complex 2x2 Jones algebra.

Jones vectors are complex arrays of shape ``(2,)`` in the linear x-y basis and
transfer / differential matrices are complex arrays of shape ``(2, 2)``.
Vectors are never normalized implicitly; phase values downstream depend on
the magnitude of the vectors handed in.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DegeneracyError, InvalidInputError

# S(pi/2), the quarter-turn rotation; also the circular-birefringence generator
QUARTER_TURN = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

TRACELESS_TOL = 1e-13
_SINHC_SERIES_LIMIT = 1e-4


def as_vector(eps) -> np.ndarray:
    """Coerce to a finite complex Jones vector of shape (2,)."""
    v = np.asarray(eps, dtype=complex)
    if v.shape != (2,):
        raise InvalidInputError(f"Jones vector must have shape (2,), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("Jones vector has non-finite components")
    return v


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite complex 2x2 matrix."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise InvalidInputError(f"matrix must have shape (2, 2), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix has non-finite entries")
    return a


def _finite(x, name: str) -> float:
    x = float(x)
    if not np.isfinite(x):
        raise InvalidInputError(f"{name} must be finite, got {x}")
    return x


def intensity(eps) -> float:
    """|e1|^2 + |e2|^2."""
    v = as_vector(eps)
    return float(np.real(np.vdot(v, v)))


def normalized(eps) -> np.ndarray:
    v = as_vector(eps)
    n = np.sqrt(intensity(v))
    if n == 0.0:
        raise InvalidInputError("cannot normalize the zero vector")
    return v / n


def hermitian_inner(a, b) -> complex:
    """conj(a1) b1 + conj(a2) b2."""
    return complex(np.vdot(as_vector(a), as_vector(b)))


def to_circular(eps) -> np.ndarray:
    """Linear (d_x, d_y) to circular spinor components ((d_x + i d_y)/sqrt2, (d_x - i d_y)/sqrt2)."""
    dx, dy = as_vector(eps)
    return np.array([dx + 1j * dy, dx - 1j * dy]) / np.sqrt(2.0)


def from_circular(psi) -> np.ndarray:
    """Inverse of :func:`to_circular`."""
    p, m = as_vector(psi)
    return np.array([p + m, -1j * (p - m)]) / np.sqrt(2.0)


def rotation_matrix(angle: float) -> np.ndarray:
    """Rotation S(a) = [[cos a, -sin a], [sin a, cos a]]."""
    a = _finite(angle, "angle")
    c, s = np.cos(a), np.sin(a)
    return np.array([[c, -s], [s, c]], dtype=complex)


def is_lossless(N, tol: float = 1e-12) -> bool:
    """True when N is anti-Hermitian, i.e. exp(Nz) is unitary."""
    a = as_matrix(N)
    scale = max(1.0, float(np.max(np.abs(a))))
    return bool(np.max(np.abs(a + a.conj().T)) <= tol * scale)


def mat_exp(N, z: float) -> np.ndarray:
    """
    Matrix exponential exp(N z) of a 2x2 generator.

    Traceless generators use the closed form
    ``cosh(l z) I + (sinh(l z) / l) N`` with ``l**2 = -det(N)``; for lossless
    ones ``l = i delta`` and this is ``cos(delta z) I + sin(delta z)/delta N``.
    Anything else is handed to :func:`scipy.linalg.expm`.

    Parameters
    ----------
    N : array_like, shape (2, 2)
        Differential matrix, per unit thickness.
    z : float
        Thickness.

    Returns
    -------
    numpy.ndarray, shape (2, 2)
    """
    a = as_matrix(N)
    z = _finite(z, "z")
    if abs(a[0, 0] + a[1, 1]) > TRACELESS_TOL:
        return scipy.linalg.expm(a * z)

    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    if abs(det.imag) <= TRACELESS_TOL * max(1.0, abs(det)) and det.real >= 0.0:
        # N^2 = -delta^2 I
        delta = np.sqrt(det.real)
        x = delta * z
        c = np.cos(x)
        sinc_z = z * (1.0 - x * x / 6.0 + x**4 / 120.0) if abs(x) < _SINHC_SERIES_LIMIT else np.sin(x) / delta
    else:
        lam = np.sqrt(-det + 0j)
        x = lam * z
        c = np.cosh(x)
        sinc_z = z * (1.0 + x * x / 6.0 + x**4 / 120.0) if abs(x) < _SINHC_SERIES_LIMIT else np.sinh(x) / lam
    return c * IDENTITY + sinc_z * a


def eigenpairs(N, tol: float = 1e-12) -> list[tuple[complex, np.ndarray]]:
    """
    Eigenvalues and eigenvectors of a 2x2 matrix.

    Pairs come back sorted by descending imaginary part of the eigenvalue.
    Each eigenvector is scaled so that its second component is exactly 1,
    or its first component when the second vanishes.

    Raises
    ------
    DegeneracyError
        If the two eigenvalues coincide (this includes every multiple of
        the identity and every defective matrix).
    """
    a = as_matrix(N)
    half_tr = 0.5 * (a[0, 0] + a[1, 1])
    det = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    root = np.sqrt(half_tr * half_tr - det + 0j)
    scale = max(1.0, float(np.max(np.abs(a))))
    if abs(root) <= tol * scale:
        raise DegeneracyError(half_tr)

    pairs = []
    for lam in (half_tr + root, half_tr - root):
        # null vector of (N - lam I), taken from whichever row is better conditioned
        from_row1 = np.array([a[0, 1], lam - a[0, 0]])
        from_row2 = np.array([lam - a[1, 1], a[1, 0]])
        v = from_row1 if np.linalg.norm(from_row1) >= np.linalg.norm(from_row2) else from_row2
        if abs(v[1]) > tol * np.linalg.norm(v):
            v = v / v[1]
            v[1] = 1.0
        else:
            v = v / v[0]
            v[0] = 1.0
            v[1] = 0.0
        pairs.append((complex(lam), v))
    pairs.sort(key=lambda p: -p[0].imag)
    return pairs
