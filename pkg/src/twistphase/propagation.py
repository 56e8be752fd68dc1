"""Propagation of Jones vectors through constant and depth-varying generators."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInputError, UnsupportedMediumError
from .jones import QUARTER_TURN, _finite, as_matrix, as_vector, is_lossless, mat_exp, rotation_matrix
from .media import MediumSpec, TwistMode

DEFAULT_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class StokesState:
    """Intensity ``s0`` and unit Poincare vector ``p = (s1, s2, s3) / s0``."""

    s0: float
    p: np.ndarray

    @property
    def s(self) -> np.ndarray:
        """Unnormalized (s1, s2, s3)."""
        return self.s0 * self.p

    @property
    def azimuth(self) -> float:
        """Longitude atan2(s2, s1) on the sphere (twice the ellipse orientation)."""
        return math.atan2(self.p[1], self.p[0])


@dataclass(frozen=True)
class TraceSample:
    z: float
    state: np.ndarray
    stokes: StokesState


@dataclass(frozen=True)
class PropagationTrace:
    samples: list[TraceSample]

    @property
    def z(self) -> np.ndarray:
        return np.array([s.z for s in self.samples])

    @property
    def states(self) -> np.ndarray:
        return np.array([s.state for s in self.samples])

    @property
    def final(self) -> np.ndarray:
        return self.samples[-1].state

    def __len__(self):
        return len(self.samples)


def to_stokes(eps) -> StokesState:
    """
    Map a Jones vector to the Poincare sphere.

    ``s1 = |e1|^2 - |e2|^2``, ``s2 = 2 Re(conj(e1) e2)``, ``s3 = 2 Im(conj(e1) e2)``,
    so (1, i) sits at the north pole p = (0, 0, 1).
    """
    e1, e2 = as_vector(eps)
    s0 = abs(e1) ** 2 + abs(e2) ** 2
    if s0 == 0.0:
        raise InvalidInputError("zero vector has no Stokes representation")
    c = np.conj(e1) * e2
    s = np.array([abs(e1) ** 2 - abs(e2) ** 2, 2.0 * c.real, 2.0 * c.imag])
    p = s / s0
    # absorb rounding so that |p| = 1 holds to machine precision
    p = p / np.linalg.norm(p)
    return StokesState(s0=float(s0), p=p)


def propagate_constant(N, eps0, z: float) -> np.ndarray:
    """exp(N z) eps0 for a depth-independent generator."""
    z = _finite(z, "z")
    if z < 0.0:
        raise InvalidInputError(f"z must be non-negative, got {z}")
    return mat_exp(N, z) @ as_vector(eps0)


def propagate_varying(
    N_of_z: Callable[[float], np.ndarray],
    eps0,
    z: float,
    step: float,
) -> PropagationTrace:
    """
    Integrate d(eps)/dz = N(z) eps with classical fixed-step RK4.

    The interval [0, z] is split into ``ceil(z / step)`` equal steps (the step
    is shrunk slightly when ``z`` is not a multiple of ``step``). Every step
    contributes one sample, plus the initial one at z = 0.
    """
    z = _finite(z, "z")
    step = _finite(step, "step")
    if step <= 0.0:
        raise InvalidInputError(f"step must be positive, got {step}")
    if z < 0.0:
        raise InvalidInputError(f"z must be non-negative, got {z}")
    if step > z:
        raise InvalidInputError(f"step {step} exceeds propagation length {z}")

    n = max(1, math.ceil(z / step - 1e-9))
    h = z / n
    y = as_vector(eps0).copy()
    samples = [TraceSample(0.0, y.copy(), to_stokes(y))]
    for j in range(n):
        zj = j * h
        k1 = N_of_z(zj) @ y
        k2 = N_of_z(zj + h / 2) @ (y + h / 2 * k1)
        k3 = N_of_z(zj + h / 2) @ (y + h / 2 * k2)
        k4 = N_of_z(zj + h) @ (y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        zn = z if j == n - 1 else (j + 1) * h
        samples.append(TraceSample(zn, y.copy(), to_stokes(y)))
    return PropagationTrace(samples)


def rotating_frame_transfer(N0, k: float, z: float) -> np.ndarray:
    """
    Exact transfer matrix S(kz) exp((N0 - k S(pi/2)) z) of a medium whose
    local generator is S(kz) N0 S(-kz).
    """
    k = _finite(k, "k")
    z = _finite(z, "z")
    if z < 0.0:
        raise InvalidInputError(f"z must be non-negative, got {z}")
    return rotation_matrix(k * z) @ mat_exp(as_matrix(N0) - k * QUARTER_TURN, z)


def medium_transfer(medium: MediumSpec, z: float) -> np.ndarray:
    """Transfer matrix of ``medium`` over thickness ``z`` under its twist mode."""
    N0 = medium.generator()
    if medium.twist_mode is TwistMode.THICKNESS_DEPENDENT:
        return rotating_frame_transfer(N0, medium.k, z)
    return mat_exp(medium.local_generator(0.0), z)


def precession_axis(N) -> tuple[np.ndarray, float]:
    """
    Poincare-sphere rotation vector of a lossless generator.

    Writing ``N = -i (h_x X + h_y Y + h_z Z) + (trace part)`` with Pauli
    matrices X, Y, Z, the Stokes vector obeys dp/dz = Omega x p with
    ``Omega = 2 (h_z, h_x, h_y)`` under the :func:`to_stokes` convention.
    The isotropic trace part only shifts the global phase and is ignored.

    Returns
    -------
    axis : numpy.ndarray, shape (3,)
        Unit rotation axis; (0, 0, 1) when the rate is zero.
    rate : float
        |Omega|, radians per unit thickness.
    """
    a = as_matrix(N)
    if not is_lossless(a):
        raise UnsupportedMediumError("precession is defined only for lossless (anti-Hermitian) generators")
    H = 1j * a
    hx, hy = H[1, 0].real, H[1, 0].imag
    hz = 0.5 * (H[0, 0] - H[1, 1]).real
    omega = 2.0 * np.array([hz, hx, hy])
    rate = float(np.linalg.norm(omega))
    if rate == 0.0:
        return DEFAULT_AXIS.copy(), 0.0
    return omega / rate, rate
