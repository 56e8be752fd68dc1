"""
Birefringent media: differential generators, twist laws and the
polarization-matrix construction of the generator.

Two parameterizations of a homogeneous birefringent medium are supported:

* ``(tau, rho)`` -- circular and linear birefringence, composed as
  ``tau * [[0, -1], [1, 0]] + rho * [[0, -i], [i, 0]]``;
* ``(eta, phi)`` -- strength and azimuth, ``eta * [[0, -e^{i phi}], [e^{-i phi}, 0]]``.

The two agree entry-wise only when ``sin(phi) == 0``: the ``(tau, rho)`` linear
term as written is Hermitian, so that generator is lossless only for
``rho == 0``, while every ``(eta, phi)`` generator is anti-Hermitian.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SingularBirefringenceError
from .jones import QUARTER_TURN, _finite, rotation_matrix

CIRCULAR_GENERATOR = QUARTER_TURN.copy()
LINEAR_GENERATOR = np.array([[0.0, -1j], [1j, 0.0]])

TWO_PI = 2.0 * math.pi


class TwistMode(str, enum.Enum):
    NONE = "none"
    THICKNESS_INDEPENDENT = "thickness_independent"
    THICKNESS_DEPENDENT = "thickness_dependent"


def birefringence_generator(tau: float, rho: float) -> np.ndarray:
    """[[0, -tau - i rho], [tau + i rho, 0]]."""
    w = complex(_finite(tau, "tau"), _finite(rho, "rho"))
    return np.array([[0.0, -w], [w, 0.0]], dtype=complex)


def eta_phi_generator(eta: float, phi: float, extended: bool = False) -> np.ndarray:
    """
    Generator ``eta * [[0, -e^{i phi}], [e^{-i phi}, 0]]``.

    Its eigenvalues are ``+-i eta`` with eigenvectors ``(+-i e^{i phi}, 1)``.
    Negative ``eta`` is rejected unless ``extended`` is set.
    """
    eta = _finite(eta, "eta")
    phi = _finite(phi, "phi")
    if eta < 0.0 and not extended:
        raise InvalidInputError(f"eta must be non-negative, got {eta} (pass extended=True for signed eta)")
    e = np.exp(1j * phi)
    return eta * np.array([[0.0, -e], [np.conj(e), 0.0]], dtype=complex)


def eigen_ray(phi: float) -> np.ndarray:
    """Unnormalized eigenvector (i e^{i phi}, 1) of the (eta, phi) generator for +i eta."""
    return np.array([1j * np.exp(1j * _finite(phi, "phi")), 1.0], dtype=complex)


def twist_independent(N0, k: float) -> np.ndarray:
    """N0 - k S(pi/2); the twist angle does not grow with thickness."""
    return np.asarray(N0, dtype=complex) - _finite(k, "k") * QUARTER_TURN


def twist_dependent(N0, k: float, z: float) -> np.ndarray:
    """Local generator S(kz) N0 S(-kz) of a medium twisted by angle k*z at depth z."""
    angle = _finite(k, "k") * _finite(z, "z")
    return rotation_matrix(angle) @ np.asarray(N0, dtype=complex) @ rotation_matrix(-angle)


def twisted_ray(theta: float, phi: float) -> np.ndarray:
    """Eigen ray (i e^{i phi}, 1) turned by [[cos t, sin t], [-sin t, cos t]]; norm^2 stays 2."""
    return rotation_matrix(-_finite(theta, "theta")) @ eigen_ray(phi)


def polarization_matrix(theta: float, phi: float) -> np.ndarray:
    """
    ``0.5 * [[cos t, sin t e^{-i phi}], [sin t e^{i phi}, -cos t]]``.

    Hermitian, traceless, eigenvalues +-1/2. Note that its +1/2 eigenvector is
    ``(cos(t/2), sin(t/2) e^{i phi})``, which is :meth:`SpinorState.realize`
    with ``phi`` negated.
    """
    theta = _finite(theta, "theta")
    phi = _finite(phi, "phi")
    if not 0.0 <= theta <= math.pi:
        raise InvalidInputError(f"theta must lie in [0, pi], got {theta}")
    c, s = math.cos(theta), math.sin(theta)
    e = np.exp(1j * phi)
    return 0.5 * np.array([[c, s * np.conj(e)], [s * e, -c]], dtype=complex)


def _polarization_matrix_dtheta(theta: float, phi: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    e = np.exp(1j * phi)
    return 0.5 * np.array([[-s, c * np.conj(e)], [c * e, s]], dtype=complex)


# birefringence values asserted in the source text at these incidence angles
CLAIMED_ETA = {math.pi / 2: 1.0, math.pi / 3: 2.0}


@dataclass(frozen=True)
class DerivedGenerator:
    """Generator obtained from the polarization matrix, with its comparison
    against the printed ``(eta, phi)`` form at ``eta = 1/sin(theta)``."""

    theta: float
    phi: float
    generator: np.ndarray
    printed: np.ndarray
    eta: float
    claimed_eta: float | None
    max_abs_difference: float
    matches_printed: bool
    # derived == -printed with phi -> -phi
    matches_negated_conjugate: bool


def derive_generator_from_M(theta: float, phi: float, tol: float = 1e-12) -> DerivedGenerator:
    """
    Build N = (dM/dtheta)(dtheta/dz) M^-1 from :func:`polarization_matrix`
    using the thickness parameterization z = cos(theta).

    The derivative is taken analytically; since ``M @ M = I/4`` the inverse is
    ``4 M``.

    Raises
    ------
    SingularBirefringenceError
        At theta = 0 or pi, where dtheta/dz = -1/sin(theta) diverges.
    """
    theta = _finite(theta, "theta")
    phi = _finite(phi, "phi")
    M = polarization_matrix(theta, phi)
    s = math.sin(theta)
    if abs(s) < 1e-15:
        raise SingularBirefringenceError(f"sin(theta) = 0 at theta={theta}: birefringence is infinite")
    N = _polarization_matrix_dtheta(theta, phi) @ (4.0 * M) * (-1.0 / s)
    eta = 1.0 / s
    printed = eta_phi_generator(eta, phi)
    diff = float(np.max(np.abs(N - printed)))
    alt = -eta_phi_generator(eta, -phi)
    claimed = next((v for t, v in CLAIMED_ETA.items() if math.isclose(theta, t, abs_tol=1e-12)), None)
    return DerivedGenerator(
        theta=theta,
        phi=phi,
        generator=N,
        printed=printed,
        eta=eta,
        claimed_eta=claimed,
        max_abs_difference=diff,
        matches_printed=diff <= tol * max(1.0, eta),
        matches_negated_conjugate=float(np.max(np.abs(N - alt))) <= tol * max(1.0, eta),
    )


@dataclass(frozen=True)
class SpinorState:
    """Point (theta, phi) on the Poincare sphere plus the helicity angle chi."""

    theta: float
    phi: float = 0.0
    chi: float = 0.0

    def __post_init__(self):
        theta = _finite(self.theta, "theta")
        if not 0.0 <= theta <= math.pi:
            raise InvalidInputError(f"theta must lie in [0, pi], got {theta}")
        object.__setattr__(self, "phi", _finite(self.phi, "phi") % TWO_PI)
        object.__setattr__(self, "chi", _finite(self.chi, "chi") % TWO_PI)

    def realize(self) -> np.ndarray:
        """(cos(theta/2) e^{i phi}, sin(theta/2)); chi dropped."""
        return np.array([math.cos(self.theta / 2) * np.exp(1j * self.phi), math.sin(self.theta / 2)], dtype=complex)

    def spinor(self) -> np.ndarray:
        """Full spinor including the helicity phase chi."""
        h = self.theta / 2
        return np.array(
            [
                math.cos(h) * np.exp(0.5j * (self.phi + self.chi)),
                math.sin(h) * np.exp(-0.5j * (self.phi - self.chi)),
            ]
        )


@dataclass(frozen=True)
class MediumSpec:
    """
    Homogeneous birefringent medium plus an optional uniform twist.

    Build with :meth:`from_eta_phi` or :meth:`from_tau_rho`; the other pair is
    filled by ``tau = eta cos(phi)``, ``rho = eta sin(phi)``.
    """

    eta: float
    phi: float
    tau: float
    rho: float
    k: float = 0.0
    twist_mode: TwistMode = TwistMode.NONE
    parameterization: str = "eta_phi"

    @classmethod
    def from_eta_phi(cls, eta, phi, k=0.0, twist_mode=TwistMode.NONE, extended=False):
        eta, phi = _finite(eta, "eta"), _finite(phi, "phi")
        if eta < 0.0 and not extended:
            raise InvalidInputError(f"eta must be non-negative, got {eta}")
        return cls(
            eta=eta,
            phi=phi,
            tau=eta * math.cos(phi),
            rho=eta * math.sin(phi),
            k=_finite(k, "k"),
            twist_mode=TwistMode(twist_mode),
            parameterization="eta_phi",
        )

    @classmethod
    def from_tau_rho(cls, tau, rho, k=0.0, twist_mode=TwistMode.NONE):
        tau, rho = _finite(tau, "tau"), _finite(rho, "rho")
        return cls(
            eta=math.hypot(tau, rho),
            phi=math.atan2(rho, tau),
            tau=tau,
            rho=rho,
            k=_finite(k, "k"),
            twist_mode=TwistMode(twist_mode),
            parameterization="tau_rho",
        )

    def generator(self) -> np.ndarray:
        """Untwisted generator N0 in the parameterization the medium was built from."""
        if self.parameterization == "tau_rho":
            return birefringence_generator(self.tau, self.rho)
        return eta_phi_generator(self.eta, self.phi, extended=True)

    def local_generator(self, z: float) -> np.ndarray:
        N0 = self.generator()
        if self.twist_mode is TwistMode.THICKNESS_INDEPENDENT:
            return twist_independent(N0, self.k)
        if self.twist_mode is TwistMode.THICKNESS_DEPENDENT:
            return twist_dependent(N0, self.k, z)
        return N0
