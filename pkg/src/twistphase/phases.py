"""
Dynamical, net and geometric phases of a twisted birefringent medium.

Two routes are kept side by side:

* the *bilinear* route, ``conj(eps) . N . eps`` evaluated on actual states and
  generators -- this is the ground truth;
* the *printed* route, :class:`ClosedForm`, which evaluates each published
  closed-form expression exactly as typeset, including expressions the
  bilinear route disagrees with away from normal incidence.

:func:`conformance_report` tabulates the two.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AmbiguousGeodesicError, InvalidInputError, UndefinedPhaseError
from .jones import _finite, as_matrix, as_vector, hermitian_inner, intensity, rotation_matrix
from .media import eigen_ray, eta_phi_generator, twist_independent, twisted_ray

LCP = np.array([1.0, 1j])
RCP = np.array([1.0, -1j])

FLAG_TOL = 1e-9


@dataclass(frozen=True)
class PhaseValue:
    """Complex bilinear phase; the imaginary part is the phase proper."""

    value: complex

    @property
    def phase_coefficient(self) -> float:
        return self.value.imag

    @property
    def purity(self) -> float:
        """|Re(value)|; zero for lossless generators."""
        return abs(self.value.real)

    def __sub__(self, other: "PhaseValue") -> "PhaseValue":
        return PhaseValue(self.value - other.value)


def bilinear_phase(eps, N, normalize: bool = False) -> PhaseValue:
    """
    ``conj(eps) . N . eps``, diagonal terms included.

    With ``normalize`` the result is divided by ``|eps|^2``; by default the
    vector's own magnitude is kept, so the unnormalized eigen ray
    (i e^{i phi}, 1) yields ``2 i eta`` rather than ``i eta``.
    """
    v = as_vector(eps)
    a = as_matrix(N)
    norm2 = intensity(v)
    if norm2 == 0.0:
        raise InvalidInputError("phase of the zero vector is undefined")
    val = complex(np.vdot(v, a @ v))
    if normalize:
        val /= norm2
    return PhaseValue(val)


class ClosedForm(str, enum.Enum):
    """Published closed-form phase expressions, named by what they compute."""

    DYNAMICAL = "dynamical"  # 2 i eta
    NET = "net"  # i[2 eta sin^2 t cos 2phi - 2k cos phi]
    NET_NORMAL = "net_normal"  # 2i[eta cos 2phi - k cos phi], theta = pi/2
    GEOMETRIC = "geometric"  # i[2 eta (sin^2 t cos 2phi - 1) - 2k cos phi]
    GEOMETRIC_COS2THETA = "geometric_cos2theta"  # i eta[(1 - cos 2t) cos 2phi - 2] - 2ik cos phi
    GEOMETRIC_NORMAL = "geometric_normal"  # i[2 eta (cos 2phi - 1) - 2k cos phi], theta = pi/2
    GEOMETRIC_AXIAL = "geometric_axial"  # -2i[eta + k cos phi], theta = 0
    DYNAMICAL_LCP = "dynamical_lcp"  # -2 i eta cos phi
    DYNAMICAL_RCP = "dynamical_rcp"  # 2 i eta cos phi
    NET_LCP = "net_lcp"  # 2ik - 2 i eta cos phi
    GEOMETRIC_LCP = "geometric_lcp"  # 2ik

    @property
    def fixed_theta(self) -> float | None:
        """Incidence angle baked into the expression, if any."""
        if self in (ClosedForm.NET_NORMAL, ClosedForm.GEOMETRIC_NORMAL):
            return math.pi / 2
        if self is ClosedForm.GEOMETRIC_AXIAL:
            return 0.0
        return None


def _printed(kind: ClosedForm, eta: float, cos_phi: float, k: float, theta: float) -> complex:
    cos2phi = 2.0 * cos_phi * cos_phi - 1.0
    if kind is ClosedForm.DYNAMICAL:
        return 2j * eta
    if kind is ClosedForm.NET:
        return 1j * (2 * eta * math.sin(theta) ** 2 * cos2phi - 2 * k * cos_phi)
    if kind is ClosedForm.NET_NORMAL:
        return 2j * (eta * cos2phi - k * cos_phi)
    if kind is ClosedForm.GEOMETRIC:
        return 1j * (2 * eta * (math.sin(theta) ** 2 * cos2phi - 1) - 2 * k * cos_phi)
    if kind is ClosedForm.GEOMETRIC_COS2THETA:
        return 1j * eta * ((1 - math.cos(2 * theta)) * cos2phi - 2) - 2j * k * cos_phi
    if kind is ClosedForm.GEOMETRIC_NORMAL:
        return 1j * (2 * eta * (cos2phi - 1) - 2 * k * cos_phi)
    if kind is ClosedForm.GEOMETRIC_AXIAL:
        return -2j * (eta + k * cos_phi)
    if kind is ClosedForm.DYNAMICAL_LCP:
        return -2j * eta * cos_phi
    if kind is ClosedForm.DYNAMICAL_RCP:
        return 2j * eta * cos_phi
    if kind is ClosedForm.NET_LCP:
        return 2j * k - 2j * eta * cos_phi
    if kind is ClosedForm.GEOMETRIC_LCP:
        return 2j * k
    raise InvalidInputError(f"unknown closed form {kind!r}")


def _kind(kind) -> ClosedForm:
    try:
        return ClosedForm(kind)
    except ValueError:
        raise InvalidInputError(f"unknown closed form {kind!r}") from None


def closed_form(kind, eta: float, phi: float, k: float = 0.0, theta: float = math.pi / 2) -> PhaseValue:
    """Evaluate a printed expression verbatim. Kinds with a built-in angle ignore ``theta``."""
    kind = _kind(kind)
    return closed_form_cos(kind, eta, math.cos(_finite(phi, "phi")), k, theta)


def closed_form_cos(kind, eta: float, cos_phi: float, k: float = 0.0, theta: float = math.pi / 2) -> PhaseValue:
    """:func:`closed_form` parameterized by cos(phi) directly (every printed form depends on phi only through it)."""
    kind = _kind(kind)
    eta, cos_phi, k, theta = (_finite(x, n) for x, n in ((eta, "eta"), (cos_phi, "cos_phi"), (k, "k"), (theta, "theta")))
    if kind.fixed_theta is not None:
        theta = kind.fixed_theta
    return PhaseValue(_printed(kind, eta, cos_phi, k, theta))


def dynamical_phase(eta: float, phi: float) -> PhaseValue:
    return bilinear_phase(eigen_ray(phi), eta_phi_generator(eta, phi))


def net_phase(theta: float, phi: float, eta: float, k: float) -> PhaseValue:
    """Bilinear of the twisted ray against the twisted generator."""
    N = twist_independent(eta_phi_generator(eta, phi), k)
    return bilinear_phase(twisted_ray(theta, phi), N)


def geometric_phase(theta: float, phi: float, eta: float, k: float) -> PhaseValue:
    """Net minus dynamical phase, both from the bilinear definitions."""
    return net_phase(theta, phi, eta, k) - dynamical_phase(eta, phi)


def bilinear_counterpart(kind, eta: float, phi: float, k: float = 0.0, theta: float = math.pi / 2) -> PhaseValue:
    """The bilinear quantity a printed expression claims to equal."""
    kind = _kind(kind)
    if kind.fixed_theta is not None:
        theta = kind.fixed_theta
    N0 = eta_phi_generator(eta, phi)
    if kind is ClosedForm.DYNAMICAL:
        return dynamical_phase(eta, phi)
    if kind in (ClosedForm.NET, ClosedForm.NET_NORMAL):
        return net_phase(theta, phi, eta, k)
    if kind in (ClosedForm.GEOMETRIC, ClosedForm.GEOMETRIC_COS2THETA, ClosedForm.GEOMETRIC_NORMAL, ClosedForm.GEOMETRIC_AXIAL):
        return geometric_phase(theta, phi, eta, k)
    if kind is ClosedForm.DYNAMICAL_LCP:
        return bilinear_phase(LCP, N0)
    if kind is ClosedForm.DYNAMICAL_RCP:
        return bilinear_phase(RCP, N0)
    twisted_lcp = rotation_matrix(-theta) @ LCP
    net = bilinear_phase(twisted_lcp, twist_independent(N0, k))
    if kind is ClosedForm.NET_LCP:
        return net
    return net - bilinear_phase(LCP, N0)


@dataclass(frozen=True)
class ConformanceRow:
    eta: float
    k: float
    phi: float
    theta: float
    kind: ClosedForm
    bilinear: complex
    printed: complex

    @property
    def difference(self) -> float:
        return abs(self.bilinear - self.printed)

    @property
    def flagged(self) -> bool:
        return self.difference > FLAG_TOL


def conformance_report(
    eta: Sequence[float],
    k: Sequence[float],
    phi: Sequence[float],
    theta: Sequence[float],
    kinds: Iterable[ClosedForm] | None = None,
) -> list[ConformanceRow]:
    """
    Compare every printed expression with its bilinear counterpart over a grid.

    Rows are ordered lexicographically by (eta, k, phi, theta) index and then
    by kind in declaration order.
    """
    axes = [list(map(float, a)) for a in (eta, k, phi, theta)]
    if any(len(a) == 0 for a in axes):
        raise InvalidInputError("conformance grid must be non-empty along every axis")
    kinds = list(ClosedForm) if kinds is None else [_kind(x) for x in kinds]
    rows = []
    for e, kk, p, t in itertools.product(*axes):
        for kind in kinds:
            rows.append(
                ConformanceRow(
                    eta=e,
                    k=kk,
                    phi=p,
                    theta=t,
                    kind=kind,
                    bilinear=bilinear_counterpart(kind, e, p, kk, t).value,
                    printed=closed_form(kind, e, p, kk, t).value,
                )
            )
    return rows


def pancharatnam_phase(states: Sequence, closed: bool = True, tol: float = 1e-12) -> float:
    """
    arg of <A1|A2><A2|A3>...(<An|A1> if closed).

    For a closed geodesic circuit this equals +Omega/2 (mod 2 pi), Omega being
    the signed :func:`solid_angle` of the Stokes images under
    :func:`~twistphase.propagation.to_stokes`.
    """
    vs = [as_vector(s) for s in states]
    if len(vs) < 3:
        raise InvalidInputError(f"need at least 3 states, got {len(vs)}")
    pairs = list(zip(vs, vs[1:]))
    if closed:
        pairs.append((vs[-1], vs[0]))
    prod = 1.0 + 0j
    for a, b in pairs:
        ov = hermitian_inner(a, b)
        if abs(ov) <= tol * math.sqrt(intensity(a) * intensity(b)):
            raise UndefinedPhaseError("consecutive states are orthogonal")
        prod *= ov / abs(ov)
    return math.atan2(prod.imag, prod.real)


def _triangle_excess(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    # signed spherical excess of triangle abc: tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a)
    num = float(np.dot(a, np.cross(b, c)))
    den = 1.0 + float(np.dot(a, b) + np.dot(b, c) + np.dot(c, a))
    return 2.0 * math.atan2(num, den)


def solid_angle(points: Sequence, tol: float = 1e-12) -> float:
    """
    Signed solid angle of the geodesic polygon through ``points``.

    The polygon is fanned into triangles from its first vertex and the signed
    spherical excesses are summed. Counterclockwise seen from outside is
    positive; the result is reduced to (-2 pi, 2 pi].
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 3:
        raise InvalidInputError("need at least 3 points in R^3")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-9):
        raise InvalidInputError("points must be unit vectors")
    pts = pts / norms[:, None]
    for a, b in zip(pts, np.roll(pts, -1, axis=0)):
        if np.dot(a, b) < -1.0 + tol:
            raise AmbiguousGeodesicError("consecutive points are antipodal")
    total = sum(_triangle_excess(pts[0], pts[i], pts[i + 1]) for i in range(1, len(pts) - 1))
    total = math.remainder(total, 4.0 * math.pi)
    return 2.0 * math.pi if total == -2.0 * math.pi else total
