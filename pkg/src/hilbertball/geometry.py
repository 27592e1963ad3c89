"""Hyperbolic geometry of the open unit ball of C^n.

The state space is B = {z : ||z|| < 1} carrying the Bergman-type metric
with conformal factor k_z = 1/(1 - ||z||^2).  On complexified tangent
pairs (u, vbar) the metric reads

    g_z((u, vbar), (u', vbar')) = k_z (<v|u'> + <v'|u>)
                                + k_z^2 (<v|z><z|u'> + <v'|z><z|u>),

with <a|b> antilinear in the first slot.  A real tangent vector u embeds
as the pair (u, ubar), which doubles the hermitian line element: in one
dimension g((u,ubar),(u,ubar)) = 2|u|^2/(1-|z|^2)^2.  Two normalization
conventions therefore coexist and both are pinned by exact anchors:

* lengths and the distance use the hermitian line element
  k||du||^2 + k^2|<z|du>|^2, which makes tanh d(u,0) = ||u|| hold exactly;
* the curvature probe uses the doubled (real tangent) evaluation, which
  is what gives the constant holomorphic sectional curvature -2.

The distance between interior points is

    d(u,v) = (1/2) log[(m + s)/(m - s)],
    m = |1 - <u|v>|,  s = sqrt(||u-v||^2 - ||u||^2 ||v||^2 + |<u|v>|^2),

equivalently tanh d(u,v) = s/m.  The identity
m^2 - s^2 = (1 - ||u||^2)(1 - ||v||^2) keeps m - s strictly positive on
the open ball, and m, s are invariant under the Moebius transport group
as well as under unitary and antiunitary maps, which is what makes d the
geodesic distance of the metric above.  When <u|v> happens to be real
both quantities reduce to 1 - <u|v> and the familiar real-part form of
the formula.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

BOUNDARY_MARGIN = 1e-12
# Roundoff-negative radicands below this defect are clamped silently.
CLAMP_WARN = 1e-10
# Constant holomorphic sectional curvature of the ball, and the scale
# constant tied to it by c = 2/hbar.
CURVATURE = -2.0
HBAR = 2.0 / CURVATURE

NORM_MATCH_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BallPoint:
    """An interior point of the unit ball, ||z|| < 1."""

    vector: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.vector, dtype=complex))
        if v.ndim != 1:
            raise DomainError(f"a point is a vector, got ndim {v.ndim}")
        if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
            raise DomainError("point has non-finite entries")
        if np.linalg.norm(v) >= 1.0 - BOUNDARY_MARGIN:
            raise DomainError(
                f"point with norm {np.linalg.norm(v):.17g} is outside the open ball"
            )
        object.__setattr__(self, "vector", v)

    @property
    def dim(self):
        return self.vector.size

    def norm(self):
        return float(np.linalg.norm(self.vector))

    def norm_sq(self):
        return float(np.real(np.vdot(self.vector, self.vector)))


def origin(dim):
    return BallPoint(np.zeros(dim, dtype=complex))


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Complexified tangent element (u, vbar).

    `hol` stores u; `antihol` stores the vector v whose conjugate is the
    antiholomorphic component.  The complex structure sends (u, vbar) to
    (i u, -i vbar), which in this storage multiplies both parts by i.
    """

    hol: np.ndarray
    antihol: np.ndarray

    def __post_init__(self):
        u = np.atleast_1d(np.asarray(self.hol, dtype=complex))
        v = np.atleast_1d(np.asarray(self.antihol, dtype=complex))
        if u.shape != v.shape:
            raise DomainError("tangent parts must share one dimension")
        object.__setattr__(self, "hol", u)
        object.__setattr__(self, "antihol", v)

    @classmethod
    def holomorphic(cls, u):
        u = np.atleast_1d(np.asarray(u, dtype=complex))
        return cls(u, np.zeros_like(u))

    @classmethod
    def antiholomorphic(cls, v):
        v = np.atleast_1d(np.asarray(v, dtype=complex))
        return cls(np.zeros_like(v), v)

    @classmethod
    def real(cls, u):
        """Embed a real tangent direction u as the pair (u, ubar)."""
        return cls(u, u)

    def apply_J(self):
        return TangentVector(1j * self.hol, 1j * self.antihol)


def k_factor(z):
    """Conformal factor 1/(1 - ||z||^2), at least 1 on the ball."""
    return 1.0 / (1.0 - z.norm_sq())


def metric(z, s, t):
    """Evaluate the metric at z on two complexified tangent vectors."""
    zv = z.vector
    if s.hol.size != zv.size or t.hol.size != zv.size:
        raise DomainError("tangent dimension does not match the point")
    k = k_factor(z)
    term1 = np.vdot(s.antihol, t.hol) + np.vdot(t.antihol, s.hol)
    term2 = np.vdot(s.antihol, zv) * np.vdot(zv, t.hol) + np.vdot(t.antihol, zv) * np.vdot(zv, s.hol)
    return complex(k * term1 + k * k * term2)


def kahler_form(z, s, t):
    """The fundamental two-form, metric with J applied to the first slot."""
    return metric(z, s.apply_J(), t)


def hermitian_energy(z, u):
    """k||u||^2 + k^2 |<z|u>|^2: the line element used for lengths.

    Equal to metric(z, (u,0), (0,ubar)) and to half the real-tangent
    evaluation metric(z, (u,ubar), (u,ubar)).
    """
    u = np.asarray(u, dtype=complex)
    k = k_factor(z)
    return float(k * np.real(np.vdot(u, u)) + k * k * abs(np.vdot(z.vector, u)) ** 2)


def connection(z, X, Y):
    """Christoffel correction k_z(<z|X> Y + <z|Y> X) for holomorphic fields.

    Symmetric in X and Y, zero at the origin.  Compatibility with the
    metric takes the form  d_X^hol h(U,V) = h(connection(z,X,U), V)  for
    constant fields, which the tests check by finite differences.
    """
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    k = k_factor(z)
    return k * (np.vdot(z.vector, X) * Y + np.vdot(z.vector, Y) * X)


def _distance_parts(u, v):
    uv = u.vector - v.vector
    c = complex(np.vdot(u.vector, v.vector))
    m = abs(1.0 - c)
    radicand = (
        float(np.real(np.vdot(uv, uv)))
        - u.norm_sq() * v.norm_sq()
        + c.real * c.real
        + c.imag * c.imag
    )
    if radicand < 0.0:
        if -radicand > CLAMP_WARN:
            warnings.warn(
                f"distance radicand clamped from {radicand:.3e} to 0", RuntimeWarning
            )
        radicand = 0.0
    return m, math.sqrt(radicand)


def distance(u, v):
    """Geodesic distance between interior points (logarithm form)."""
    if u.dim != v.dim:
        raise DomainError("points of different dimension")
    m, s = _distance_parts(u, v)
    num = m + s
    den = m - s
    if den <= 0.0:
        # m^2 - s^2 = (1-||u||^2)(1-||v||^2) > 0 holds strictly on the
        # open ball; only roundoff at the extreme rim can produce this.
        den = 5e-324
    return 0.5 * math.log(num / den)


def tanh_distance(u, v):
    """tanh of the distance, evaluated by its own closed formula s/m
    with m = |1 - <u|v>|; used as an independent cross-check of
    `distance`."""
    if u.dim != v.dim:
        raise DomainError("points of different dimension")
    m, s = _distance_parts(u, v)
    return s / m


def geodesic_from_origin(z, t):
    """Point at parameter t on the radial geodesic from 0 to z."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"geodesic parameter must lie in [0, 1], got {t}")
    return BallPoint(t * z.vector)


def curve_length(samples):
    """Length of a discretized curve by composite midpoint quadrature.

    Velocities are central differences across each interval (exact at the
    interval midpoint to second order); the integrand is the hermitian
    line element.  Converges at second order in the sample spacing.
    """
    if len(samples) < 2:
        raise DomainError("a curve needs at least 2 samples")
    Z = np.stack([p.vector for p in samples])
    n = Z.shape[0]
    dt = 1.0 / (n - 1)
    mids = 0.5 * (Z[1:] + Z[:-1])
    vels = (Z[1:] - Z[:-1]) / dt
    mid_nsq = np.sum(np.abs(mids) ** 2, axis=1)
    k = 1.0 / (1.0 - mid_nsq)
    vel_nsq = np.sum(np.abs(vels) ** 2, axis=1)
    inner = np.abs(np.sum(np.conj(mids) * vels, axis=1)) ** 2
    energy = k * vel_nsq + k * k * inner
    return float(np.sum(np.sqrt(np.maximum(energy, 0.0))) * dt)


def sectional_curvature_probe(z, u, step=3e-3, base=0.25):
    """Numerical Gaussian curvature of the holomorphic section through z
    along the direction u; returns a value near the constant -2.

    The point is transported to the origin, the direction is pushed
    forward, and the induced metric coefficient lambda(w) on the complex
    line through 0 is evaluated with the real-tangent (doubled) metric.
    The curvature is -(1/(2 lambda)) Laplacian(log lambda), with the
    Laplacian taken by the 5-point stencil at an interior chart point.
    """
    from . import isometries  # the two modules reference each other

    u = np.atleast_1d(np.asarray(u, dtype=complex))
    nu = np.linalg.norm(u)
    if nu == 0.0:
        raise DomainError("curvature probe needs a nonzero direction")
    if z.norm() > 0.0:
        back = isometries.inverse(isometries.transport_from_origin(z))
        pushed = isometries.mobius_differential(back, z) @ u
    else:
        pushed = u
    direction = pushed / np.linalg.norm(pushed)

    def lam(w):
        p = BallPoint(w * direction)
        s = TangentVector.real(direction)
        return metric(p, s, s).real

    h = step
    w0 = complex(base, 0.0)
    f0 = math.log(lam(w0))
    fxp = math.log(lam(w0 + h))
    fxm = math.log(lam(w0 - h))
    fyp = math.log(lam(w0 + 1j * h))
    fym = math.log(lam(w0 - 1j * h))
    lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h)
    return -lap / (2.0 * lam(w0))


def recover_inner_product(u, v):
    """Rebuild <u|v> for equal-norm points from distances alone.

    For ||w|| = ||u|| the quantity M(w) = (1 - tanh^2 d(u,0)) cosh d(w,v)
    equals |1 - <w|v>|, by the distance formula together with
    m^2 - s^2 = (1-||w||^2)(1-||v||^2).  Probing with the four rotates
    +-u, +-iu of the base point turns the moduli into linear data:

        Re<u|v> = (M(-u)^2 - M(u)^2) / 4,
        Im<u|v> = (M(-iu)^2 - M(iu)^2) / 4,

    since |1 + c|^2 - |1 - c|^2 = 4 Re c and <iu|v> = -i<u|v>.  Only
    distances enter; the norm itself comes from d(u, 0).
    """
    if u.dim != v.dim:
        raise DomainError("points of different dimension")
    nu, nv = u.norm(), v.norm()
    if nu == 0.0:
        raise DomainError("recovery needs a nonzero base point")
    if abs(nu - nv) > NORM_MATCH_TOL:
        raise DomainError(
            f"recovery needs equal norms; got {nu:.17g} and {nv:.17g}"
        )
    o = origin(u.dim)
    fac = 1.0 - math.tanh(distance(u, o)) ** 2

    def m_sq(w):
        return (fac * math.cosh(distance(w, v))) ** 2

    re = (m_sq(BallPoint(-u.vector)) - m_sq(u)) / 4.0
    im = (m_sq(BallPoint(-1j * u.vector)) - m_sq(BallPoint(1j * u.vector))) / 4.0
    return complex(re, im)
