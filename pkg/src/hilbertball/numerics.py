"""Dense complex linear algebra and numerical helpers.

Everything here is deliberately small-scale: matrices are at most a few
dozen entries, so simple deterministic algorithms (power iteration,
Taylor series with scaling and squaring, coordinate-wise golden section)
beat pulling in heavier machinery.  All functions are pure.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .errors import DomainError

# Convergence / validation thresholds.
OP_NORM_TOL = 1e-14
OP_NORM_RESTARTS = 3
OP_NORM_MAX_ITER = 50_000
EXP_SCALE_LIMIT = 0.5
EXP_TAYLOR_TERMS = 18
GRAM_TOL = 1e-12


def _as_complex_matrix(M, square=False):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DomainError(f"expected a matrix, got array of ndim {M.ndim}")
    if square and M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise DomainError("matrix has non-finite entries")
    return M


def op_norm(M):
    """Largest singular value of a complex matrix.

    Power iteration on M*M with deterministic restarts; the Rayleigh
    quotient never overshoots the true value, so the result is a tight
    lower bound converged to ~1e-14 in the quotient.
    """
    M = _as_complex_matrix(M)
    if M.size == 0:
        return 0.0
    B = M.conj().T @ M
    n = B.shape[0]
    scale = float(np.max(np.abs(B)))
    if scale == 0.0:
        return 0.0
    best = 0.0
    for restart in range(OP_NORM_RESTARTS):
        rng = np.random.default_rng(0x5EED + restart)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        lam = 0.0
        for _ in range(OP_NORM_MAX_ITER):
            w = B @ v
            nw = np.linalg.norm(w)
            if nw <= scale * 1e-300:
                lam = 0.0
                break
            r = float(np.real(np.vdot(v, w)))
            v = w / nw
            if abs(r - lam) <= OP_NORM_TOL * max(1.0, abs(r)):
                lam = r
                break
            lam = r
        best = max(best, lam)
    return math.sqrt(max(best, 0.0))


def mat_exp(X, t=1.0):
    """exp(t X) by scaling-and-squaring with an 18-term Taylor kernel.

    The matrix is halved until its infinity norm is at most 0.5, where the
    truncated series is accurate to well below double roundoff, then the
    result is squared back up.
    """
    X = _as_complex_matrix(X, square=True)
    if not np.isfinite(t):
        raise DomainError("non-finite time parameter")
    n = X.shape[0]
    M = t * X
    nrm = float(np.linalg.norm(M, np.inf))
    squarings = 0
    while nrm > EXP_SCALE_LIMIT:
        M = M / 2.0
        nrm /= 2.0
        squarings += 1
    E = np.eye(n, dtype=complex)
    R = np.eye(n, dtype=complex)
    for k in range(EXP_TAYLOR_TERMS, 0, -1):
        R = E + (M @ R) / k
    for _ in range(squarings):
        R = R @ R
    return R


def ball_sample(rng, dim, max_norm):
    """One point of C^dim with uniform direction and radius uniform on
    [0, max_norm], drawn from an existing Generator."""
    while True:
        w = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        nw = np.linalg.norm(w)
        if nw > 0:
            break
    r = rng.uniform(0.0, max_norm)
    return (r / nw) * w


def sample_ball_point(dim, rng_seed, max_norm):
    """Deterministic interior sample: uniform direction, radius uniform on
    [0, max_norm]."""
    if not 0.0 < max_norm < 1.0:
        raise DomainError(f"max_norm must lie in (0, 1), got {max_norm}")
    if dim < 1:
        raise DomainError("dim must be positive")
    rng = np.random.default_rng(rng_seed)
    return ball_sample(rng, dim, max_norm)


def realify(z):
    """C^n -> R^2n, stacking real parts over imaginary parts.  The standard
    real inner product of two realifications equals Re<u|v>."""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag])


def unrealify(x):
    x = np.asarray(x, dtype=float)
    n = x.size // 2
    return x[:n] + 1j * x[n:]


@dataclass(frozen=True, eq=False)
class RealLinearMap:
    """A real-linear (not necessarily complex-linear) map of C^n, stored as
    its 2n x 2n matrix on the realification.  Needed because projections
    onto real subspaces and mirror maps do not commute with i."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
            raise DomainError(f"real-linear map needs a square even-sized matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        """Complex dimension of the underlying space."""
        return self.matrix.shape[0] // 2

    def apply(self, z):
        return unrealify(self.matrix @ realify(z))

    def complement(self):
        return RealLinearMap(np.eye(self.matrix.shape[0]) - self.matrix)

    def compose(self, other):
        return RealLinearMap(self.matrix @ other.matrix)

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(2 * dim))


def real_projection(basis):
    """Orthogonal projection (w.r.t. Re<.|.>) onto the real span of `basis`.

    The basis must be orthonormal in the real inner product; the Gram
    defect is reported on rejection.
    """
    vs = [realify(b) for b in basis]
    if not vs:
        raise DomainError("empty basis")
    V = np.stack(vs, axis=1)
    G = V.T @ V
    defect = float(np.max(np.abs(G - np.eye(G.shape[0]))))
    if defect > GRAM_TOL:
        raise DomainError(f"basis is not real-orthonormal (Gram defect {defect:.3e})")
    return RealLinearMap(V @ V.T)


# ---------------------------------------------------------------------------
# Wirtinger finite differences.
#
# For a scalar function g of one complex step s, the holomorphic and
# antiholomorphic derivatives are d = (d/dx - i d/dy)/2 and
# dbar = (d/dx + i d/dy)/2, realized by central differences in the four
# axis directions.  The second derivatives use the standard 9-point data.
# ---------------------------------------------------------------------------

def wirtinger_first(g, h=1e-4, conjugate=False):
    gx = (g(h) - g(-h)) / (2.0 * h)
    gy = (g(1j * h) - g(-1j * h)) / (2.0 * h)
    if conjugate:
        return 0.5 * (gx + 1j * gy)
    return 0.5 * (gx - 1j * gy)


def wirtinger_second(g, h=1e-4, conjugate=False):
    g0 = g(0.0)
    gxx = (g(h) - 2.0 * g0 + g(-h)) / (h * h)
    gyy = (g(1j * h) - 2.0 * g0 + g(-1j * h)) / (h * h)
    gxy = (g(h + 1j * h) - g(h - 1j * h) - g(-h + 1j * h) + g(-h - 1j * h)) / (4.0 * h * h)
    if conjugate:
        return 0.25 * (gxx - gyy + 2j * gxy)
    return 0.25 * (gxx - gyy - 2j * gxy)


def richardson(fd, h):
    """Richardson extrapolation of a second-order central difference: two
    evaluations at h and h/2 cancel the h^2 error term."""
    return (4.0 * fd(h / 2.0) - fd(h)) / 3.0


# ---------------------------------------------------------------------------
# Supremum-estimation helpers: low-discrepancy candidates plus a scalar
# golden-section line search used coordinate by coordinate.
# ---------------------------------------------------------------------------

INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def sobol_unit(samples, dim, seed):
    """`samples` points of the scrambled Sobol sequence in [0,1)^dim."""
    if samples < 1:
        raise DomainError("samples must be at least 1")
    sampler = qmc.Sobol(d=dim, scramble=True, seed=seed)
    m = max(1, math.ceil(math.log2(samples)))
    pts = sampler.random_base2(m)
    return pts[:samples]


def gaussian_directions(u):
    """Map uniform variates to standard normals through the inverse CDF."""
    clipped = np.clip(u, 1e-12, 1.0 - 1e-12)
    return ndtri(clipped)


def golden_max(f, lo, hi, iters=40):
    """Golden-section search for the maximum of f on [lo, hi].

    Returns (argmax, value).  The function is evaluated 2 + iters times;
    no derivative or unimodality certificate is required, the search just
    narrows toward the best bracket.
    """
    a, b = float(lo), float(hi)
    if not b > a:
        x = a
        return x, f(x)
    c = b - INV_GOLDEN * (b - a)
    d = a + INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_GOLDEN * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc
    return d, fd
