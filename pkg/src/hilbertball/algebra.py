"""The function algebra of the ball.

Every admissible observable-like function is represented by an extended
operator C through

    f_C(z) = <zhat | C zhat> / (1 - ||z||^2),    zhat = (z, 1),

and the representation is faithful.  The noncommutative product is

    (f * l)(z) = f(z) l(z) - (df)(grad l),

whose operator form is simply C eps C' (so the product of two
representable functions is representable).  eps itself represents the
constant function 1 and is the unit.  The deformation coefficient -1 is
pinned by the ball's curvature -2 through c = 2/hbar.

Norms: the invariant norm of f_C equals the operator norm of C; the
estimators below certify sampled lower bounds against that oracle.  The
supremand of the invariant norm at a pair (z, lambda) reduces
algebraically to the Rayleigh quotient ||C (-z, lambda)|| / ||(-z, lambda)||
(conjugating the chain t_lambda * conj(f) * h * f * t_lambda collapses
eps I eps = I and leaves D C*C D with D = diag(-I, lambda)); the
function-level star chain is kept as an independent evaluator and the
two routes are required to agree.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .geometry import BallPoint, HBAR, TangentVector, k_factor, kahler_form, metric
from .isometries import ExtendedOperator, epsilon_matrix, epsilon_operator
from .numerics import (
    gaussian_directions,
    golden_max,
    op_norm,
    sobol_unit,
    wirtinger_second,
)

# Coefficient 2/c of the derivative term in the product, at curvature -2.
STAR_COEFFICIENT = -1.0
SELF_ADJOINT_TOL = 1e-12

MAX_RADIUS = 1.0 - 1e-6
LAMBDA_CAP = 1e8
REFINE_STEPS = 50
# coordinate ascent can stall on a ridge, so the invariant-norm search
# polishes the best few candidates rather than a single one
REFINE_RESTARTS = 3
GOLDEN_ITERS = 40
FD_DIRECTIONS = 8


def unit(dim):
    """The algebra unit: eps represents the constant function 1."""
    return epsilon_operator(dim)


def extended_point(z):
    """zhat = (z, 1) in C^n + C."""
    return np.concatenate([z.vector, [1.0 + 0.0j]])


def evaluate(C, z):
    """f_C(z) through the compact form k_z <zhat|C zhat>."""
    if C.dim != z.dim:
        raise DomainError("operator and point dimensions differ")
    zh = extended_point(z)
    return complex(k_factor(z) * np.vdot(zh, C.apply(zh)))


def evaluate_blocks(C, z):
    """f_C(z) through the expanded block formula
    (a + <y|z> + <z|x> + <z|Az>) k_z; agrees with `evaluate` to roundoff."""
    zv = z.vector
    val = C.a + np.vdot(C.y, zv) + np.vdot(zv, C.x) + np.vdot(zv, C.A @ zv)
    return complex(val * k_factor(z))


@dataclass(frozen=True, eq=False)
class KahlerFunction:
    """Callable wrapper tying an extended operator to its function."""

    operator: ExtendedOperator

    def __call__(self, z):
        return evaluate(self.operator, z)

    def conj(self):
        return KahlerFunction(self.operator.adjoint())

    def star(self, other):
        return KahlerFunction(star_operator(self.operator, other.operator))


def holo_differential(C, z):
    """Components w of the holomorphic differential of f_C at z.

    The action on a holomorphic tangent u is the plain dot product w . u:
    (df)(u) = k <zhat|C(u,0)> + k^2 <zhat|C zhat><z|u>.
    """
    n = z.dim
    k = k_factor(z)
    zh = extended_point(z)
    row = np.conj(zh) @ C.matrix
    fz = np.vdot(zh, C.apply(zh))
    return k * row[:n] + (k * k) * fz * np.conj(z.vector)


def gradient(C, z):
    """grad f_C = E_1 C zhat + <e_2|C zhat> z, a holomorphic vector."""
    n = z.dim
    czh = C.apply(extended_point(z))
    return czh[:n] + czh[n] * z.vector


def symplectic_gradient(C, z):
    """Rotated gradient -i grad f_C (the Hamiltonian direction)."""
    return -1j * gradient(C, z)


def hamiltonian_field(C, z):
    """Complexified Hamiltonian vector field of f_C.

    Holomorphic part -i grad f_C; antiholomorphic part the conjugate of
    -i grad f_{C*}.  For self-adjoint C this is the real field
    sgrad f + conj(sgrad f); the general form is the complex-bilinear
    extension in C, which is what makes the bracket below bilinear.
    """
    return TangentVector(symplectic_gradient(C, z), symplectic_gradient(C.adjoint(), z))


def poisson_bracket(C, Cp, z):
    """{f_C, f_C'} as the fundamental form on the two Hamiltonian fields."""
    return kahler_form(z, hamiltonian_field(C, z), hamiltonian_field(Cp, z))


def star_pointwise(C, Cp, z):
    """(f_C * f_C')(z) = f_C(z) f_C'(z) - (df_C)(grad f_C')."""
    correction = np.dot(holo_differential(C, z), gradient(Cp, z))
    return complex(evaluate(C, z) * evaluate(Cp, z) + STAR_COEFFICIENT * correction)


def star_operator(C, Cp):
    """Operator form of the product: C eps C'."""
    if C.dim != Cp.dim:
        raise DomainError("operator dimensions differ")
    eps = epsilon_matrix(C.dim)
    return ExtendedOperator(C.matrix @ eps @ Cp.matrix)


def self_adjoint_defect(C):
    return op_norm(C.matrix - C.matrix.conj().T)


def dispersion(C, z):
    """Dispersion sqrt(g(Idf, Idf)/2) of the observable f_C at z.

    Only defined for self-adjoint C (real-valued functions)."""
    if self_adjoint_defect(C) > SELF_ADJOINT_TOL:
        raise DomainError("dispersion needs a self-adjoint operator")
    field = hamiltonian_field(C, z)
    val = 0.5 * abs(HBAR) * metric(z, field, field).real
    return math.sqrt(max(val, 0.0))


def second_degree_defect(fn, zvec, h, directions):
    """Largest second holomorphic / antiholomorphic difference of a scalar
    field along the given complex directions at zvec."""
    worst = 0.0
    for u in directions:
        def g(s, _u=u):
            return fn(zvec + s * _u)

        worst = max(
            worst,
            abs(wirtinger_second(g, h)),
            abs(wirtinger_second(g, h, conjugate=True)),
        )
    return worst


def kahler_condition_check(C, z, h=1e-4):
    """Defect of the degree-(1,1) property of (1 - ||z||^2) f_C.

    The rescaled function is exactly a + <y|z> + <z|x> + <z|Az>, so both
    pure second derivatives vanish identically and the finite-difference
    defect is pure roundoff noise (~1e-8 at the default step).
    """
    if not 1e-5 <= h <= 1e-2:
        raise DomainError(f"step must lie in [1e-5, 1e-2], got {h}")
    n = z.dim
    rng = np.random.default_rng(0xD1F)
    dirs = []
    for _ in range(FD_DIRECTIONS):
        u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        dirs.append(u / np.linalg.norm(u))

    def rescaled(vec):
        p = BallPoint(vec)
        return evaluate(C, p) * (1.0 - p.norm_sq())

    return second_degree_defect(rescaled, z.vector, h, dirs)


def fit_operator(points, values):
    """Least-squares recovery of C from samples of f_C.

    Each sample contributes one linear equation
    (1 - ||z||^2) f(z) = sum_jk conj(zhat_j) C_jk zhat_k; fifty generic
    points determine the (n+1)^2 unknowns comfortably.
    """
    if not points:
        raise DomainError("need at least one sample")
    n = points[0].dim
    rows = []
    rhs = []
    for p, val in zip(points, values):
        zh = extended_point(p)
        rows.append(np.outer(np.conj(zh), zh).reshape(-1))
        rhs.append(val * (1.0 - p.norm_sq()))
    M = np.stack(rows)
    b = np.asarray(rhs, dtype=complex)
    sol, *_ = np.linalg.lstsq(M, b, rcond=None)
    return ExtendedOperator(sol.reshape(n + 1, n + 1))


# ---------------------------------------------------------------------------
# Norm estimation.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormEstimate:
    value: float
    argmax_z: np.ndarray
    argmax_lambda: Optional[float]
    samples: int


def scale_operator(dim, lam):
    """t_lambda's representing operator diag(I, lambda)."""
    n = dim
    m = np.eye(n + 1, dtype=complex)
    m[n, n] = lam
    return ExtendedOperator(m)


def invariant_supremand_chain(C, zvec, lam):
    """|t_{lambda^2}(z)^{-1} (t_lambda * conj(f) * h * f * t_lambda)(z)|^(1/2)
    evaluated literally through star products at function level."""
    z = BallPoint(zvec)
    n = C.dim
    tl = scale_operator(n, lam)
    ident = ExtendedOperator.identity(n)
    chain = star_operator(tl, star_operator(C.adjoint(), star_operator(ident, star_operator(C, tl))))
    denom = evaluate(scale_operator(n, lam * lam), z)
    num = evaluate(chain, z)
    if abs(denom) == 0.0:
        return 0.0
    return math.sqrt(abs(num) / abs(denom))


def invariant_supremand(C, zvec, lam):
    """The reduced Rayleigh form ||C (-z, lambda)|| / ||(-z, lambda)||."""
    xi = np.concatenate([-np.asarray(zvec, dtype=complex), [lam]])
    nx = np.linalg.norm(xi)
    if nx < 1e-10:
        return 0.0
    return float(np.linalg.norm(C.matrix @ xi) / nx)


def cone_supremand(C, zvec):
    """||C (z, 1)|| / ||(z, 1)||, the cone-restricted quotient."""
    xi = np.concatenate([np.asarray(zvec, dtype=complex), [1.0]])
    return float(np.linalg.norm(C.matrix @ xi) / np.linalg.norm(xi))


def shifted_supremand_chain(C, zvec):
    """|h(z)^{-1} (conj(f) * h * f)(z)|^(1/2) through star products."""
    z = BallPoint(zvec)
    ident = ExtendedOperator.identity(C.dim)
    chain = star_operator(C.adjoint(), star_operator(ident, C))
    denom = evaluate(ident, z)
    return math.sqrt(abs(evaluate(chain, z)) / abs(denom))


def _sobol_candidates(dim, samples, seed, with_lambda):
    d = 2 * dim + 1 + (1 if with_lambda else 0)
    U = sobol_unit(samples, d, seed)
    normals = gaussian_directions(U[:, : 2 * dim])
    dirs = normals[:, :dim] + 1j * normals[:, dim:]
    norms = np.linalg.norm(dirs, axis=1)
    norms[norms == 0.0] = 1.0
    radius = MAX_RADIUS * U[:, 2 * dim] ** (1.0 / (2 * dim))
    Z = (radius / norms)[:, None] * dirs
    lams = None
    if with_lambda:
        lams = np.minimum(np.tan(0.5 * math.pi * U[:, 2 * dim + 1]), LAMBDA_CAP)
    return Z, lams


def _refine(scalar_fn, zvec, lam, best_val):
    """Coordinate-wise golden-section ascent around the best candidate."""
    n = zvec.size
    coords = np.concatenate([zvec.real, zvec.imag])
    cur_lam = lam
    ncoords = 2 * n + (1 if lam is not None else 0)

    def current_value():
        return scalar_fn(coords[:n] + 1j * coords[n:], cur_lam)

    val = best_val
    for step in range(REFINE_STEPS):
        c = step % ncoords
        if c < 2 * n:
            rest = float(np.sum(coords[:2 * n] ** 2) - coords[c] ** 2)
            half = math.sqrt(max(MAX_RADIUS ** 2 - rest, 0.0))

            def f(x, _c=c):
                old = coords[_c]
                coords[_c] = x
                v = current_value()
                coords[_c] = old
                return v

            x, fx = golden_max(f, -half, half, GOLDEN_ITERS)
            if fx > val:
                coords[c] = x
                val = fx
        else:
            hi = min(max(4.0 * cur_lam, 10.0), LAMBDA_CAP)

            def f(x):
                nonlocal cur_lam
                old = cur_lam
                cur_lam = x
                v = current_value()
                cur_lam = old
                return v

            x, fx = golden_max(f, 0.0, hi, GOLDEN_ITERS)
            if fx > val:
                cur_lam = x
                val = fx
    return coords[:n] + 1j * coords[n:], cur_lam, val


def norm_b_estimate(C, samples=2048, seed=0):
    """Sampled supremum of the invariant norm of f_C.

    Sobol candidates over (z, lambda) with lambda = tan(pi u / 2), then
    coordinate-wise golden-section refinement; the refined argmax is
    re-evaluated through the function-level star chain as a guard against
    drift between the two supremand routes.
    """
    n = C.dim
    Z, lams = _sobol_candidates(n, samples, seed, with_lambda=True)
    Xi = np.hstack([-Z, lams[:, None].astype(complex)])
    vals = np.linalg.norm(Xi @ C.matrix.T, axis=1) / np.linalg.norm(Xi, axis=1)
    order = np.argsort(vals)[::-1][:REFINE_RESTARTS]

    def scalar(zv, lam):
        return invariant_supremand(C, zv, lam)

    zbest, lbest, val = None, None, -1.0
    for i in order:
        zc, lc, vc = _refine(scalar, Z[i].copy(), float(lams[i]), float(vals[i]))
        if vc > val:
            zbest, lbest, val = zc, lc, vc
    chain_val = invariant_supremand_chain(C, zbest, lbest)
    if abs(chain_val - val) > 1e-8 * (1.0 + val):
        raise RuntimeError(
            f"supremand routes disagree: chain {chain_val:.17g} vs reduced {val:.17g}"
        )
    return NormEstimate(val, zbest, lbest, samples)


def norm_s_estimate(C, samples=2048, seed=0):
    """Sampled supremum of ||C (z,1)||/||(z,1)|| over the ball."""
    n = C.dim
    Z, _ = _sobol_candidates(n, samples, seed, with_lambda=False)
    Xi = np.hstack([Z, np.ones((Z.shape[0], 1), dtype=complex)])
    vals = np.linalg.norm(Xi @ C.matrix.T, axis=1) / np.linalg.norm(Xi, axis=1)
    i = int(np.argmax(vals))

    def scalar(zv, lam):
        return cone_supremand(C, zv)

    zbest, _, val = _refine(scalar, Z[i].copy(), None, float(vals[i]))
    return NormEstimate(val, zbest, None, samples)


def norm_d_estimate(C, samples=2048, seed=0):
    """Sampled supremum of the shifted norm, evaluated through the
    function-level star chain at every candidate."""
    n = C.dim
    Z, _ = _sobol_candidates(n, samples, seed, with_lambda=False)
    vals = np.array([shifted_supremand_chain(C, Z[j]) for j in range(Z.shape[0])])
    i = int(np.argmax(vals))

    def scalar(zv, lam):
        return shifted_supremand_chain(C, zv)

    zbest, _, val = _refine(scalar, Z[i].copy(), None, float(vals[i]))
    return NormEstimate(val, zbest, None, samples)


def norm_b(C, samples=2048, seed=0):
    return norm_b_estimate(C, samples, seed).value


def norm_s(C, samples=2048, seed=0):
    return norm_s_estimate(C, samples, seed).value


def norm_d(C, samples=2048, seed=0):
    return norm_d_estimate(C, samples, seed).value


def submultiplicativity_witnesses(dim, vector=None, alternative_slot=False):
    """A rank-one pair whose product breaks the Banach inequality for the
    cone-restricted norm by a factor sqrt(2).

    The first operator has the projection onto `vector` as its A block;
    the second holds the vector in the upper-right slot (the flag moves
    it, conjugated, to the lower-left slot instead, and that variant
    witnesses the same failure).
    """
    if vector is None:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
    else:
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
    E = np.outer(v, np.conj(v))
    first = ExtendedOperator.from_blocks(E, np.zeros(dim), np.zeros(dim), 0.0)
    if alternative_slot:
        second = ExtendedOperator.from_blocks(np.zeros((dim, dim)), np.zeros(dim), v, 0.0)
    else:
        second = ExtendedOperator.from_blocks(np.zeros((dim, dim)), v, np.zeros(dim), 0.0)
    return first, second


def involution_failure_operator(dim, vector=None):
    """The rank-one operator with A-block E and lower-left conj(v): its
    plain square has norm 2 while its eps-twisted square is zero."""
    if vector is None:
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
    else:
        v = np.asarray(vector, dtype=complex)
        v = v / np.linalg.norm(v)
    E = np.outer(v, np.conj(v))
    return ExtendedOperator.from_blocks(E, np.zeros(dim), v, 0.0)
