import math

import numpy as np
import pytest
from hypothesis import given, settings

from hilbertball import isometries
from hilbertball.errors import DomainError
from hilbertball.geometry import (
    BallPoint,
    TangentVector,
    connection,
    curve_length,
    distance,
    geodesic_from_origin,
    hermitian_energy,
    k_factor,
    kahler_form,
    metric,
    origin,
    recover_inner_product,
    sectional_curvature_probe,
    tanh_distance,
)

from conftest import ball_vectors, cgauss, random_point


# ---------------------------------------------------------------------
# oracle: move u to the origin with the transport group, then integrate
# the line element along the radial segment to the image of v.  The
# quadrature (composite midpoint plus one Richardson step) is written
# out here so the closed-form distance is checked against the metric
# itself, not against another formula.
# ---------------------------------------------------------------------

def quadrature_distance(u, v, panels=2048):
    T = isometries.inverse(isometries.transport_from_origin(u))
    w = isometries.mobius_apply(T, v).vector

    def arc(m):
        total = 0.0
        ts = (np.arange(m) + 0.5) / m
        for t in ts:
            total += math.sqrt(hermitian_energy(BallPoint(t * w), w))
        return total / m

    return (4.0 * arc(panels) - arc(panels // 2)) / 3.0


def test_distance_matches_metric_quadrature(rng):
    worst = 0.0
    for _ in range(8):
        u = random_point(rng, 3, max_norm=0.6)
        v = random_point(rng, 3, max_norm=0.6)
        worst = max(worst, abs(distance(u, v) - quadrature_distance(u, v)))
    assert worst < 1e-6


# frozen anchors ------------------------------------------------------

def test_radial_anchor():
    u = BallPoint(np.array([0.5 + 0j]))
    assert abs(distance(u, origin(1)) - math.atanh(0.5)) < 1e-15
    assert tanh_distance(u, origin(1)) == 0.5


def test_skew_pair_anchor():
    # inner product 0.25i, so the real-part reduction does not apply
    u = BallPoint(np.array([0.5 + 0j]))
    v = BallPoint(np.array([0.5j]))
    assert abs(distance(u, v) - 0.8403498862140019) < 1e-12
    # same number through the disk automorphism moving u to 0
    w = (v.vector[0] - u.vector[0]) / (1 - np.conj(u.vector[0]) * v.vector[0])
    assert abs(distance(u, v) - math.atanh(abs(w))) < 1e-13


def test_metric_frozen_value():
    z = BallPoint(np.array([0.3 + 0.4j, -0.2 + 0.1j]))
    X = TangentVector(np.array([0.5 + 0j, 0.25j]), np.array([0.1 - 0.2j, 0.3 + 0j]))
    Y = TangentVector(np.array([-0.2 + 0.6j, 0.15 + 0j]), np.array([0.4 + 0j, -0.05 + 0.35j]))
    want = 0.35005102040816327 - 0.008316326530612267j
    assert abs(metric(z, X, Y) - want) < 1e-15


def test_connection_frozen_value():
    z = BallPoint(np.array([0.3 + 0.4j, -0.2 + 0.1j]))
    got = connection(z, np.array([1.0 + 0j, 0j]), np.array([0j, 1.0 + 0j]))
    want = np.array([-0.28571429 - 0.14285714j, 0.42857143 - 0.57142857j])
    assert np.allclose(got, want, atol=1e-8)


def test_curvature_probe_frozen_origin():
    got = sectional_curvature_probe(origin(2), np.array([1.0 + 0j, 0j]))
    assert abs(got - (-2.0000115600877884)) < 1e-9


# metric structure ----------------------------------------------------

def test_k_factor_anchor():
    assert k_factor(origin(3)) == 1.0
    z = BallPoint(np.array([0.6 + 0j]))
    assert abs(k_factor(z) - 1.0 / 0.64) < 1e-15


def test_metric_symmetric_and_j_invariant(rng):
    for _ in range(50):
        z = random_point(rng, 3)
        X = TangentVector(cgauss(rng, 3), cgauss(rng, 3))
        Y = TangentVector(cgauss(rng, 3), cgauss(rng, 3))
        assert abs(metric(z, X, Y) - metric(z, Y, X)) < 1e-12
        assert abs(metric(z, X.apply_J(), Y.apply_J()) - metric(z, X, Y)) < 1e-12


def test_metric_positive_on_real_tangents(rng):
    for _ in range(100):
        z = random_point(rng, 4)
        u = cgauss(rng, 4)
        val = metric(z, TangentVector.real(u), TangentVector.real(u))
        assert abs(val.imag) < 1e-13
        assert val.real > 0.0


def test_kahler_form_antisymmetric(rng):
    z = random_point(rng, 3)
    X = TangentVector.real(cgauss(rng, 3))
    Y = TangentVector.real(cgauss(rng, 3))
    assert abs(kahler_form(z, X, Y) + kahler_form(z, Y, X)) < 1e-12
    # compatibility: omega(X, Y) = g(JX, Y)
    assert abs(kahler_form(z, X, Y) - metric(z, X.apply_J(), Y)) == 0.0


def test_hermitian_energy_is_half_real_evaluation(rng):
    z = random_point(rng, 3)
    u = cgauss(rng, 3)
    doubled = metric(z, TangentVector.real(u), TangentVector.real(u))
    assert abs(hermitian_energy(z, u) - 0.5 * doubled.real) < 1e-12


def test_hermitian_energy_dim1_poincare():
    z = BallPoint(np.array([0.4 + 0j]))
    du = np.array([1.0 + 0j])
    want = 1.0 / (1.0 - 0.16) ** 2
    assert abs(hermitian_energy(z, du) - want) < 1e-14


def test_connection_symmetric_vanishes_at_origin(rng):
    z = random_point(rng, 3)
    X, Y = cgauss(rng, 3), cgauss(rng, 3)
    assert np.allclose(connection(z, X, Y), connection(z, Y, X))
    assert np.allclose(connection(origin(3), X, Y), 0.0)


# distance properties -------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(ball_vectors(dim=3), ball_vectors(dim=3))
def test_distance_log_and_tanh_agree(uv, vv):
    u, v = BallPoint(uv), BallPoint(vv)
    assert abs(math.tanh(distance(u, v)) - tanh_distance(u, v)) < 1e-12


@settings(max_examples=150, deadline=None)
@given(ball_vectors(dim=3), ball_vectors(dim=3))
def test_distance_symmetry_and_identity(uv, vv):
    u, v = BallPoint(uv), BallPoint(vv)
    assert distance(u, v) == distance(v, u)
    assert distance(u, u) < 1e-7  # clamped radicand noise only
    assert distance(u, v) >= 0.0


@settings(max_examples=100, deadline=None)
@given(ball_vectors(dim=2), ball_vectors(dim=2), ball_vectors(dim=2))
def test_triangle_inequality(av, bv, cv):
    a, b, c = BallPoint(av), BallPoint(bv), BallPoint(cv)
    assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9


def test_distance_dimension_mismatch():
    with pytest.raises(DomainError):
        distance(origin(2), origin(3))


def test_distance_through_origin_adds():
    # u and -u lie on one radial geodesic
    u = BallPoint(np.array([0.3 + 0.4j, 0.1 - 0.2j]))
    r = u.norm()
    assert abs(distance(u, BallPoint(-u.vector)) - 2.0 * math.atanh(r)) < 1e-12


def test_distance_transport_invariant(rng):
    worst = 0.0
    for _ in range(60):
        u, v = random_point(rng, 4, 0.85), random_point(rng, 4, 0.85)
        T = isometries.transport_from_origin(random_point(rng, 4, 0.85))
        su, sv = isometries.mobius_apply(T, u), isometries.mobius_apply(T, v)
        worst = max(worst, abs(distance(su, sv) - distance(u, v)))
    assert worst < 1e-9


# geodesics and lengths -----------------------------------------------

def test_geodesic_param_is_euclidean_scaling():
    z = BallPoint(np.array([0.2 + 0.5j, -0.3 + 0j]))
    for t in (0.0, 0.25, 0.8, 1.0):
        g = geodesic_from_origin(z, t)
        assert np.array_equal(g.vector, t * z.vector)
        assert abs(distance(origin(2), g) - math.atanh(t * z.norm())) < 1e-13
    with pytest.raises(DomainError):
        geodesic_from_origin(z, 1.2)


def test_curve_length_radial_converges():
    z = BallPoint(np.array([0.7 + 0j]))
    want = math.atanh(0.7)
    errs = []
    for n in (64, 128, 256):
        ts = np.linspace(0.0, 1.0, n + 1)
        samples = [BallPoint(t * z.vector) for t in ts]
        errs.append(abs(curve_length(samples) - want))
    # second order: each doubling divides the error by about 4
    assert errs[2] < errs[0] / 8.0
    assert errs[2] < 1e-5


def test_curve_length_never_beats_distance(rng):
    # bent curves between random endpoints stay at least as long as the
    # geodesic distance
    for _ in range(10):
        u, v = random_point(rng, 2, 0.6), random_point(rng, 2, 0.6)
        bend = 0.3 * cgauss(rng, 2)
        ts = np.linspace(0.0, 1.0, 600)
        pts = []
        for t in ts:
            w = (1 - t) * u.vector + t * v.vector + t * (1 - t) * bend
            pts.append(BallPoint(w))
        assert curve_length(pts) >= distance(u, v) - 1e-6


def test_curve_length_needs_two_samples():
    with pytest.raises(DomainError):
        curve_length([origin(2)])


# curvature -----------------------------------------------------------

def test_curvature_constant_minus_two(rng):
    worst = 0.0
    for _ in range(25):
        z = random_point(rng, 3, max_norm=0.6)
        u = cgauss(rng, 3)
        worst = max(worst, abs(sectional_curvature_probe(z, u) + 2.0))
    assert worst < 1e-3


# inner product recovery ----------------------------------------------

def test_recover_inner_product(rng):
    worst = 0.0
    for _ in range(120):
        r = 0.85 * rng.uniform() ** 0.25
        g1, g2 = cgauss(rng, 3), cgauss(rng, 3)
        g1, g2 = r * g1 / np.linalg.norm(g1), r * g2 / np.linalg.norm(g2)
        rec = recover_inner_product(BallPoint(g1), BallPoint(g2))
        worst = max(worst, abs(rec - complex(np.vdot(g1, g2))))
    assert worst < 1e-9


def test_recover_equal_points_gives_norm_squared():
    u = BallPoint(np.array([0.3 + 0.4j, 0.1 + 0j]))
    rec = recover_inner_product(u, u)
    assert abs(rec - u.norm_sq()) < 1e-9
    assert abs(rec.imag) < 1e-9


def test_recover_rejects_bad_inputs():
    u = BallPoint(np.array([0.5 + 0j]))
    v = BallPoint(np.array([0.25 + 0j]))
    with pytest.raises(DomainError):
        recover_inner_product(u, v)  # unequal norms
    with pytest.raises(DomainError):
        recover_inner_product(origin(1), origin(1))  # zero base point


# containers ----------------------------------------------------------

def test_ball_point_validation():
    with pytest.raises(DomainError):
        BallPoint(np.array([1.0 + 0j]))
    with pytest.raises(DomainError):
        BallPoint(np.array([0.8 + 0.8j]))
    p = BallPoint([0.1, 0.2])  # lists coerce
    assert p.dim == 2 and p.vector.dtype == complex


def test_tangent_vector_structure():
    X = TangentVector.real(np.array([1.0 + 2j, 0.5 + 0j]))
    assert np.array_equal(X.hol, X.antihol)
    JJX = X.apply_J().apply_J()
    assert np.allclose(JJX.hol, -X.hol)
    with pytest.raises(DomainError):
        TangentVector(np.zeros(2), np.zeros(3))
