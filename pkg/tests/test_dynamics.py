import cmath
import math

import numpy as np
import pytest
import scipy.linalg

from hilbertball.dynamics import (
    DiscGenerator,
    HamiltonianGenerator,
    alpha,
    disc_evolve_closed,
    evolve_exp,
    schrodinger_evolve,
    trajectory,
)
from hilbertball.errors import DomainError
from hilbertball.geometry import BallPoint, distance, origin
from hilbertball.isometries import ExtendedOperator, lie_defect
from hilbertball.numerics import op_norm

from conftest import cgauss, random_point


def lie_element(rng, dim):
    G = cgauss(rng, (dim, dim))
    B = G - G.conj().T
    u = cgauss(rng, dim)
    X = ExtendedOperator.from_blocks(B, u, u, 1j * float(rng.standard_normal()))
    n = op_norm(X.matrix)
    return (1.0 / n) * X if n > 1.0 else X


# ---------------------------------------------------------------------
# oracle: every closed-form branch is checked against the exponential
# route, which shares no code with the quotient formulas.
# ---------------------------------------------------------------------

def disc_generators():
    return [
        DiscGenerator(0.3, 0.8 + 0.2j),   # alpha > 0
        DiscGenerator(1.1, 0.4 - 0.3j),   # alpha < 0
        DiscGenerator(1.0, 1.0j),         # alpha = 0
        DiscGenerator(0.7, 0.0),          # pure rotation
    ]


def test_closed_form_matches_exponential(rng):
    worst = 0.0
    for g in disc_generators():
        for _ in range(15):
            z = 0.85 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
            t = float(rng.uniform(-2.5, 2.5))
            closed = disc_evolve_closed(g, z, t)
            viaexp = evolve_exp(g.extended(), BallPoint([z]), t).vector[0]
            worst = max(worst, abs(closed - viaexp))
    assert worst < 1e-9


def test_closed_form_frozen_values():
    z = 0.25 - 0.35j
    got = disc_evolve_closed(DiscGenerator(0.3, 0.8 + 0.2j), z, 1.7)
    assert abs(got - (0.8161518399524931 + 0.468439698387984j)) < 1e-12
    got = disc_evolve_closed(DiscGenerator(1.1, 0.4 - 0.3j), z, 2.3)
    assert abs(got - (-0.3762519009653822 + 0.3117225688957735j)) < 1e-12
    got = disc_evolve_closed(DiscGenerator(1.0, 1.0j), z, 0.9)
    assert abs(got - (-0.2794766118108194 + 0.6723924258581434j)) < 1e-12


def test_rotation_branch_exact():
    g = DiscGenerator(math.pi / 4.0, 0.0)
    got = disc_evolve_closed(g, 0.3, 1.0)
    assert abs(got - 0.3j) < 1e-12


def test_alpha_signs():
    assert alpha(DiscGenerator(0.3, 0.8 + 0.2j)) > 0.0
    assert alpha(DiscGenerator(1.1, 0.4 - 0.3j)) < 0.0
    assert alpha(DiscGenerator(1.0, 1.0j)) == 0.0


def test_tangent_pole_fallback():
    g = DiscGenerator(1.0, 0.1)
    s = math.sqrt(-alpha(g))
    t_pole = math.pi / (2.0 * s)
    z = 0.2 + 0.1j
    closed = disc_evolve_closed(g, z, t_pole)
    viaexp = evolve_exp(g.extended(), BallPoint([z]), t_pole).vector[0]
    assert abs(closed - viaexp) < 1e-9
    assert abs(closed) < 1.0


def test_disc_flow_group_law(rng):
    worst = 0.0
    for g in disc_generators():
        for _ in range(10):
            z = 0.7 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
            t, s = float(rng.uniform(-1.5, 1.5)), float(rng.uniform(-1.5, 1.5))
            once = disc_evolve_closed(g, z, t + s)
            twice = disc_evolve_closed(g, disc_evolve_closed(g, z, t), s)
            worst = max(worst, abs(once - twice))
    assert worst < 1e-9


def test_disc_flow_keeps_disc(rng):
    for g in disc_generators():
        for _ in range(25):
            z = 0.97 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
            assert abs(disc_evolve_closed(g, z, float(rng.uniform(-4, 4)))) < 1.0


def test_disc_rejects_boundary():
    with pytest.raises(DomainError):
        disc_evolve_closed(DiscGenerator(0.5, 0.1), 1.0 + 0j, 0.3)


def test_generators_sit_in_lie_algebra(rng):
    for g in disc_generators():
        assert lie_defect(g.extended()) < 1e-13
    H = cgauss(rng, (3, 3))
    H = 0.5 * (H + H.conj().T)
    gen = HamiltonianGenerator(H, a=0.4)
    assert lie_defect(gen.extended()) < 1e-13


def test_evolve_exp_rejects_non_generator(rng):
    G = cgauss(rng, (3, 3))
    bad = ExtendedOperator.from_blocks(G + G.conj().T, cgauss(rng, 3), cgauss(rng, 3), 1.0)
    with pytest.raises(DomainError):
        evolve_exp(bad, random_point(rng, 3), 0.5)


def test_exp_flow_preserves_distance(rng):
    worst = 0.0
    for _ in range(20):
        X = lie_element(rng, 3)
        t = float(rng.uniform(-1.5, 1.5))
        u, v = random_point(rng, 3, 0.8), random_point(rng, 3, 0.8)
        du = distance(evolve_exp(X, u, t), evolve_exp(X, v, t))
        worst = max(worst, abs(du - distance(u, v)))
    assert worst < 1e-9


# quantum (linear) evolution ------------------------------------------

def test_schrodinger_matches_scipy():
    H = np.array([[1.0, 0.5 - 0.25j], [0.5 + 0.25j, -0.3]])
    gen = HamiltonianGenerator(H)
    z = BallPoint(np.array([0.3 + 0.1j, -0.2 + 0.25j]))
    got = schrodinger_evolve(gen, z, 0.7)
    oracle = scipy.linalg.expm(-0.7j * H) @ z.vector
    assert np.linalg.norm(got.vector - oracle) < 1e-12


def test_schrodinger_preserves_norm(rng):
    H = cgauss(rng, (4, 4))
    H = 0.5 * (H + H.conj().T)
    gen = HamiltonianGenerator(H)
    z = random_point(rng, 4, 0.9)
    for t in (0.1, 1.0, 7.5):
        out = schrodinger_evolve(gen, z, t)
        assert abs(out.norm() - z.norm()) < 1e-13


def test_schrodinger_residual_small():
    # central difference of the flow solves the equation of motion
    H = np.array([[0.6, 0.2 + 0.4j], [0.2 - 0.4j, -0.9]])
    gen = HamiltonianGenerator(H)
    z = BallPoint(np.array([0.4 + 0j, 0.1 - 0.3j]))
    t, dt = 0.8, 1e-4
    plus = schrodinger_evolve(gen, z, t + dt).vector
    minus = schrodinger_evolve(gen, z, t - dt).vector
    mid = schrodinger_evolve(gen, z, t).vector
    residual = (plus - minus) / (2.0 * dt) + 1j * (H @ mid)
    assert np.linalg.norm(residual) < 1e-6


def test_hamiltonian_generator_validation(rng):
    with pytest.raises(DomainError):
        HamiltonianGenerator(cgauss(rng, (3, 3)))  # not self-adjoint
    with pytest.raises(DomainError):
        HamiltonianGenerator(np.zeros((2, 3)))  # not square


def test_schrodinger_dimension_check(rng):
    H = np.eye(3)
    with pytest.raises(DomainError):
        schrodinger_evolve(HamiltonianGenerator(H), random_point(rng, 2), 0.1)


# trajectories --------------------------------------------------------

def test_trajectory_grid_and_interior():
    g = DiscGenerator(0.4, 0.3 + 0.1j)
    samples = trajectory(g, BallPoint([0.2 + 0.1j]), 1.0, 0.25)
    assert len(samples) == 5
    for i, (t, p) in enumerate(samples):
        assert t == i * 0.25
        assert p.norm() < 1.0
    assert np.allclose(samples[0][1].vector, [0.2 + 0.1j])


def test_trajectory_matches_pointwise_flow():
    g = DiscGenerator(0.9, 0.5j)
    z0 = BallPoint([0.3 - 0.2j])
    for t, p in trajectory(g, z0, 2.0, 0.5):
        direct = disc_evolve_closed(g, z0.vector[0], t)
        assert abs(p.vector[0] - direct) < 1e-9


def test_trajectory_dispatches_all_generator_kinds(rng):
    H = cgauss(rng, (3, 3))
    H = 0.5 * (H + H.conj().T)
    z = random_point(rng, 3, 0.5)
    for gen in (HamiltonianGenerator(H), lie_element(rng, 3)):
        samples = trajectory(gen, z, 0.6, 0.2)
        assert len(samples) == 4
        assert all(p.norm() < 1.0 for _, p in samples)


def test_trajectory_validation(rng):
    g = DiscGenerator(0.1, 0.2)
    z = BallPoint([0.1 + 0j])
    with pytest.raises(DomainError):
        trajectory(g, z, 1.0, 0.0)
    with pytest.raises(DomainError):
        trajectory(g, z, 0.05, 0.1)  # horizon shorter than one step
    with pytest.raises(DomainError):
        trajectory(g, random_point(rng, 2, 0.5), 1.0, 0.1)  # disc needs dim 1
