import numpy as np
import pytest

from noncoh import qstate
from noncoh.exceptions import DegenerateBasisError
from noncoh.nobasis import (
    basis_from_bloch,
    chord,
    computational_basis,
    is_nois,
    make_basis,
    nearest_nois,
    nearest_weight_bloch,
    nois_bloch,
    nois_state,
)

from conftest import random_bases

P_GRID = np.linspace(0.0, 1.0, 1001)


def grid_distance(points, basis):
    # oracle: brute-force scan over 1001 chord points
    chord_pts = P_GRID[:, None] * basis.v1 + (1 - P_GRID[:, None]) * basis.v2
    d = np.linalg.norm(points[:, None, :] - chord_pts[None, :, :], axis=-1)
    k = np.argmin(d, axis=1)
    return P_GRID[k], d[np.arange(len(points)), k]


def test_basis_examples():
    b = computational_basis()
    assert np.isclose(b.overlap, 0.0)
    assert np.isclose(b.half_angle, np.pi / 2)
    b = make_basis(qstate.KET0, qstate.KET_PLUS)
    assert np.isclose(b.overlap, 1 / np.sqrt(2))
    assert np.isclose(b.half_angle, np.pi / 4)
    with pytest.raises(DegenerateBasisError):
        make_basis(qstate.KET0, qstate.KET0)
    with pytest.raises(DegenerateBasisError):
        make_basis(qstate.KET0, 1j * qstate.KET0)


def test_basis_invariants(rng):
    for b in random_bases(rng, 200):
        assert np.isclose(b.overlap, np.cos(b.half_angle), atol=1e-12)
        bloch_angle = np.arccos(np.clip(b.v1 @ b.v2, -1, 1))
        assert np.isclose(bloch_angle, 2 * b.half_angle, atol=1e-10)
        seg = chord(b)
        assert np.isclose(np.linalg.norm(seg.end_a), 1.0)
        assert np.isclose(np.linalg.norm(seg.end_b), 1.0)
        assert np.isclose(np.linalg.norm(seg.midpoint), b.overlap, atol=1e-10)


def test_nois_state_examples():
    b = make_basis(qstate.KET0, qstate.KET_PLUS)
    assert np.allclose(nois_state(b, 1.0).state, qstate.dm(qstate.KET0))
    assert np.allclose(qstate.bloch_from_density(nois_state(b, 0.5).state), [0.5, 0, 0.5])
    assert np.allclose(nois_state(computational_basis(), 0.5).state, qstate.I2 / 2)
    p1, p2 = b.projectors()
    assert np.allclose(nois_state(b, 0.3).state, 0.3 * p1 + 0.7 * p2, atol=1e-12)
    with pytest.raises(ValueError):
        nois_state(b, 1.2)


def test_is_nois_examples():
    b = make_basis(qstate.KET0, qstate.KET_PLUS)
    assert np.isclose(is_nois(nois_state(b, 0.3).state, b), 0.3, atol=1e-10)
    assert is_nois(qstate.I2 / 2, b, tol=1e-9) is None
    assert np.isclose(is_nois(qstate.I2 / 2, computational_basis()), 0.5)


def test_nearest_nois_examples():
    b = make_basis(qstate.KET0, qstate.KET_PLUS)
    point, dist = nearest_nois(qstate.dm(qstate.KET1), b)
    assert np.isclose(point.weight, 0.0)
    assert np.allclose(point.state, qstate.dm(qstate.KET_PLUS))
    assert np.isclose(dist, np.sqrt(2))
    _, grid_d = grid_distance(np.array([[0, 0, -1.0]]), b)
    assert np.isclose(dist, grid_d[0])
    point, dist = nearest_nois(qstate.I2 / 2, b)
    assert np.isclose(point.weight, 0.5)
    assert np.isclose(dist, 1 / np.sqrt(2))
    _, dist = nearest_nois(nois_state(b, 0.8).state, b)
    assert np.isclose(dist, 0.0, atol=1e-12)


def test_nearest_nois_against_grid(rng):
    bases = random_bases(rng, 100)
    for b in bases:
        pts = qstate.uniform_ball(rng, 100)
        p, d = nearest_weight_bloch(pts, b)
        p_grid, d_grid = grid_distance(pts, b)
        # never beaten by the grid, and within grid resolution of it
        assert np.all(d <= d_grid + 1e-12)
        step = np.linalg.norm(b.v1 - b.v2) / (len(P_GRID) - 1)
        assert np.all(d_grid - d <= step)


def test_minimizer_unique(rng):
    for b in random_bases(rng, 50):
        pts = qstate.uniform_ball(rng, 50)
        p, d = nearest_weight_bloch(pts, b)
        for delta in (-1e-3, 1e-3):
            q = p + delta
            ok = (q >= 0) & (q <= 1)
            moved = np.linalg.norm(pts - nois_bloch(b, q), axis=1)
            assert np.all(moved[ok] > d[ok])


def test_basis_from_bloch_round_trip(rng):
    for b in random_bases(rng, 20):
        c = basis_from_bloch(b.v1, b.v2)
        assert np.allclose(c.v1, b.v1) and np.allclose(c.v2, b.v2)
        assert np.isclose(c.overlap, b.overlap)
