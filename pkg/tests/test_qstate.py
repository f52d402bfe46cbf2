import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from noncoh import qstate
from noncoh.exceptions import InvalidStateError


def eig_trace_distance(a, b):
    # oracle: 0.5 * sum |eigenvalues| of the difference
    w = np.linalg.eigvals(a - b)
    return 0.5 * np.sum(np.abs(w))


def test_bloch_poles_and_center():
    assert np.allclose(qstate.bloch_from_density(qstate.I2 / 2), [0, 0, 0])
    assert np.allclose(qstate.bloch_from_density(qstate.dm(qstate.KET0)), [0, 0, 1])
    assert np.allclose(qstate.bloch_from_density(qstate.dm(qstate.KET_PLUS)), [1, 0, 0])
    # y component: |+i> sits on +y
    plus_i = np.array([1, 1j]) / np.sqrt(2)
    assert np.allclose(qstate.bloch_from_density(qstate.dm(plus_i)), [0, 1, 0])


def test_density_from_bloch_examples():
    assert np.allclose(qstate.density_from_bloch([0, 0, 0]), qstate.I2 / 2)
    assert np.allclose(qstate.density_from_bloch([0, 0, -1]), qstate.dm(qstate.KET1))
    rho = qstate.density_from_bloch([1 / np.sqrt(2), 0, 1 / np.sqrt(2)])
    assert np.isclose(np.trace(rho @ rho).real, 1.0, atol=1e-12)
    # direction of |0> + |+>
    psi = qstate.ket(*(qstate.KET0 + qstate.KET_PLUS), normalize=True)
    assert np.isclose(abs(np.vdot(psi, rho @ psi)), 1.0, atol=1e-12)


def test_density_from_bloch_rejects_outside_ball():
    with pytest.raises(InvalidStateError):
        qstate.density_from_bloch([0, 0, 1.01])


def test_check_density_rejects_bad_input():
    with pytest.raises(InvalidStateError):
        qstate.check_density(np.diag([0.7, 0.7]))
    with pytest.raises(InvalidStateError):
        qstate.check_density(np.diag([1.2, -0.2]))
    with pytest.raises(InvalidStateError):
        qstate.check_density(np.array([[0.5, 0.5], [0.0, 0.5]]))


def test_trace_distance_examples():
    rho = qstate.density_from_bloch([0.1, -0.2, 0.3])
    assert np.isclose(qstate.trace_distance(rho, rho), 0.0)
    assert np.isclose(qstate.trace_distance(qstate.dm(qstate.KET0), qstate.dm(qstate.KET1)), 1.0)
    d = qstate.trace_distance(qstate.dm(qstate.KET0), qstate.dm(qstate.KET_PLUS))
    assert np.isclose(d, 0.7071068, atol=1e-7)
    assert np.isclose(d, eig_trace_distance(qstate.dm(qstate.KET0), qstate.dm(qstate.KET_PLUS)))


def test_entropy_examples():
    assert np.isclose(qstate.von_neumann_entropy(qstate.dm(qstate.KET_PLUS)), 0.0, atol=1e-12)
    assert np.isclose(qstate.von_neumann_entropy(qstate.I2 / 2), 1.0)
    rho = np.diag([0.9, 0.1]).astype(complex)
    expected = -0.9 * np.log2(0.9) - 0.1 * np.log2(0.1)
    assert np.isclose(qstate.von_neumann_entropy(rho), expected, atol=1e-12)
    assert np.isclose(expected, 0.4689956, atol=1e-7)


def test_relative_entropy_examples():
    rho = qstate.density_from_bloch([0.3, 0.1, -0.4])
    assert np.isclose(qstate.relative_entropy(rho, rho), 0.0, atol=1e-12)
    assert np.isclose(qstate.relative_entropy(qstate.dm(qstate.KET_PLUS), qstate.I2 / 2), 1.0)
    assert qstate.relative_entropy(qstate.dm(qstate.KET0), qstate.dm(qstate.KET1)) == np.inf


def test_relative_entropy_matches_logm(rng):
    from scipy.linalg import logm

    for _ in range(50):
        rho, sigma = qstate.random_mixed_qubit(rng, 2)
        ref = np.trace(rho @ (logm(rho) - logm(sigma))).real / np.log(2)
        assert np.isclose(qstate.relative_entropy(rho, sigma), ref, atol=1e-9)


def test_purity_examples():
    assert np.isclose(qstate.purity(qstate.I2 / 2), 0.5)
    assert np.isclose(qstate.purity(qstate.dm(qstate.ket_from_angles(1.1, 0.4))), 1.0)
    assert np.isclose(qstate.purity(qstate.density_from_bloch([0, 0.5, 0])), 0.625)


def test_haar_pure_statistics(rng):
    psi = qstate.haar_pure_qubit(rng, 10**5)
    assert np.allclose(np.linalg.norm(psi, axis=1), 1.0, atol=1e-12)
    v = qstate.bloch_from_ket(psi)
    assert np.linalg.norm(v.mean(axis=0)) <= 0.02


def test_samplers_are_deterministic():
    a = qstate.haar_pure_qubit(qstate.make_rng(5), 100)
    b = qstate.haar_pure_qubit(qstate.make_rng(5), 100)
    assert np.array_equal(a, b)
    c = qstate.random_mixed_qubit(qstate.make_rng(5, 1), 100)
    d = qstate.random_mixed_qubit(qstate.make_rng(5, 1), 100)
    assert np.array_equal(c, d)
    assert not np.array_equal(qstate.haar_pure_qubit(qstate.make_rng(5, 2), 100), a)


def test_hilbert_schmidt_states_valid(rng):
    rhos = qstate.random_mixed_qubit(rng, 10**5)
    herm = np.abs(rhos - np.conj(np.swapaxes(rhos, 1, 2))).max()
    assert herm < 1e-12
    assert np.allclose(np.trace(rhos, axis1=1, axis2=2), 1.0, atol=1e-12)
    assert np.linalg.eigvalsh(rhos).min() > -1e-12


def test_hilbert_schmidt_mean_purity_vs_rejection_sampler(rng):
    rhos = qstate.random_mixed_qubit(rng, 10**5)
    mean_purity = qstate.purity(rhos).mean()
    # independent oracle: uniform density on the Bloch ball by rejection
    cube = rng.uniform(-1, 1, size=(250000, 3))
    ball = cube[np.sum(cube**2, axis=1) <= 1.0]
    oracle = np.mean(0.5 * (1 + np.sum(ball**2, axis=1)))
    assert np.isclose(mean_purity, oracle, atol=0.01)
    # E[r^2] = 3/5 for the uniform ball
    assert np.isclose(mean_purity, 0.8, atol=0.01)


def test_bures_states_valid(rng):
    rhos = qstate.random_mixed_qubit(rng, 1000, measure="bures")
    assert np.linalg.eigvalsh(rhos).min() > -1e-12
    assert np.allclose(np.trace(rhos, axis1=1, axis2=2), 1.0)
    # Bures measure favours purer states than Hilbert-Schmidt
    assert qstate.purity(rhos).mean() > 0.8


def test_partial_trace_examples():
    d = qstate.ket_from_angles(0.7, 2.0)
    assert np.allclose(qstate.partial_trace(qstate.kron_ket(qstate.KET0, d), keep=0), qstate.dm(qstate.KET0))
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(qstate.partial_trace(bell, keep=0), qstate.I2 / 2)
    psi = np.array([np.sqrt(0.3), 0, 0, np.sqrt(0.7)])
    assert np.allclose(qstate.partial_trace(psi, keep=1), np.diag([0.3, 0.7]))
    with pytest.raises(ValueError):
        qstate.partial_trace(bell, keep=2)


def test_partial_trace_ignores_unitary_on_discarded(rng):
    for _ in range(100):
        a, b = qstate.haar_pure_qubit(rng, 2)
        u = qstate.haar_unitary(rng)
        v = qstate.haar_unitary(rng)
        psi = np.kron(u, v) @ qstate.kron_ket(a, b)
        assert np.allclose(qstate.partial_trace(psi, keep=0), qstate.dm(u @ a), atol=1e-12)


def test_round_trip_and_qubit_identities(rng):
    rhos = qstate.random_mixed_qubit(rng, 10**4)
    v = qstate.bloch_from_density(rhos)
    assert np.abs(qstate.density_from_bloch(v) - rhos).max() < 1e-12
    sig = qstate.random_mixed_qubit(rng, 10**4)
    w = qstate.bloch_from_density(sig)
    td = qstate.trace_distance(rhos, sig)
    assert np.allclose(td, 0.5 * np.linalg.norm(v - w, axis=1), atol=1e-12)
    r = np.linalg.norm(v, axis=1)
    closed = qstate.binary_entropy(0.5 * (1 + r))
    assert np.allclose(qstate.von_neumann_entropy(rhos), closed, atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0, 1),
    st.floats(0, np.pi),
    st.floats(0, 2 * np.pi),
)
def test_bloch_round_trip_property(r, theta, phi):
    v = r * np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    rho = qstate.density_from_bloch(v)
    assert qstate.is_density(rho)
    assert np.allclose(qstate.bloch_from_density(rho), v, atol=1e-12)
    assert np.isclose(qstate.purity(rho), 0.5 * (1 + r * r), atol=1e-12)
