"""Qubit linear algebra: kets, density matrices, Bloch vectors, entropies and sampling.

States are plain numpy arrays:

* pure qubit: complex array of shape ``(2,)``
* density matrix: complex array of shape ``(2, 2)``
* Bloch vector: real array of shape ``(3,)``
* two-qubit pure state: complex array of shape ``(4,)`` over ``|00>, |01>, |10>, |11>``

Most functions also accept stacks (leading batch axes) where that comes for free.
All entropies are in bits.
"""

from __future__ import annotations

import numpy as np

from .exceptions import InvalidStateError

ATOL = 1e-12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SX, SY, SZ])

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


# ---------------------------------------------------------------------------
# construction and validation


def ket(amp0, amp1, normalize=False):
    """Build a pure qubit ``amp0|0> + amp1|1>``.

    With ``normalize=False`` the amplitudes must already have unit norm.
    """
    psi = np.array([amp0, amp1], dtype=complex)
    norm = np.linalg.norm(psi)
    if normalize:
        if norm < ATOL:
            raise InvalidStateError("cannot normalize the zero vector")
        return psi / norm
    if abs(norm - 1.0) > ATOL:
        raise InvalidStateError(f"ket has norm {norm!r}, expected 1")
    return psi


def check_ket(psi, atol=ATOL):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1:] != (2,):
        raise InvalidStateError(f"expected a qubit ket, got shape {psi.shape}")
    norms = np.linalg.norm(psi, axis=-1)
    if np.any(np.abs(norms - 1.0) > atol):
        raise InvalidStateError("ket is not normalized")
    return psi


def check_density(rho, atol=ATOL):
    """Validate a (stack of) density matrices and return it as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (2, 2):
        raise InvalidStateError(f"expected 2x2 density matrix, got shape {rho.shape}")
    if np.any(np.abs(rho - np.conj(np.swapaxes(rho, -1, -2))) > atol):
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > atol):
        raise InvalidStateError("density matrix does not have unit trace")
    if np.any(np.linalg.eigvalsh(rho) < -atol):
        raise InvalidStateError("density matrix has a negative eigenvalue")
    return rho


def is_density(rho, atol=ATOL):
    try:
        check_density(rho, atol)
    except InvalidStateError:
        return False
    return True


def dm(psi):
    """Projector |psi><psi| for a ket (or stack of kets)."""
    psi = np.asarray(psi, dtype=complex)
    return psi[..., :, None] * np.conj(psi[..., None, :])


# ---------------------------------------------------------------------------
# Bloch representation


def bloch_from_density(rho):
    """Bloch vector ``(2 Re rho01, 2 Im rho10, rho00 - rho11)``."""
    rho = np.asarray(rho, dtype=complex)
    x = 2.0 * rho[..., 0, 1].real
    y = 2.0 * rho[..., 1, 0].imag
    z = (rho[..., 0, 0] - rho[..., 1, 1]).real
    return np.stack([x, y, z], axis=-1)


def density_from_bloch(v, atol=1e-9):
    """Density matrix ``(I + v . sigma) / 2``.

    Raises
    ------
    InvalidStateError
        If ``|v| > 1 + atol``.
    """
    v = np.asarray(v, dtype=float)
    if np.any(np.linalg.norm(v, axis=-1) > 1.0 + atol):
        raise InvalidStateError("Bloch vector lies outside the unit ball")
    return 0.5 * (I2 + np.einsum("...k,kij->...ij", v.astype(complex), PAULIS))


def bloch_from_ket(psi):
    psi = np.asarray(psi, dtype=complex)
    a, b = psi[..., 0], psi[..., 1]
    cross = np.conj(a) * b
    return np.stack(
        [2 * cross.real, 2 * cross.imag, np.abs(a) ** 2 - np.abs(b) ** 2], axis=-1
    )


def ket_from_bloch(v):
    """Pure state with unit Bloch vector ``v`` (global phase: real ``amp0 >= 0``)."""
    v = np.asarray(v, dtype=float)
    r = np.linalg.norm(v, axis=-1)
    if np.any(np.abs(r - 1.0) > 1e-9):
        raise InvalidStateError("pure state needs a unit Bloch vector")
    v = v / r[..., None]
    theta = np.arccos(np.clip(v[..., 2], -1.0, 1.0))
    phi = np.arctan2(v[..., 1], v[..., 0])
    return np.stack(
        [np.cos(theta / 2).astype(complex), np.exp(1j * phi) * np.sin(theta / 2)],
        axis=-1,
    )


def ket_from_angles(theta, phi):
    """``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``."""
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_radius(rho):
    return np.linalg.norm(bloch_from_density(rho), axis=-1)


# ---------------------------------------------------------------------------
# scalar functionals


def purity(rho):
    """tr(rho^2) = (1 + r^2) / 2."""
    rho = np.asarray(rho, dtype=complex)
    return np.einsum("...ij,...ji->...", rho, rho).real


def trace_distance(a, b):
    """Half the trace norm of ``a - b``; for qubits, half the Bloch distance."""
    diff = np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex)
    return 0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff)), axis=-1)


def _xlog2x(p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p >= 1e-15
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def von_neumann_entropy(rho):
    """S(rho) = -sum_i l_i log2 l_i, with eigenvalues clamped at zero."""
    lam = np.clip(np.linalg.eigvalsh(np.asarray(rho, dtype=complex)), 0.0, None)
    # abs() also turns -0.0 into 0.0
    return np.abs(np.sum(_xlog2x(lam), axis=-1))


def binary_entropy(p):
    """H2(p) in bits."""
    p = np.asarray(p, dtype=float)
    return -(_xlog2x(p) + _xlog2x(1.0 - p))


def relative_entropy(rho, sigma, support_tol=1e-12, overlap_tol=1e-10):
    """Quantum relative entropy S(rho || sigma) in bits.

    Returns ``inf`` when the support of ``rho`` is not contained in the
    support of ``sigma``, i.e. when some eigenvector of ``sigma`` with
    eigenvalue below ``support_tol`` carries weight above ``overlap_tol``
    in ``rho``.
    """
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    lam_s, vec_s = np.linalg.eigh(sigma)
    # <v_j| rho |v_j> for every eigenvector v_j of sigma
    weights = np.einsum("...ij,...ik,...kj->...j", np.conj(vec_s), rho, vec_s).real
    small = lam_s < support_tol
    infinite = np.any(small & (weights > overlap_tol), axis=-1)
    log_s = np.where(small, 0.0, np.log2(np.where(small, 1.0, lam_s)))
    cross = np.sum(weights * log_s, axis=-1)
    lam_r = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    neg_entropy = np.sum(_xlog2x(lam_r), axis=-1)
    out = np.maximum(neg_entropy - cross, 0.0)
    return np.where(infinite, np.inf, out)[()]


# ---------------------------------------------------------------------------
# two-qubit states


def partial_trace(psi, keep=0):
    """Reduced density matrix of a two-qubit pure state.

    Parameters
    ----------
    psi : array_like, shape (..., 4)
        Joint state over ``|00>, |01>, |10>, |11>`` (first factor is the
        left tensor slot).
    keep : {0, 1}
        Subsystem to keep.
    """
    if keep not in (0, 1):
        raise ValueError(f"keep must be 0 or 1, got {keep!r}")
    psi = np.asarray(psi, dtype=complex)
    m = psi.reshape(psi.shape[:-1] + (2, 2))
    if keep == 0:
        return np.einsum("...ia,...ja->...ij", m, np.conj(m))
    return np.einsum("...ai,...aj->...ij", m, np.conj(m))


def kron_ket(a, b):
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


# ---------------------------------------------------------------------------
# random states


def make_rng(seed, *keys):
    """Deterministic generator for ``seed`` and an optional stream path.

    ``make_rng(seed, worker)`` gives each parallel worker an independent,
    reproducible stream.
    """
    entropy = [int(seed)] + [int(k) for k in keys]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def _ginibre(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def haar_pure_qubit(rng, size=None):
    """Haar-random pure qubit(s): a normalized pair of complex Gaussians."""
    shape = (2,) if size is None else (size, 2)
    z = _ginibre(rng, shape)
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def haar_unitary(rng, size=None):
    """Haar-random 2x2 unitary via phase-corrected QR."""
    shape = (2, 2) if size is None else (size, 2, 2)
    q, r = np.linalg.qr(_ginibre(rng, shape))
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def random_mixed_qubit(rng, size=None, measure="hilbert-schmidt"):
    """Random mixed qubit(s).

    ``measure="hilbert-schmidt"`` normalizes ``G G^dag`` for a 2x2 Ginibre
    matrix ``G`` (uniform in the Bloch ball). ``measure="bures"`` uses
    ``(1 + U) G G^dag (1 + U)^dag`` with ``U`` Haar-random.
    """
    shape = (2, 2) if size is None else (size, 2, 2)
    g = _ginibre(rng, shape)
    if measure == "bures":
        g = (I2 + haar_unitary(rng, size)) @ g
    elif measure != "hilbert-schmidt":
        raise ValueError(f"unknown measure {measure!r}")
    w = g @ np.conj(np.swapaxes(g, -1, -2))
    tr = np.trace(w, axis1=-2, axis2=-1).real
    w = w / tr[..., None, None]
    # exact hermiticity
    return 0.5 * (w + np.conj(np.swapaxes(w, -1, -2)))


def uniform_ball(rng, size):
    """Bloch vectors uniform in volume: isotropic direction, radius ~ U^(1/3)."""
    d = rng.standard_normal((size, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * np.cbrt(rng.random(size))[:, None]


def uniform_shell(rng, size, radius):
    """Bloch vectors uniform in solid angle on a sphere of the given radius."""
    d = rng.standard_normal((size, 3))
    return radius * d / np.linalg.norm(d, axis=1, keepdims=True)
