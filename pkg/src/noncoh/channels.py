"""Kraus channels, basis-changing operations and free-operation checks.

A forward basis-changing (BC) operation turns the computational basis into a
target basis ``{|b1>, |b2>}`` deterministically via a system-ancilla unitary.
The reverse operation can only succeed with some probability and is
realized here as unambiguous state discrimination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import qstate
from .comeasure import c_trace
from .exceptions import CompletenessError
from .nobasis import make_basis, nearest_nois, nois_state

COMPLETENESS_TOL = 1e-10


class KrausChannel:
    """A qubit channel ``rho -> sum_i K_i rho K_i^dag``.

    Parameters
    ----------
    kraus_ops : sequence of 2x2 arrays
    check : bool
        Verify ``sum K^dag K = I`` within ``atol``.
    """

    def __init__(self, kraus_ops, check=True, atol=COMPLETENESS_TOL):
        ops = np.asarray(kraus_ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.shape[1:] != (2, 2):
            raise ValueError(f"Kraus operators must be 2x2, got shape {ops.shape}")
        self.kraus_ops = ops
        if check:
            residual = self.completeness_residual()
            if residual > atol:
                raise CompletenessError(
                    f"sum K^dag K deviates from identity by {residual:.3e}"
                )

    def __len__(self):
        return len(self.kraus_ops)

    def __repr__(self):
        return f"KrausChannel({len(self)} operators)"

    def completeness_residual(self):
        total = np.einsum("kji,kjl->il", self.kraus_ops.conj(), self.kraus_ops)
        return float(np.linalg.norm(total - qstate.I2))

    def __call__(self, rho):
        return apply_channel(self, rho)

    def then(self, other):
        """Channel that applies ``self`` first, then ``other``."""
        ops = [b @ a for b in other.kraus_ops for a in self.kraus_ops]
        return KrausChannel(ops, check=False)


def apply_channel(ch, rho):
    rho = np.asarray(rho, dtype=complex)
    return np.einsum("kij,jl,kml->im", ch.kraus_ops, rho, ch.kraus_ops.conj())


def identity_channel():
    return KrausChannel([qstate.I2])


def dephasing_channel():
    """Full dephasing in the computational basis, the canonical MIO."""
    return KrausChannel([np.diag([1, 0]), np.diag([0, 1])])


def amplitude_damping(gamma):
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]])
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]])
    return KrausChannel([k0, k1])


def depolarizing_channel(p):
    """``(1-p) rho + p I/2``, written with the four Paulis."""
    w = [1 - 3 * p / 4, p / 4, p / 4, p / 4]
    ops = [np.sqrt(wi) * P for wi, P in zip(w, [qstate.I2, *qstate.PAULIS])]
    return KrausChannel(ops)


# ---------------------------------------------------------------------------
# channel files


def channel_to_json(ch):
    return {
        "kraus": [
            [[float(z.real), float(z.imag)] for z in K.reshape(-1)]
            for K in ch.kraus_ops
        ]
    }


def channel_from_json(doc, atol=COMPLETENESS_TOL):
    """Parse ``{"kraus": [[[re, im] x 4 (row-major)], ...]}``."""
    try:
        raw = doc["kraus"]
        ops = [
            np.array([complex(re, im) for re, im in entries]).reshape(2, 2)
            for entries in raw
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed channel document: {exc}") from exc
    if not ops:
        raise ValueError("channel document has no Kraus operators")
    return KrausChannel(ops, atol=atol)


def load_channel(path, atol=COMPLETENESS_TOL):
    with open(path, encoding="utf-8") as fh:
        return channel_from_json(json.load(fh), atol=atol)


def save_channel(ch, path):
    Path(path).write_text(json.dumps(channel_to_json(ch), indent=2) + "\n")


# ---------------------------------------------------------------------------
# basis-changing operations


def _gram_schmidt_complete(columns, dim):
    """Extend orthonormal ``columns`` to a full orthonormal basis.

    Candidates are tried in the fixed order e_0, e_1, ..., so the result is
    deterministic.
    """
    basis = [np.asarray(c, dtype=complex) for c in columns]
    for k in range(dim):
        if len(basis) == dim:
            break
        v = np.zeros(dim, dtype=complex)
        v[k] = 1.0
        for u in basis:
            v = v - np.vdot(u, v) * u
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            basis.append(v / norm)
    return basis


def forward_bc_unitary(target):
    """System-ancilla unitary with ``|0>|0> -> |b1>|0>`` and ``|1>|0> -> |b2>|1>``.

    Ordering is system (left) x ancilla (right).  The two unconstrained
    columns (inputs ``|0>|1>`` and ``|1>|1>``) are completed by Gram-Schmidt.
    """
    col_00 = qstate.kron_ket(target.b1, qstate.KET0)
    col_10 = qstate.kron_ket(target.b2, qstate.KET1)
    full = _gram_schmidt_complete([col_00, col_10], 4)
    u = np.zeros((4, 4), dtype=complex)
    u[:, 0] = full[0]
    u[:, 2] = full[1]
    u[:, 1] = full[2]
    u[:, 3] = full[3]
    return u


def dilation_kraus(u, ancilla_in):
    """Kraus operators ``K_a = (I x <a|) U (I x |ancilla_in>)``."""
    t = u.reshape(2, 2, 2, 2)  # [s_out, a_out, s_in, a_in]
    a_in = np.asarray(ancilla_in, dtype=complex)
    return [np.einsum("ijk,k->ij", t[:, a, :, :], a_in) for a in range(2)]


def forward_bc_channel(target):
    """``rho -> tr_A[U (rho x |0><0|) U^dag]`` for :func:`forward_bc_unitary`."""
    return KrausChannel(dilation_kraus(forward_bc_unitary(target), qstate.KET0))


def _dual_vectors(basis):
    """Unit vectors d1 _|_ b2 and d2 _|_ b1 (unambiguous-discrimination directions)."""
    perp = lambda v: np.array([-np.conj(v[1]), np.conj(v[0])])
    d1 = perp(basis.b2)
    d2 = perp(basis.b1)
    return d1, d2


@dataclass
class ReverseBC:
    """Selective reverse BC measurement.

    ``success_ops[i]`` maps ``|b_{i+1}>`` to computational state ``|i>``;
    ``fail_ops`` collects the inconclusive branch.
    """

    success_prob: float
    success_ops: list
    fail_ops: list

    def channel(self):
        return KrausChannel(self.success_ops + self.fail_ops)


def reverse_bc_attempt(basis, priors=(0.5, 0.5)):
    """Probabilistic map ``|b1> -> |0>``, ``|b2> -> |1>`` via optimal unambiguous discrimination.

    With equal priors each basis state is identified with probability
    ``1 - cos(alpha)``.
    """
    eta1, eta2 = priors
    if eta1 <= 0 or eta2 <= 0 or abs(eta1 + eta2 - 1) > 1e-12:
        raise ValueError("priors must be positive and sum to 1")
    c = basis.overlap
    s2 = 1.0 - c * c
    # individual failure probabilities of the optimal (Jaeger-Shimony) measurement
    ratio = np.sqrt(eta1 / eta2)
    if c * ratio > 1.0:
        # b2 is so unlikely that the optimum never identifies it
        q1, q2 = c * c, 1.0
    elif c > ratio:
        q1, q2 = 1.0, c * c
    else:
        q1, q2 = c / ratio, c * ratio
    d1, d2 = _dual_vectors(basis)
    a1 = (1.0 - q1) / s2
    a2 = (1.0 - q2) / s2
    k1 = np.sqrt(a1) * np.outer(qstate.KET0, np.conj(d1))
    k2 = np.sqrt(a2) * np.outer(qstate.KET1, np.conj(d2))
    e_fail = qstate.I2 - k1.conj().T @ k1 - k2.conj().T @ k2
    lam, vec = np.linalg.eigh(0.5 * (e_fail + e_fail.conj().T))
    fail_ops = [
        np.sqrt(max(l, 0.0)) * np.outer(qstate.KET0, np.conj(vec[:, i]))
        for i, l in enumerate(lam)
        if l > 1e-14
    ]
    success = eta1 * (1.0 - q1) + eta2 * (1.0 - q2)
    return ReverseBC(float(success), [k1, k2], fail_ops)


def discriminate_then_prepare(basis, mio=None, priors=(0.5, 0.5)):
    """Unnormalized Kraus set of forward-BC o MIO o reverse-BC (success outcomes only)."""
    mio = dephasing_channel() if mio is None else mio
    rev = reverse_bc_attempt(basis, priors)
    fwd = forward_bc_channel(basis)
    return [f @ m @ r for f in fwd.kraus_ops for m in mio.kraus_ops for r in rev.success_ops]


def discriminate_then_prepare_channel(basis, mio=None, priors=(0.5, 0.5)):
    """Trace-preserving completion of :func:`discriminate_then_prepare`.

    On the inconclusive outcome the system is re-prepared in ``|b1>``, so
    the whole map sends free states to free states.
    """
    ops = discriminate_then_prepare(basis, mio, priors)
    rev = reverse_bc_attempt(basis, priors)
    for f in rev.fail_ops:
        # f = sqrt(l)|0><v|; replace the output |0> with |b1>
        ops.append(np.outer(basis.b1, qstate.KET0.conj()) @ f)
    return KrausChannel(ops)


def apply_selective(ops, rho):
    """Apply a trace-non-increasing Kraus set; returns ``(prob, normalized state)``."""
    out = sum(K @ rho @ K.conj().T for K in ops)
    prob = float(np.trace(out).real)
    if prob <= 0:
        return 0.0, None
    return prob, out / prob


# ---------------------------------------------------------------------------
# free-operation checks


@dataclass
class ChannelVerdict:
    is_member: bool
    witness: Optional[tuple] = None  # (input weight p, output state, distance)

    def __bool__(self):
        return self.is_member


def is_nomio(ch, basis, tol=1e-9):
    """Does ``ch`` map every free state of ``basis`` to a free state?

    A channel is affine, so it suffices to check the two endpoints
    ``|b1>`` and ``|b2>``: the image of the chord is the chord between
    their images, which lies in the (convex) free set iff both do.
    """
    for p in (1.0, 0.0):
        out = apply_channel(ch, nois_state(basis, p).state)
        _, dist = nearest_nois(out, basis)
        if dist > tol:
            return ChannelVerdict(False, (p, out, dist))
    return ChannelVerdict(True)


def is_nio(ch, basis, tol=1e-9):
    """Does every Kraus operator individually preserve the free set?

    Each normalized endpoint image must be free (or annihilated).  The
    normalized image of any mixture is a mixture of the normalized endpoint
    images, so endpoints suffice.
    """
    for K in ch.kraus_ops:
        for p in (1.0, 0.0):
            chi = nois_state(basis, p).state
            out = K @ chi @ K.conj().T
            tr = float(np.trace(out).real)
            if tr < tol:
                continue
            out = out / tr
            _, dist = nearest_nois(out, basis)
            if dist > tol:
                return ChannelVerdict(False, (p, out, dist))
    return ChannelVerdict(True)


# ---------------------------------------------------------------------------
# phase flip and phase damping


def no_phase_flip(basis):
    """The linear map with ``T|b1> = |b1>`` and ``T|b2> = -|b2>``.

    Built as ``B diag(1, -1) B^{-1}`` with ``B = [b1 b2]``; not unitary
    unless the basis is orthogonal.
    """
    b = np.column_stack([basis.b1, basis.b2])
    return b @ np.diag([1.0, -1.0]) @ np.linalg.inv(b)


def apply_to_pure(op, psi):
    out = np.asarray(op, dtype=complex) @ np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(out)
    if norm < 1e-15:
        raise ValueError("operator annihilates the state")
    return out / norm


def phase_flip_demo(basis=None):
    """Flip ``|0> + |+>`` (normalized) in the basis ``{|0>, |+>}``.

    Returns ``(psi_in, psi_out, c_in, c_out)`` with Euclidean trace
    coherences; the output has strictly more coherence.
    """
    basis = make_basis(qstate.KET0, qstate.KET_PLUS) if basis is None else basis
    psi_in = qstate.ket(*(basis.b1 + basis.b2), normalize=True)
    psi_out = apply_to_pure(no_phase_flip(basis), psi_in)
    return (
        psi_in,
        psi_out,
        c_trace(qstate.dm(psi_in), basis),
        c_trace(qstate.dm(psi_out), basis),
    )


def phase_damp_in_basis(weights, basis):
    """Completely dephase in a non-orthogonal basis with known weights: ``q1 B1 + q2 B2``."""
    q1, q2 = weights
    if q1 < 0 or q2 < 0 or abs(q1 + q2 - 1) > 1e-12:
        raise ValueError(f"weights must be a probability pair, got {weights!r}")
    return nois_state(basis, q1).state
