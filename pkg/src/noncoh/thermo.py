"""Energy cost of turning the energy eigenbasis into a non-orthogonal basis.

A qubit with levels ``0`` and ``E1`` at temperature ``T`` (``k_B = 1``) has
thermal Bloch vector ``(0, 0, tanh(E1/(2T)))``.  For the basis family

    |b1,2> = cos((pi - alpha)/2)|0> +- e^{i phi} sin((pi - alpha)/2)|1>

the thermal state is the maximally coherent state of its shell, with
coherence ``r + cos(alpha)``.  Creating that basis with a
controlled-rotation-plus-swap unitary on system and ancilla raises the
system energy by ``E1/2 (cos(alpha) + tanh(E1/(2T)))``, i.e. ``E1/2`` per unit
of coherence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from . import qstate
from .channels import forward_bc_unitary
from .comeasure import c_trace
from .nobasis import NOBasis, computational_basis, make_basis

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


@dataclass(frozen=True)
class TwoLevelSystem:
    e1: float = 1.0

    def __post_init__(self):
        if not self.e1 > 0:
            raise ValueError(f"excited-level energy must be positive, got {self.e1!r}")

    @property
    def hamiltonian(self):
        return np.diag([0.0, self.e1]).astype(complex)


@dataclass(frozen=True)
class ThermalState:
    temperature: float
    beta: float
    rho: np.ndarray
    bloch_radius: float


@dataclass(frozen=True)
class CoherenceBasisFamily:
    alpha: float
    phi: float
    basis: NOBasis


def thermal_state(sys, T):
    """Gibbs state ``exp(-H/T)/Z``, diagonal in the computational basis."""
    if not T > 0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    beta = 1.0 / T
    x = beta * sys.e1
    ground = float(expit(x))
    excited = float(expit(-x))
    return ThermalState(
        temperature=float(T),
        beta=beta,
        rho=np.diag([ground, excited]).astype(complex),
        bloch_radius=math.tanh(0.5 * x),
    )


def coherence_basis_family(alpha, phi=0.0):
    """Basis at polar angle ``pi - alpha`` and azimuths ``phi``, ``phi + pi``.

    Its chord is perpendicular to the z-axis and crosses it at
    ``-cos(alpha)``.
    """
    if not 0.0 < alpha <= math.pi / 2 + 1e-15:
        raise ValueError(f"alpha must lie in (0, pi/2], got {alpha!r}")
    half = 0.5 * (math.pi - alpha)
    b1 = np.array([math.cos(half), np.exp(1j * phi) * math.sin(half)])
    b2 = np.array([math.cos(half), -np.exp(1j * phi) * math.sin(half)])
    return CoherenceBasisFamily(float(alpha), float(phi), make_basis(b1, b2))


def thermal_is_nomcms_check(ts, fam, atol=1e-10):
    """True if the thermal state has coherence ``r + cos(alpha)`` in ``fam`` and none in the energy basis."""
    c_fam = c_trace(ts.rho, fam.basis)
    c_energy = c_trace(ts.rho, computational_basis())
    target = ts.bloch_radius + fam.basis.overlap
    return abs(c_fam - target) <= atol and abs(c_energy) <= atol


def rotation_between(a, b):
    """A unitary taking ``|a>`` exactly to ``|b>``: ``|b><a| + |b_perp><a_perp|``."""
    perp = lambda v: np.array([-np.conj(v[1]), np.conj(v[0])])
    return np.outer(b, np.conj(a)) + np.outer(perp(b), np.conj(perp(a)))


def basis_change_unitary(basis):
    """Controlled rotation (system ``|1>`` rotates the ancilla ``b1 -> b2``), then swap.

    With the ancilla prepared in ``|b1>`` this sends
    ``|0>|b1> -> |b1>|0>`` and ``|1>|b1> -> |b2>|1>``.
    """
    u = rotation_between(basis.b1, basis.b2)
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    controlled = np.kron(p0, qstate.I2) + np.kron(p1, u)
    return SWAP @ controlled


def _system_energy(sys, joint):
    h = np.kron(sys.hamiltonian, qstate.I2)
    return float(np.trace(h @ joint).real)


def bc_energy_cost(sys, T, fam, ancilla="b1"):
    """Increase in system energy when the basis change acts on ``rho_T x ancilla``.

    ``ancilla="b1"`` uses :func:`basis_change_unitary` with the ancilla in
    ``|b1>``; ``ancilla="0"`` uses the forward BC unitary of
    :mod:`noncoh.channels` with the ancilla in ``|0>``.  Both give the same
    system state and hence the same cost.
    """
    ts = thermal_state(sys, T)
    basis = fam.basis
    if ancilla == "b1":
        u = basis_change_unitary(basis)
        anc = qstate.dm(basis.b1)
    elif ancilla == "0":
        u = forward_bc_unitary(basis)
        anc = qstate.dm(qstate.KET0)
    else:
        raise ValueError(f"unknown ancilla convention {ancilla!r}")
    before = np.kron(ts.rho, anc)
    after = u @ before @ u.conj().T
    return _system_energy(sys, after) - _system_energy(sys, before)


def energy_cost_closed_form(sys, T, alpha):
    return 0.5 * sys.e1 * (math.cos(alpha) + math.tanh(0.5 * sys.e1 / T))


def linearity_check(sys, T, fam):
    """``(delta, coherence, delta / coherence)``; the ratio equals ``E1/2``."""
    delta = bc_energy_cost(sys, T, fam)
    coh = c_trace(thermal_state(sys, T).rho, fam.basis)
    return delta, coh, delta / coh
