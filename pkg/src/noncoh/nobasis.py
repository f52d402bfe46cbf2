"""Non-orthogonal qubit bases and their incoherent (free) states.

For a basis ``{|b1>, |b2>}`` the free states are the mixtures
``p|b1><b1| + (1-p)|b2><b2|``, which in Bloch space form the chord
segment between the two unit vectors ``v1`` and ``v2``.  A mixture is
labelled by the weight ``p`` of ``b1`` throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import qstate
from .exceptions import DegenerateBasisError

DEGENERACY_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class NOBasis:
    """An ordered pair of normalized, linearly independent qubit states.

    Use :func:`make_basis` to construct one.  ``half_angle`` is half the
    Bloch-sphere angle between the vectors, so ``overlap == cos(half_angle)``.
    """

    b1: np.ndarray
    b2: np.ndarray
    overlap: float
    half_angle: float
    v1: np.ndarray = field(repr=False)
    v2: np.ndarray = field(repr=False)

    @property
    def midpoint(self):
        return 0.5 * (self.v1 + self.v2)

    @property
    def is_orthogonal(self):
        return self.overlap < 1e-12

    def projectors(self):
        return qstate.dm(self.b1), qstate.dm(self.b2)

    def same_geometry(self, other, atol=1e-10):
        """Equality on Bloch vectors; global phases of the kets are ignored."""
        return bool(
            np.allclose(self.v1, other.v1, atol=atol)
            and np.allclose(self.v2, other.v2, atol=atol)
        )


class NoisPoint(NamedTuple):
    weight: float
    state: np.ndarray


class ChordSegment(NamedTuple):
    end_a: np.ndarray
    end_b: np.ndarray
    midpoint: np.ndarray


def make_basis(b1, b2):
    """Build a :class:`NOBasis` from two kets.

    Raises
    ------
    DegenerateBasisError
        If ``|<b1|b2>| >= 1 - 1e-9``.
    """
    b1 = qstate.check_ket(b1, atol=1e-10)
    b2 = qstate.check_ket(b2, atol=1e-10)
    b1 = b1 / np.linalg.norm(b1)
    b2 = b2 / np.linalg.norm(b2)
    overlap = float(abs(np.vdot(b1, b2)))
    if overlap >= 1.0 - DEGENERACY_TOL:
        raise DegenerateBasisError(
            f"basis vectors are parallel (overlap {overlap:.12g})"
        )
    return NOBasis(
        b1=b1,
        b2=b2,
        overlap=overlap,
        half_angle=float(np.arccos(overlap)),
        v1=qstate.bloch_from_ket(b1),
        v2=qstate.bloch_from_ket(b2),
    )


def basis_from_bloch(v1, v2):
    """Basis whose kets have the given unit Bloch vectors."""
    return make_basis(qstate.ket_from_bloch(v1), qstate.ket_from_bloch(v2))


def computational_basis():
    return make_basis(qstate.KET0, qstate.KET1)


def chord(basis):
    return ChordSegment(basis.v1.copy(), basis.v2.copy(), basis.midpoint)


def nois_state(basis, p):
    """The free state ``p|b1><b1| + (1-p)|b2><b2|``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {p!r}")
    p1, p2 = basis.projectors()
    return NoisPoint(float(p), p * p1 + (1.0 - p) * p2)


def nois_bloch(basis, p):
    p = np.asarray(p, dtype=float)
    return p[..., None] * basis.v1 + (1.0 - p[..., None]) * basis.v2


def segment_projection(points, a, b):
    """Nearest points on segment ``[a, b]`` to ``points``.

    Returns ``(t, dist)`` where the nearest point is ``a + t (b - a)`` with
    ``t`` clamped to ``[0, 1]``.  Vectorized over the leading axes of
    ``points``.
    """
    points = np.asarray(points, dtype=float)
    d = b - a
    t = np.clip(((points - a) @ d) / (d @ d), 0.0, 1.0)
    foot = a + t[..., None] * d
    return t, np.linalg.norm(points - foot, axis=-1)


def nearest_weight_bloch(points, basis):
    """Vectorized nearest-free-state search on Bloch vectors.

    Returns ``(p, dist)`` with ``p`` the weight of ``b1`` and ``dist`` the
    Euclidean Bloch distance.
    """
    return segment_projection(points, basis.v2, basis.v1)


def nearest_nois(rho, basis):
    """Closest free state to ``rho`` in Bloch space.

    Returns
    -------
    (NoisPoint, float)
        The nearest free state and its Euclidean Bloch distance to ``rho``.
    """
    v = qstate.bloch_from_density(rho)
    p, dist = nearest_weight_bloch(v, basis)
    return nois_state(basis, float(p)), float(dist)


def is_nois(rho, basis, tol=MEMBERSHIP_TOL) -> Optional[float]:
    """Weight ``p`` if ``rho`` is a free state of ``basis`` (within ``tol``), else ``None``."""
    point, dist = nearest_nois(rho, basis)
    return point.weight if dist <= tol else None
