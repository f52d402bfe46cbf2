"""Coherence with respect to a non-orthogonal qubit basis.

Two normalizations of the trace-distance measure are supported:

* ``Convention.EUCLIDEAN`` (default): the full Euclidean Bloch distance to
  the free-state chord.  Closed forms such as ``1 + cos(alpha)`` for the
  maximally coherent pure state hold in this normalization.
* ``Convention.HALF``: half of it, i.e. ``min_chi 0.5 * tr|rho - chi|``.

Mixedness is ``M = 1 - r`` with ``r`` the Bloch radius.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .exceptions import NonUniqueMaximizerError
from .nobasis import nearest_weight_bloch, nois_bloch


class Convention(enum.Enum):
    EUCLIDEAN = "euclidean"
    HALF = "half"

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, cls) else cls(str(value).lower())

    @property
    def scale(self):
        return 1.0 if self is Convention.EUCLIDEAN else 0.5


@dataclass(frozen=True)
class MixednessReport:
    bloch_radius: float
    linear_mixedness: float
    entropy: float
    purity: float


def mixedness_report(rho):
    r = float(qstate.bloch_radius(rho))
    return MixednessReport(
        bloch_radius=r,
        linear_mixedness=1.0 - r,
        entropy=float(qstate.von_neumann_entropy(rho)),
        purity=float(qstate.purity(rho)),
    )


# ---------------------------------------------------------------------------
# trace-distance coherence


def c_trace_bloch(points, basis, convention=Convention.EUCLIDEAN):
    """Vectorized trace coherence for Bloch vectors of shape ``(..., 3)``."""
    _, dist = nearest_weight_bloch(points, basis)
    return Convention.coerce(convention).scale * dist


def c_trace(rho, basis, convention=Convention.EUCLIDEAN):
    """Distance from ``rho`` to the nearest free state of ``basis``."""
    return float(c_trace_bloch(qstate.bloch_from_density(rho), basis, convention))


# ---------------------------------------------------------------------------
# relative-entropy coherence

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_LN2 = math.log(2.0)


def _rel_entropy_to_chord(r_vec, neg_entropy, basis, p):
    """S(rho || chi(p)) in bits, closed form for qubits.

    ``r_vec`` is the Bloch vector of rho and ``neg_entropy = -S(rho)``.
    Valid for interior ``p`` (``chi(p)`` full rank).
    """
    s_vec = nois_bloch(basis, p)
    s = np.linalg.norm(s_vec, axis=-1)
    proj = np.einsum("...k,...k->...", r_vec, s_vec)
    # artanh(s) * (r . s_hat), with the s -> 0 limit equal to 0
    safe = np.where(s > 1e-15, s, 1.0)
    directional = np.where(s > 1e-15, np.arctanh(safe) * proj / safe, 0.0)
    log_sigma = 0.5 * (np.log1p(-s * s) - 2.0 * _LN2) + directional
    return neg_entropy - log_sigma / _LN2


def _endpoint_value(r_vec, neg_entropy, v_end, overlap_tol=1e-10):
    """S(rho || |b><b|): zero-ish if rho sits on |b>, otherwise infinite."""
    leak = 0.5 * (1.0 - np.einsum("...k,k->...", r_vec, v_end))
    return np.where(leak > overlap_tol, np.inf, np.maximum(neg_entropy, 0.0))


def golden_section_min(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]`` by golden-section search.

    ``f`` may be vectorized: ``lo`` and ``hi`` can be arrays, in which case
    all brackets shrink in lockstep.  Returns ``(x_min, f(x_min))``.
    """
    a = np.asarray(lo, dtype=float).copy()
    b = np.asarray(hi, dtype=float).copy()
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if np.all(b - a < tol):
            break
        left = fc < fd
        # keep [a, d] where f(c) < f(d), else [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = np.where(left, b - _INV_PHI * (b - a), d)
        new_d = np.where(left, c, a + _INV_PHI * (b - a))
        fc_keep = np.where(left, np.nan, fd)
        fd_keep = np.where(left, fc, np.nan)
        c, d = new_c, new_d
        # one fresh evaluation per step per bracket
        fresh = f(np.where(left, c, d))
        fc = np.where(left, fresh, fc_keep)
        fd = np.where(left, fd_keep, fresh)
    x = 0.5 * (a + b)
    return x, f(x)


def c_rel_bloch(points, basis, tol=1e-10, max_iter=200):
    """Vectorized relative-entropy coherence (bits) for Bloch vectors.

    Returns ``(value, p_star)``; ``p_star`` is the optimal weight of ``b1``.
    """
    r_vec = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.linalg.norm(r_vec, axis=-1)
    neg_s = -qstate.binary_entropy(0.5 * (1.0 + np.minimum(r, 1.0)))
    n = r_vec.shape[0]

    def objective(p):
        return _rel_entropy_to_chord(r_vec, neg_s, basis, p)

    p_star, value = golden_section_min(
        objective, np.zeros(n), np.ones(n), tol=tol, max_iter=max_iter
    )
    # the closed interval: compare against the exact endpoints
    at_b1 = _endpoint_value(r_vec, neg_s, basis.v1)
    at_b2 = _endpoint_value(r_vec, neg_s, basis.v2)
    best = np.stack([value, at_b1, at_b2])
    pick = np.argmin(best, axis=0)
    value = np.maximum(best[pick, np.arange(n)], 0.0)
    p_star = np.choose(pick, [p_star, np.ones(n), np.zeros(n)])
    shape = np.shape(points)[:-1]
    return value.reshape(shape), p_star.reshape(shape)


def c_rel(rho, basis, tol=1e-10, max_iter=200):
    """Relative-entropy coherence ``min_p S(rho || chi(p))`` in bits.

    The objective is convex in ``p``, so a golden-section search on the open
    interval plus explicit checks of the two (possibly infinite) endpoints
    finds the global minimum.
    """
    value, _ = c_rel_bloch(qstate.bloch_from_density(rho), basis, tol, max_iter)
    return float(value)


def c_rel_objective(rho, basis, p):
    """S(rho || chi(p)) evaluated with full matrix logarithms."""
    p1, p2 = basis.projectors()
    p = np.asarray(p, dtype=float)
    chi = p[..., None, None] * p1 + (1.0 - p[..., None, None]) * p2
    return qstate.relative_entropy(rho, chi)


# ---------------------------------------------------------------------------
# extremal states


def _require_non_orthogonal(basis):
    if basis.is_orthogonal:
        raise NonUniqueMaximizerError(
            "orthogonal basis: every state on the great circle perpendicular "
            "to the basis axis is maximally coherent"
        )


def nomcms(basis, r):
    """Maximally coherent state on the Bloch shell of radius ``r``.

    ``(r + c)/c * I/2 - r/(2c) (|b1><b1| + |b2><b2|)`` with ``c = cos(alpha)``;
    its coherence is ``r + cos(alpha)``.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {r!r}")
    _require_non_orthogonal(basis)
    c = basis.overlap
    p1, p2 = basis.projectors()
    rho = (r + c) / c * 0.5 * qstate.I2 - r / (2.0 * c) * (p1 + p2)
    return 0.5 * (rho + rho.conj().T)


def max_coherent_state(basis):
    """The unique pure state of maximal trace coherence, ``|m>``.

    Its Bloch vector is ``-(v1 + v2)/|v1 + v2|``.
    """
    rho = nomcms(basis, 1.0)
    return qstate.ket_from_bloch(qstate.bloch_from_density(rho))


def nomincms(basis, r):
    """Minimally coherent state on the Bloch shell of radius ``r``.

    For ``r <= cos(alpha)`` this is the point at radius ``r`` towards the chord
    midpoint, with coherence ``cos(alpha) - r``.  For larger ``r`` the shell
    cuts the chord; the intersection closer to ``b2`` (smaller weight ``p``)
    is returned, which is a free state.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"radius must lie in [0, 1], got {r!r}")
    c = basis.overlap
    mid = basis.midpoint
    along = basis.v1 - basis.v2
    along = along / np.linalg.norm(along)
    if r <= c:
        if r == 0.0:
            return 0.5 * qstate.I2
        v = r * mid / np.linalg.norm(mid)
    else:
        v = mid - math.sqrt(r * r - c * c) * along
    return qstate.density_from_bloch(v)


def purity_threshold(basis):
    """``(1 + cos^2 alpha)/2``: no free state has lower purity."""
    return 0.5 * (1.0 + basis.overlap**2)


def complementarity_gaps(rho, basis):
    """Slack in ``C + M <= 1 + cos(alpha)`` and ``M - C <= 1 - cos(alpha)``.

    Both gaps are non-negative for every state (Euclidean convention,
    ``M = 1 - r``).
    """
    coh = c_trace(rho, basis)
    mix = 1.0 - float(qstate.bloch_radius(rho))
    c = basis.overlap
    return 1.0 + c - coh - mix, 1.0 - c - (mix - coh)
