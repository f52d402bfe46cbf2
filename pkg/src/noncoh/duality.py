"""Leaky double-slit experiment: wave (C~) versus particle (D~) quantities.

The upper-slit state ``|0>`` passes a leak device with probability ``R``
and is otherwise diverted into the lower channel, which carries ``|1>``.
After merging, the lower channel holds

    |psi> = (beta|1> + alpha sqrt(1-R)|0>) / sqrt(M),   M = |beta|^2 + |alpha|^2 (1-R)

and detectors ``|d0>``, ``|dpsi>`` are attached to the two channels.  The
normalized coherence ``C~`` of the quanton in the basis ``{|0>, |psi>}`` and
the unambiguous-discrimination quantity ``D~`` of the detectors satisfy
``C~ + D~ <= 3/2``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import qstate
from .comeasure import c_trace
from .exceptions import DegenerateBasisError
from .nobasis import DEGENERACY_TOL, make_basis

SHARD_SIZE = 1 << 16
BOUND = 1.5
BOUND_TOL = 1e-9
DEFAULT_GRID = tuple(round(0.05 * k, 2) for k in range(1, 21))


@dataclass(frozen=True)
class SlitConfig:
    amp_alpha: complex
    amp_beta: complex
    pass_prob: float
    d0: np.ndarray
    dpsi: np.ndarray

    def __post_init__(self):
        norm = abs(self.amp_alpha) ** 2 + abs(self.amp_beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        if not 0.0 <= self.pass_prob <= 1.0:
            raise ValueError(f"pass probability must lie in [0, 1], got {self.pass_prob!r}")
        qstate.check_ket(self.d0, atol=1e-10)
        qstate.check_ket(self.dpsi, atol=1e-10)


@dataclass(frozen=True)
class SlitDerived:
    psi: Optional[np.ndarray]
    M: float
    N: float
    R_norm: float


@dataclass(frozen=True)
class DualityPoint:
    c_tilde: float
    d_tilde: float

    @property
    def total(self):
        return self.c_tilde + self.d_tilde


def _derived(cfg):
    a, b, R = cfg.amp_alpha, cfg.amp_beta, cfg.pass_prob
    M = abs(b) ** 2 + abs(a) ** 2 * (1.0 - R)
    N = 1.0 + 2.0 * abs(a) ** 2 * math.sqrt(R * (1.0 - R))
    if M > 0:
        psi = np.array([a * math.sqrt(1.0 - R), b], dtype=complex) / math.sqrt(M)
    else:
        psi = None
    g = np.vdot(cfg.dpsi, cfg.d0)
    # the cross term is |alpha|^2 sqrt(R(1-R)) Re<dpsi|d0>, since sqrt(M)<0|psi> = alpha sqrt(1-R)
    R_norm = (
        abs(a) ** 2 * R + M + 2.0 * abs(a) ** 2 * math.sqrt(R * (1.0 - R)) * g.real
    ) / N
    return SlitDerived(psi, M, N, R_norm)


def post_slit_state(cfg):
    """System state after the leak, before detectors: ``(alpha sqrt(R)|0> + sqrt(M)|psi>)/sqrt(N)``."""
    der = _derived(cfg)
    a, R = cfg.amp_alpha, cfg.pass_prob
    state = a * math.sqrt(R) * qstate.KET0
    if der.psi is not None:
        state = state + math.sqrt(der.M) * der.psi
    return state / math.sqrt(der.N), der


def joint_unnormalized(cfg):
    """``(alpha sqrt(R)|0>|d0> + sqrt(M)|psi>|dpsi>)/sqrt(N)``; its squared norm is ``R_norm``."""
    der = _derived(cfg)
    a, R = cfg.amp_alpha, cfg.pass_prob
    vec = a * math.sqrt(R) * qstate.kron_ket(qstate.KET0, cfg.d0)
    if der.psi is not None:
        vec = vec + math.sqrt(der.M) * qstate.kron_ket(der.psi, cfg.dpsi)
    return vec / math.sqrt(der.N), der


def joint_qd_state(cfg):
    """Normalized quanton-detector state ``|Psi>_QD``.

    Raises
    ------
    DegenerateBasisError
        If ``|psi>`` is (nearly) parallel to ``|0>``.
    """
    vec, der = joint_unnormalized(cfg)
    if der.psi is None or abs(der.psi[0]) > 1.0 - DEGENERACY_TOL:
        raise DegenerateBasisError("merged lower-path state is parallel to |0>")
    return vec / math.sqrt(der.R_norm)


def quanton_basis(cfg):
    _, der = post_slit_state(cfg)
    if der.psi is None:
        raise DegenerateBasisError("lower channel is empty (beta = 0, R = 1)")
    return make_basis(qstate.KET0, der.psi)


def c_tilde(cfg) -> Optional[float]:
    """Normalized non-orthogonal coherence of the quanton; ``None`` for degenerate samples."""
    try:
        joint = joint_qd_state(cfg)
        basis = quanton_basis(cfg)
    except DegenerateBasisError:
        return None
    rho_q = qstate.partial_trace(joint, keep=0)
    return c_trace(rho_q, basis) / (1.0 + basis.overlap)


def d_tilde(cfg):
    """``1 - sqrt(p(1-p)) |<d0|dpsi>|`` with ``p = |alpha|^2 R``."""
    p = abs(cfg.amp_alpha) ** 2 * cfg.pass_prob
    return 1.0 - math.sqrt(p * (1.0 - p)) * abs(np.vdot(cfg.d0, cfg.dpsi))


def duality_point(cfg) -> Optional[DualityPoint]:
    c = c_tilde(cfg)
    return None if c is None else DualityPoint(c, d_tilde(cfg))


# ---------------------------------------------------------------------------
# vectorized kernel


def duality_batch(alpha, beta, R, d0, dpsi):
    """Vectorized ``(C~, D~, valid)`` for arrays of configurations.

    ``alpha``, ``beta`` have shape ``(n,)``; ``d0``, ``dpsi`` shape ``(n, 2)``.
    Entries with ``valid == False`` are degenerate and carry NaN.
    """
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    a2 = np.abs(alpha) ** 2
    M = np.abs(beta) ** 2 + a2 * (1.0 - R)
    # lower channel (unnormalized sqrt(M)|psi>) and upper amplitude
    phi0 = alpha * math.sqrt(1.0 - R)
    phi1 = beta
    up = alpha * math.sqrt(R)
    g = np.einsum("ij,ij->i", np.conj(dpsi), d0)  # <dpsi|d0>

    # reduced quanton state, unnormalized
    cross = up * g
    r00 = np.abs(up) ** 2 + np.abs(phi0) ** 2 + 2.0 * (cross * np.conj(phi0)).real
    r11 = np.abs(phi1) ** 2
    r01 = cross * np.conj(phi1) + phi0 * np.conj(phi1)
    tr = r00 + r11
    bx = 2.0 * r01.real / tr
    by = -2.0 * r01.imag / tr
    bz = (r00 - r11) / tr
    rho_v = np.stack([bx, by, bz], axis=1)

    with np.errstate(invalid="ignore", divide="ignore"):
        sqrt_m = np.sqrt(M)
        overlap = np.abs(phi0) / sqrt_m
        valid = (M > 0) & (overlap <= 1.0 - DEGENERACY_TOL)
        p0 = phi0 / sqrt_m
        p1 = phi1 / sqrt_m
        pc = np.conj(p0) * p1
        psi_v = np.stack(
            [2 * pc.real, 2 * pc.imag, np.abs(p0) ** 2 - np.abs(p1) ** 2], axis=1
        )
        # distance from rho_v to segment [psi_v, +z]
        top = np.array([0.0, 0.0, 1.0])
        d = top - psi_v
        t = np.clip(
            np.einsum("ij,ij->i", rho_v - psi_v, d) / np.einsum("ij,ij->i", d, d),
            0.0,
            1.0,
        )
        dist = np.linalg.norm(rho_v - psi_v - t[:, None] * d, axis=1)
        c_t = np.where(valid, dist / (1.0 + overlap), np.nan)

    p = a2 * R
    d_t = 1.0 - np.sqrt(p * (1.0 - p)) * np.abs(g)
    d_t = np.where(valid, d_t, np.nan)
    return c_t, d_t, valid


def haar_configs(rng, n):
    """Independent Haar-random input state and detector pair."""
    inp = qstate.haar_pure_qubit(rng, n)
    d0 = qstate.haar_pure_qubit(rng, n)
    dpsi = qstate.haar_pure_qubit(rng, n)
    return inp[:, 0], inp[:, 1], d0, dpsi


def boundary_configs():
    """Deterministic configurations on the edges of the parameter space.

    Inputs with ``|alpha|^2`` in {0, 1/4, 1/2, 3/4, 1} crossed with detector
    pairs that are identical, at 90 degrees on the Bloch sphere, and
    orthogonal.  Random sampling never hits these exactly, but the maxima
    of ``C~`` and ``D~`` live there.
    """
    alphas, betas, d0s, dpsis = [], [], [], []
    for w in (0.0, 0.25, 0.5, 0.75, 1.0):
        for theta in (0.0, 0.5 * math.pi, math.pi):
            alphas.append(math.sqrt(w))
            betas.append(math.sqrt(1.0 - w))
            d0s.append(qstate.KET0)
            dpsis.append(qstate.ket_from_angles(theta, 0.0))
    return (
        np.array(alphas, dtype=complex),
        np.array(betas, dtype=complex),
        np.array(d0s),
        np.array(dpsis),
    )


# ---------------------------------------------------------------------------
# sweep


@dataclass
class SweepRow:
    r: float
    max_c_tilde: float
    max_d_tilde: float
    max_sum: float
    samples: int
    discarded: int
    violations: int


@dataclass
class SweepResult:
    rows: List[SweepRow]
    seed: int
    samples_per_r: int
    boundary: bool
    measure: str = "haar(input) x haar(d0) x haar(dpsi)"
    extra: dict = field(default_factory=dict)

    @property
    def violations(self):
        return sum(row.violations for row in self.rows)

    @property
    def bound_holds(self):
        return self.violations == 0


def _reduce(c_t, d_t, valid):
    if not np.any(valid):
        return -np.inf, -np.inf, -np.inf, int(np.sum(~valid)), 0
    s = c_t[valid] + d_t[valid]
    return (
        float(np.max(c_t[valid])),
        float(np.max(d_t[valid])),
        float(np.max(s)),
        int(np.sum(~valid)),
        int(np.sum(s > BOUND + BOUND_TOL)),
    )


def _shard(seed, r_index, shard_index, R, n):
    rng = qstate.make_rng(seed, r_index, shard_index)
    alpha, beta, d0, dpsi = haar_configs(rng, n)
    return _reduce(*duality_batch(alpha, beta, R, d0, dpsi))


def worker_count():
    env = os.environ.get("NONCOH_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def sweep_duality(r_grid=DEFAULT_GRID, samples_per_r=10**6, seed=0, boundary=True, workers=None):
    """Maximize ``C~``, ``D~`` and ``C~ + D~`` over random configurations at each ``R``.

    Samples are split into fixed-size shards, each with its own generator
    derived from ``(seed, grid index, shard index)``, so the result does not
    depend on ``workers``.  With ``boundary=True`` the deterministic
    :func:`boundary_configs` are evaluated as well (not counted in
    ``samples``).
    """
    r_grid = [float(r) for r in r_grid]
    if not r_grid:
        raise ValueError("empty grid")
    if any(not 0.0 <= r <= 1.0 for r in r_grid):
        raise ValueError("grid values must lie in [0, 1]")
    if samples_per_r < 1:
        raise ValueError("samples_per_r must be positive")

    tasks = []
    for i, R in enumerate(r_grid):
        for j, start in enumerate(range(0, samples_per_r, SHARD_SIZE)):
            tasks.append((i, j, R, min(SHARD_SIZE, samples_per_r - start)))

    workers = worker_count() if workers is None else workers
    run = lambda t: _shard(seed, *t)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, tasks))
    else:
        parts = [run(t) for t in tasks]

    per_r = [[] for _ in r_grid]
    for (i, *_), part in zip(tasks, parts):
        per_r[i].append(part)
    if boundary:
        a, b, d0, dpsi = boundary_configs()
        for i, R in enumerate(r_grid):
            per_r[i].append(_reduce(*duality_batch(a, b, R, d0, dpsi)))

    rows = []
    for R, parts_r in zip(r_grid, per_r):
        rows.append(
            SweepRow(
                r=R,
                max_c_tilde=max(p[0] for p in parts_r),
                max_d_tilde=max(p[1] for p in parts_r),
                max_sum=max(p[2] for p in parts_r),
                samples=samples_per_r,
                discarded=sum(p[3] for p in parts_r),
                violations=sum(p[4] for p in parts_r),
            )
        )
    return SweepResult(rows, int(seed), int(samples_per_r), boundary)
