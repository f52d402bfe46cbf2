"""Families of several non-orthogonal bases and sums of squared coherences.

Two configurations are provided:

* mutually orthogonal pair: ``K1 = {|0>, |psi>}``, ``K2 = {|1>, |psi_perp>}``;
* cyclic bases: ``n`` equally spaced points on a great circle, each
  adjacent pair (polygon edge) forming one basis.

For the triangle and the square, every state with Bloch radius ``r`` obeys

    n (c^2 + r^2/2) <= sum_i C_i^2            (all r)
    sum_i C_i^2 <= n (c^2 + r^2)              (r <= c, triangle/square)

with ``c = cos(pi/n)``, i.e. 3/4 (1 + 2r^2) ... 3/4 (1 + 4r^2) and
2 (1 + r^2) ... 2 (1 + 2r^2).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import qstate
from .comeasure import c_trace_bloch
from .exceptions import DegenerateBasisError
from .nobasis import NOBasis, basis_from_bloch, make_basis

MUTUALLY_ORTHOGONAL = "mutually_orthogonal"
CYCLIC = "cyclic"

XZ_PLANE = (np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0]))


@dataclass(eq=False)
class BasisFamily:
    kind: str
    bases: List[NOBasis]
    params: dict = field(default_factory=dict)

    @property
    def name(self):
        if self.kind == CYCLIC:
            return {3: "triangle", 4: "square"}.get(self.params["n"], f"cyclic-{self.params['n']}")
        return f"mutually-orthogonal(theta0={self.params['theta0']:.6g})"


def mutually_orthogonal_pair(psi):
    """``K1 = {|0>, psi}`` and ``K2 = {|1>, psi_perp}``, with ``psi_perp`` antipodal to ``psi``."""
    psi = qstate.check_ket(psi, atol=1e-10)
    c0 = abs(psi[0])
    if c0 > 1.0 - 1e-9 or c0 < 1e-9:
        raise DegenerateBasisError("psi must not be parallel to |0> or |1>")
    psi_perp = np.array([-np.conj(psi[1]), np.conj(psi[0])])
    k1 = make_basis(qstate.KET0, psi)
    k2 = make_basis(qstate.KET1, psi_perp)
    v = qstate.bloch_from_ket(psi)
    theta0 = float(np.arccos(np.clip(v[2], -1, 1)))
    phi0 = float(np.arctan2(v[1], v[0]))
    return BasisFamily(MUTUALLY_ORTHOGONAL, [k1, k2], {"theta0": theta0, "phi0": phi0})


def polygon_vertices(n, plane=XZ_PLANE, phase_offset=0.0):
    """``n`` unit vectors equally spaced on the great circle spanned by ``plane``.

    Vertex ``k`` sits at angle ``phase_offset + 2 pi k / n`` from ``plane[0]``
    towards ``plane[1]``.
    """
    e1, e2 = (np.asarray(e, dtype=float) for e in plane)
    if abs(e1 @ e2) > 1e-12 or abs(np.linalg.norm(e1) - 1) > 1e-12 or abs(np.linalg.norm(e2) - 1) > 1e-12:
        raise ValueError("plane must be an orthonormal pair of 3-vectors")
    ang = phase_offset + 2.0 * np.pi * np.arange(n) / n
    return np.cos(ang)[:, None] * e1 + np.sin(ang)[:, None] * e2


def cyclic_bases(n, plane=XZ_PLANE, phase_offset=0.0):
    """Edge bases of a regular ``n``-gon inscribed in a great circle.

    The default plane is the xz-plane with the first vertex on ``+z``.
    """
    if n < 3:
        raise ValueError(f"a cyclic family needs n >= 3, got {n}")
    verts = polygon_vertices(n, plane, phase_offset)
    bases = [basis_from_bloch(verts[k], verts[(k + 1) % n]) for k in range(n)]
    return BasisFamily(CYCLIC, bases, {"n": n, "phase_offset": phase_offset})


def sum_sq_coherence_bloch(points, fam):
    """Vectorized ``sum_i C(rho, K_i)^2`` (Euclidean convention)."""
    return sum(c_trace_bloch(points, b) ** 2 for b in fam.bases)


def sum_sq_coherence(rho, fam):
    return float(sum_sq_coherence_bloch(qstate.bloch_from_density(rho), fam))


def point_from_spherical(r, theta, phi):
    return r * np.array(
        [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
    )


# ---------------------------------------------------------------------------
# bounds


def family_bounds(fam, r):
    """Lower bound, upper bound, and whether the upper bound applies at radius ``r``.

    Cyclic families use ``n(c^2 + r^2/2)`` and ``n(c^2 + r^2)`` (upper for
    ``r <= min(cos, sin)(pi/n)``).  The mutually orthogonal pair uses
    ``(1-r)^2`` and ``r^2 + (1+r)^2`` (upper for ``r <= sin(alpha)``).
    """
    r = np.asarray(r, dtype=float)
    if fam.kind == CYCLIC:
        n = fam.params["n"]
        c = math.cos(math.pi / n)
        region = min(c, math.sin(math.pi / n))
        return n * (c * c + 0.5 * r * r), n * (c * c + r * r), r <= region + 1e-15
    alpha = fam.bases[0].half_angle
    return (1.0 - r) ** 2, r * r + (1.0 + r) ** 2, r <= math.sin(alpha) + 1e-15


def is_gated(fam):
    """Families whose bounds are asserted (not merely reported)."""
    if fam.kind == CYCLIC:
        return fam.params["n"] in (3, 4)
    return abs(fam.params["theta0"] - math.pi / 2) < 1e-9


@dataclass
class BoundReport:
    family: str
    samples: int
    violations_lower: int
    violations_upper: int
    radii: List[float]
    min_by_radius: List[float]
    max_by_radius: List[float]
    seed: int
    gated: bool = True
    worst_lower_gap: float = 0.0
    worst_upper_gap: float = 0.0
    saturating_lower: Optional[List[float]] = None
    saturating_upper: Optional[List[float]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return self.violations_lower == 0 and self.violations_upper == 0

    def to_dict(self):
        return asdict(self)


def verify_family_bounds(fam, samples, rng, radii=(0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0), tol=1e-9, seed=None):
    """Monte Carlo check of the family's lower/upper bounds.

    ``samples`` states uniform in the Bloch ball are checked against both
    bounds; in addition ``samples // len(radii)`` states are drawn on each
    fixed-radius shell to tabulate min/max of the sum per radius.
    """
    pts = qstate.uniform_ball(rng, samples)
    shell_n = max(1, samples // len(radii))
    shells = [qstate.uniform_shell(rng, shell_n, r) for r in radii]
    all_pts = np.concatenate([pts] + shells)
    r_all = np.linalg.norm(all_pts, axis=1)
    total = sum_sq_coherence_bloch(all_pts, fam)
    lo, hi, region = family_bounds(fam, r_all)
    gap_lo = total - lo
    gap_hi = np.where(region, hi - total, np.inf)
    viol_lo = int(np.sum(gap_lo < -tol))
    viol_hi = int(np.sum(gap_hi < -tol))

    mins, maxs = [], []
    for k in range(len(radii)):
        block = total[samples + k * shell_n : samples + (k + 1) * shell_n]
        mins.append(float(block.min()))
        maxs.append(float(block.max()))

    i_lo = int(np.argmin(gap_lo))
    finite_hi = np.where(np.isfinite(gap_hi), gap_hi, np.inf)
    i_hi = int(np.argmin(finite_hi))
    report = BoundReport(
        family=fam.name,
        samples=int(samples),
        violations_lower=viol_lo,
        violations_upper=viol_hi,
        radii=[float(r) for r in radii],
        min_by_radius=mins,
        max_by_radius=maxs,
        seed=seed if seed is not None else -1,
        gated=is_gated(fam),
        worst_lower_gap=float(gap_lo[i_lo]),
        worst_upper_gap=float(finite_hi[i_hi]) if np.isfinite(finite_hi[i_hi]) else 0.0,
        saturating_lower=[float(x) for x in all_pts[i_lo]],
        saturating_upper=[float(x) for x in all_pts[i_hi]],
    )
    if not report.gated and not report.passed:
        report.notes.append(
            "bound violated for this configuration; reported for information only"
        )
    if fam.kind == MUTUALLY_ORTHOGONAL:
        origin = float(sum_sq_coherence_bloch(np.zeros(3), fam))
        report.notes.append(f"sum at the origin = {origin:.10g} (lower bound there is 1)")
    return report


# ---------------------------------------------------------------------------
# many bases on one great circle


@dataclass
class FlatnessReport:
    n: int
    radii: List[float]
    angles: List[float]
    means: List[List[float]]  # [radius][angle]
    spread_radius: float
    spread_angle: float
    flatness: float
    power: int
    distance: str


def _line_distance(points, a, b):
    d = b - a
    t = ((points - a) @ d) / (d @ d)
    return np.linalg.norm(points - a - t[..., None] * d, axis=-1)


def great_circle_flatness(n, radii, rng=None, angles=8, power=2, distance="segment", plane=XZ_PLANE):
    """Mean over the ``n`` edge bases of ``C^power`` at in-plane points.

    ``distance="segment"`` uses the coherence measure itself (distance to the
    chord segment); ``distance="line"`` uses the infinite line through the
    two basis vectors.  ``flatness`` is ``(max - min)/mean`` over all sampled
    radii and angles.  With ``rng`` the in-plane angles are random, otherwise
    evenly spaced.
    """
    if n < 32:
        raise ValueError("great-circle limit needs n >= 32")
    fam = cyclic_bases(n, plane)
    e1, e2 = (np.asarray(e, dtype=float) for e in plane)
    if rng is None:
        ang = 2 * np.pi * (np.arange(angles) + 0.5) / angles
    else:
        ang = rng.uniform(0, 2 * np.pi, angles)
    means = []
    for r in radii:
        pts = r * (np.cos(ang)[:, None] * e1 + np.sin(ang)[:, None] * e2)
        acc = np.zeros(len(ang))
        for b in fam.bases:
            if distance == "segment":
                d = c_trace_bloch(pts, b)
            elif distance == "line":
                d = _line_distance(pts, b.v2, b.v1)
            else:
                raise ValueError(f"unknown distance {distance!r}")
            acc += d**power
        means.append(acc / n)
    m = np.array(means)
    spread_r = float(np.max(m.max(axis=0) - m.min(axis=0)))
    spread_a = float(np.max(m.max(axis=1) - m.min(axis=1)))
    return FlatnessReport(
        n=n,
        radii=[float(r) for r in radii],
        angles=[float(a) for a in ang],
        means=m.tolist(),
        spread_radius=spread_r,
        spread_angle=spread_a,
        flatness=float((m.max() - m.min()) / m.mean()),
        power=power,
        distance=distance,
    )


def mean_coherence_at(points, n, power=2, distance="segment", plane=XZ_PLANE):
    """Mean of ``C^power`` over the ``n`` great-circle edge bases at arbitrary points."""
    fam = cyclic_bases(n, plane)
    pts = np.atleast_2d(points)
    acc = np.zeros(len(pts))
    for b in fam.bases:
        d = c_trace_bloch(pts, b) if distance == "segment" else _line_distance(pts, b.v2, b.v1)
        acc += d**power
    return acc / n
