"""Sums of squared coherences over several bases.

Triangle and square: the bases are the edges of a regular polygon inscribed
in a great circle.  Mutually orthogonal pair: {|0>, |psi>} and {|1>, |psi_perp>}.
Monte Carlo over the Bloch ball checks the lower and upper bounds; for the
pair, only theta0 = pi/2 satisfies them.
"""

import math

import numpy as np

from noncoh import qstate
from noncoh.multibasis import (
    cyclic_bases,
    great_circle_flatness,
    mutually_orthogonal_pair,
    verify_family_bounds,
)

families = [
    cyclic_bases(3),
    cyclic_bases(4),
    mutually_orthogonal_pair(qstate.ket_from_angles(math.pi / 2, 0.0)),
    mutually_orthogonal_pair(qstate.ket_from_angles(2 * math.pi / 3, 0.0)),
]
for k, fam in enumerate(families):
    rep = verify_family_bounds(fam, 20000, qstate.make_rng(0, k), seed=0)
    print(f"{rep.family}: lower violations {rep.violations_lower}, upper {rep.violations_upper}, gated {rep.gated}")
    for r, lo, hi in zip(rep.radii[::3], rep.min_by_radius[::3], rep.max_by_radius[::3]):
        print(f"    r = {r:.2f}: sum in [{lo:.4f}, {hi:.4f}]")
    for note in rep.notes:
        print(f"    note: {note}")

# many bases on one great circle: mean over the n edges
print("\ngreat circle, n = 64, in-plane points at radii 0, 0.3, 0.6, 0.9")
for power, distance in ((2, "segment"), (1, "segment"), (1, "line")):
    rep = great_circle_flatness(64, [0.0, 0.3, 0.6, 0.9], power=power, distance=distance)
    means = np.mean(rep.means, axis=1)
    print(f"  C^{power}, {distance:7s}: means {np.round(means, 4)}, flatness {rep.flatness:.3g}")
