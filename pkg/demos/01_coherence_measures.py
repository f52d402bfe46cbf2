"""Coherence of a qubit with respect to a non-orthogonal basis.

The free states of a basis {|b1>, |b2>} are the mixtures p|b1><b1| + (1-p)|b2><b2|,
which fill the chord joining the two Bloch vectors.  The trace coherence of a
state is its distance to that chord; the relative-entropy coherence is the
smallest relative entropy to a point on it.
"""

import numpy as np

from noncoh import qstate
from noncoh.comeasure import Convention, c_rel, c_trace, mixedness_report
from noncoh.nobasis import make_basis, nearest_nois

basis = make_basis(qstate.KET0, qstate.KET_PLUS)
print(f"basis |0>, |+>: overlap {basis.overlap:.6f}, half angle {basis.half_angle:.6f} rad")
print(f"chord from {basis.v2} to {basis.v1}, midpoint {basis.midpoint}")

# the maximally mixed state sits 1/sqrt(2) away from the chord midpoint
rho = qstate.I2 / 2
point, dist = nearest_nois(rho, basis)
print("\nI/2")
print(f"  nearest free state weight p = {point.weight:.6f}, distance {dist:.6f}")
print(f"  C_trace (euclidean) = {c_trace(rho, basis):.6f}")
print(f"  C_trace (half)      = {c_trace(rho, basis, Convention.HALF):.6f}")
print(f"  C_rel               = {c_rel(rho, basis):.6f} bits")

# |1> is closest to the |+> end of the chord
rho = qstate.dm(qstate.KET1)
point, dist = nearest_nois(rho, basis)
print("\n|1>")
print(f"  nearest free state weight p = {point.weight:.6f}, distance {dist:.6f}")
print(f"  C_rel = {c_rel(rho, basis):.10f} bits")

# a few random mixed states
rng = qstate.make_rng(1)
print("\nrandom states: r, entropy, C_trace, C_rel")
for rho in qstate.random_mixed_qubit(rng, 5):
    rep = mixedness_report(rho)
    print(f"  {rep.bloch_radius:.4f}  {rep.entropy:.4f}  {c_trace(rho, basis):.4f}  {c_rel(rho, basis):.4f}")

# an orthogonal basis reduces C_rel to the usual relative entropy of coherence
ortho = make_basis(qstate.KET0, qstate.KET1)
print(f"\n|+> against {{|0>, |1>}}: C_rel = {c_rel(qstate.dm(qstate.KET_PLUS), ortho):.6f} bit")
