"""Maximally and minimally coherent states, and the purity threshold.

For a basis with overlap cos(a), the pure state with Bloch vector opposite to
the chord midpoint has the largest trace coherence, 1 + cos(a).  On a shell of
radius r the maximum is r + cos(a) and the minimum max(cos(a) - r, 0).  No free
state has purity below (1 + cos(a)^2)/2.
"""

import numpy as np

from noncoh import qstate
from noncoh.comeasure import (
    c_trace,
    c_trace_bloch,
    complementarity_gaps,
    max_coherent_state,
    nomcms,
    nomincms,
    purity_threshold,
)
from noncoh.nobasis import make_basis

basis = make_basis(qstate.KET0, qstate.ket_from_angles(1.1, 0.4))
c = basis.overlap
m = max_coherent_state(basis)
print(f"overlap cos(a) = {c:.6f}")
print(f"|m> Bloch vector {np.round(qstate.bloch_from_ket(m), 6)}, coherence {c_trace(qstate.dm(m), basis):.6f}")

# a brute-force look over random pure states never beats it
rng = qstate.make_rng(2)
pure = qstate.uniform_shell(rng, 200000, 1.0)
print(f"best of 2e5 random pure states: {c_trace_bloch(pure, basis).max():.6f}")

print("\nshell radius, max (formula / state), min (formula / state)")
for r in (0.0, 0.25, 0.5, 0.75, 1.0):
    hi = c_trace(nomcms(basis, r), basis)
    lo = c_trace(nomincms(basis, r), basis)
    print(f"  {r:.2f}  {r + c:.6f} / {hi:.6f}   {max(c - r, 0):.6f} / {lo:.6f}")

print(f"\npurity threshold (1 + cos^2 a)/2 = {purity_threshold(basis):.6f}")

# complementarity: C + M <= 1 + cos(a) and M - C <= 1 - cos(a)
rhos = qstate.random_mixed_qubit(rng, 2000)
gaps = np.array([complementarity_gaps(rho, basis) for rho in rhos])
print(f"smallest slack over 2000 random states: {gaps[:, 0].min():.3e}, {gaps[:, 1].min():.3e}")
