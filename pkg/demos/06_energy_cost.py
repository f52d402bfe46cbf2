"""Energy needed to turn the energy eigenbasis into a non-orthogonal basis.

A thermal qubit is maximally coherent with respect to every basis whose chord
is perpendicular to the z-axis.  Creating such a basis with a controlled
rotation and a swap costs E1/2 per unit of coherence.
"""

import math

import numpy as np

from noncoh.thermo import (
    TwoLevelSystem,
    bc_energy_cost,
    coherence_basis_family,
    linearity_check,
    thermal_is_nomcms_check,
    thermal_state,
)

qubit = TwoLevelSystem(1.0)
ts = thermal_state(qubit, 1.0)
print(f"T = 1: populations {np.round(np.diag(ts.rho).real, 7)}, Bloch radius {ts.bloch_radius:.7f}")
fam = coherence_basis_family(math.pi / 4)
print("maximally coherent for the alpha = pi/4 family:", thermal_is_nomcms_check(ts, fam))
print(f"energy cost: {bc_energy_cost(qubit, 1.0, fam):.7f} (ancilla |b1>), {bc_energy_cost(qubit, 1.0, fam, '0'):.7f} (ancilla |0>)")

print("\n  E1     T    alpha    delta     C_trace   delta/C")
for e1 in (0.5, 1.0, 2.0):
    for T in (0.2, 1.0, 5.0):
        for a in (0.3, 1.0, math.pi / 2):
            d, c, ratio = linearity_check(TwoLevelSystem(e1), T, coherence_basis_family(a))
            print(f"  {e1:.1f}  {T:4.1f}  {a:.3f}  {d:.6f}  {c:.6f}  {ratio:.6f}")
