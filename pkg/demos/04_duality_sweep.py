"""Wave-particle duality in a leaky double slit.

For each pass probability R, random input states and detector states are
drawn and the largest values of the normalized coherence C~, the detector
distinguishability D~ and their sum are recorded.  The sum never exceeds 3/2.

Run with a larger sample count (e.g. ``python 04_duality_sweep.py 1000000``)
for a figure-quality sweep.
"""

import sys

from noncoh.duality import SlitConfig, duality_point, sweep_duality
from noncoh import qstate

samples = int(sys.argv[1]) if len(sys.argv) > 1 else 20000

cfg = SlitConfig(0.6, 0.8, 0.5, qstate.KET0, qstate.ket_from_angles(1.0, 0.0))
pt = duality_point(cfg)
print(f"single configuration: C~ = {pt.c_tilde:.6f}, D~ = {pt.d_tilde:.6f}, sum = {pt.total:.6f}")

res = sweep_duality(samples_per_r=samples, seed=0)
print(f"\n{samples} samples per R (seed {res.seed})")
print("   R    max C~    max D~    max sum")
for row in res.rows:
    print(f"  {row.r:.2f}  {row.max_c_tilde:.6f}  {row.max_d_tilde:.6f}  {row.max_sum:.6f}")
print(f"\nsamples above 3/2: {res.violations}")
