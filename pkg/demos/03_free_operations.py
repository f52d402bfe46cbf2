"""Basis-changing operations, free-operation checks and the phase flip.

The forward operation turns {|0>, |1>} into {|b1>, |b2>} with an ancilla.  The
reverse direction can only succeed probabilistically (unambiguous
discrimination, success 1 - cos(a)).  Chaining reverse, a dephasing and
forward maps free states to free states.  A phase flip in a non-orthogonal
basis, by contrast, can raise coherence.
"""

import numpy as np

from noncoh import qstate
from noncoh.channels import (
    amplitude_damping,
    apply_selective,
    forward_bc_channel,
    is_nio,
    is_nomio,
    phase_flip_demo,
    discriminate_then_prepare_channel,
    discriminate_then_prepare,
    reverse_bc_attempt,
)
from noncoh.comeasure import c_trace
from noncoh.nobasis import make_basis, nois_state

basis = make_basis(qstate.KET0, qstate.KET_PLUS)

fwd = forward_bc_channel(basis)
print("forward BC: |0> ->", np.round(qstate.bloch_from_density(fwd(qstate.dm(qstate.KET0))), 6))
print("            |1> ->", np.round(qstate.bloch_from_density(fwd(qstate.dm(qstate.KET1))), 6))

rev = reverse_bc_attempt(basis)
print(f"\nreverse BC success probability {rev.success_prob:.6f} (1 - cos a = {1 - basis.overlap:.6f})")
for name, b in (("b1", basis.b1), ("b2", basis.b2)):
    for k, op in enumerate(rev.success_ops):
        prob, _ = apply_selective([op], qstate.dm(b))
        print(f"  input |{name}>, outcome {k}: probability {prob:.6f}")

ops = discriminate_then_prepare(basis)
print("\nreverse BC, dephasing, forward BC on free inputs:")
for p in (0.1, 0.5, 0.9):
    prob, out = apply_selective(ops, nois_state(basis, p).state)
    print(f"  p = {p}: success {prob:.4f}, output coherence {c_trace(out, basis):.2e}")
print("completed channel is NOMIO:", bool(is_nomio(discriminate_then_prepare_channel(basis), basis)))
print("                    NIO:  ", bool(is_nio(discriminate_then_prepare_channel(basis), basis)))

damp = amplitude_damping(0.3)
verdict = is_nomio(damp, basis)
print(f"\namplitude damping (0.3) is NOMIO: {bool(verdict)}; witness distance {verdict.witness[2]:.4f}")

psi_in, psi_out, c_in, c_out = phase_flip_demo(basis)
print("\nphase flip in the basis |0>, |+>")
print(f"  input  Bloch {np.round(qstate.bloch_from_ket(psi_in), 6)}, coherence {c_in:.6f}")
print(f"  output Bloch {np.round(qstate.bloch_from_ket(psi_out), 6)}, coherence {c_out:.6f}")
