"""The photon-loss channel, branch by branch.

Shows the per-branch weights, channel completeness, trace preservation,
the semigroup property, and why the phases can be factored out of the
loss entirely. Run as `python3 demos/02_loss_channel.py`.
"""

import numpy as np

from multiphase import (
    AT_MOST_TOTAL,
    DensityOperator,
    apply_loss,
    apply_loss_density,
    build_basis,
    generalized_noon,
    kraus_operator,
    phase_factors,
    uniform_loss,
)

eta = 0.7
single = build_basis(1, 2, AT_MOST_TOTAL)

# Losing l photons out of n happens with binomial probability
# C(n, l) (1-eta)^l eta^(n-l); the branch operators encode the amplitudes.
print(f"single mode, eta = {eta}: branch weights on |2>")
for lost in range(3):
    k = kraus_operator(eta, lost, single)
    col = single.index[(2,)]
    weights = k[:, col]
    row = int(np.argmax(np.abs(weights)))
    print(f"  lose {lost}: |2> -> |{single.states[row][0]}> with probability "
          f"{float(weights[row]) ** 2:.4f}")

complete = sum(
    kraus_operator(eta, lost, single).T @ kraus_operator(eta, lost, single)
    for lost in range(3)
)
print(f"sum of K^T K deviates from identity by "
      f"{np.max(np.abs(complete - np.eye(single.size))):.1e}")

# Full multimode channel on the balanced probe.
probe = generalized_noon(2, 3)
channel = uniform_loss(eta, 3, 3)
rho = apply_loss(probe, channel)
print(f"\nlossy state of the d=2, N=3 probe: trace {np.trace(rho.matrix).real:.12f}, "
      f"min eigenvalue {np.linalg.eigvalsh(rho.matrix)[0]:.2e}")

# Two half-strength losses compose into one: the channel is a semigroup
# in the survival probability.
once = apply_loss(probe, uniform_loss(0.9 * 0.8, 3, 3))
staged = apply_loss_density(apply_loss(probe, uniform_loss(0.9, 3, 3)),
                            uniform_loss(0.8, 3, 3))
print(f"eta = 0.9 then 0.8 vs single 0.72 pass: max difference "
      f"{np.max(np.abs(once.matrix - staged.matrix)):.1e}")

# Phases commute through the loss: evolving at zero phases and rotating
# afterwards gives the exact phase-dependent state. That is why every
# bound in this package can ignore the actual phase values.
theta = (0.4, -1.1)
u = phase_factors(rho.basis, theta)
rotated = DensityOperator(rho.basis, rho.matrix * np.outer(u, u.conj()))
print(f"\nrotated state stays unit trace: {np.trace(rotated.matrix).real:.12f}")
print("the diagonal (populations) is untouched by the phases:",
      np.allclose(np.diag(rotated.matrix), np.diag(rho.matrix)))
