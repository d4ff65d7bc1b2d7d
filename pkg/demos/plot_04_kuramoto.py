"""
Synchronization in a Kuramoto network
=====================================

Ten phase oscillators with normally distributed natural frequencies,
coupled globally.  The order parameter ``r`` measures phase coherence;
per-oscillator synchronizability divides the semantic entropy of
``sin(theta_i)`` by its information power and marginal coupling.
"""

import numpy as np

from tsgeom import integrate, marginal_coupling, random_network, synchronizability

for k in (0.1, 1.0, 2.0, 5.0):
    net = random_network(10, k, seed=0)
    traj = integrate(net, dt=0.01, steps=5000)
    r = traj.order_parameter()
    tail = r[int(0.8 * len(r)) :].mean()
    s = [np.nanmedian(synchronizability(traj.observable(i), marginal_coupling(net, i)).values) for i in range(net.n)]
    print(f"K={k:3.1f}  mean r over the last 10 s={tail:.3f}  median S={np.median(s):.4g}")

###############################################################################
# Two identical oscillators lock: the phase gap decays as
# ``2 * arctan(tan(d0 / 2) * exp(-K t))``.
from tsgeom import OscillatorNetwork

traj = integrate(OscillatorNetwork([1.0, 1.0], 1.0, [0.0, 0.5]), dt=0.01, steps=2000)
gap = traj.phases[:, 1] - traj.phases[:, 0]
print(gap[::500])
