"""
Semantic entropy, information power and their ratio
===================================================

Windowed measures on a surrogate recording: unit white noise with a
pure 3 Hz sinusoid substituted between 8 s and 12 s.
"""

import numpy as np

from tsgeom import GeneratorSpec, WindowSpec, generate, locate_min, ratio_series

sig = generate(GeneratorSpec("seizure_surrogate", seed=0))
r = ratio_series(sig)
for t, e, p, q in zip(r.ratio.window_starts, r.entropy.values, r.power.values, r.ratio.values):
    print(f"{t:5.1f} s  E={e:5.3f}  P={p:9.5f}  E/P={q:10.3f}")
print("minimum E/P in window starting at", locate_min(r.ratio)[1], "s")

###############################################################################
# Information power is a per-sample quantity.  For a sinusoid it grows
# with the cube of the frequency relative to the sample rate, while for
# white noise it does not depend on the sample rate at all.  At 256 Hz a
# 3 Hz oscillation is very smooth, so its information power is tiny and
# its E/P ratio is the largest of the record.
fs = 256.0
for f in (3.0, 12.0, 48.0):
    x = 5 * np.sin(2 * np.pi * f * np.arange(512) / fs)
    rr = ratio_series(x, WindowSpec(512, 512))
    print(f"{f:4.0f} Hz  P={rr.power.values[0]:.4g}  E/P={rr.ratio.values[0]:.4g}")

###############################################################################
# Raising the oscillation frequency reverses the picture: a fast burst
# carries far more information power than the background.
fast = generate(GeneratorSpec("seizure_surrogate", seed=0, params={"frequency": 60.0, "amplitude": 5.0}))
print("minimum E/P for a 60 Hz burst at", locate_min(ratio_series(fast).ratio)[1], "s")
