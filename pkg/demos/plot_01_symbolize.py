"""
Symbolizing a signal into geometric configurations
==================================================

Every interior sample of a series is labelled by the shape of its
3-point neighbourhood: the signs of the backward difference, the
second difference and the forward difference.  Only 13 sign rows are
realizable.
"""

import numpy as np

from tsgeom import CONFIGURATIONS, Signal, histogram, peaks_troughs, symbolize

# the 13 configurations and their sign rows
for c in CONFIGURATIONS:
    row = "".join(s.symbol for s in c.pattern)
    print(f"{c.id:2d}  {row}  {c.abundance}")

###############################################################################
# A sampled sine mostly visits the six abundant configurations; exact
# zeros in the differences are rare on continuous data.
fs = 64.0
t = np.arange(256) / fs
sig = Signal(np.sin(2 * np.pi * 2 * t), fs, "sine")
sym = symbolize(sig)
print(sym.symbols[:40])
print(histogram(sym).as_dict())

###############################################################################
# Configurations 6 and 5 mark local peaks and troughs.
peaks, troughs = peaks_troughs(sym)
print("peaks at", sym.times[peaks - 1])
print("troughs at", sym.times[troughs - 1])

###############################################################################
# A ramp has constant slope and zero curvature, so every point falls in
# the sparse configuration 7; a tolerance band widens what counts as zero.
print(set(symbolize(np.arange(10.0))))
noisy_ramp = np.arange(10.0) + 0.01 * np.random.default_rng(0).standard_normal(10)
print(list(symbolize(noisy_ramp)), list(symbolize(noisy_ramp, tau=0.1)))
