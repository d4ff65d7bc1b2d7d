"""
Transitions between consecutive configurations
==============================================

Neighbouring configurations share a difference, so configuration ``j``
can follow ``i`` only when the last sign of ``i`` equals the first sign
of ``j``.  Of the 169 cells of the transition matrix, 59 are possible.
"""

import numpy as np

from tsgeom import GeneratorSpec, block_views, count_transitions, generate, symbolize, validity_mask

mask = validity_mask()
print(mask.sum(), "admissible transitions")
print(mask.astype(int))

###############################################################################
# On white noise every transition stays within the abundant 6x6 block.
noise = generate(GeneratorSpec("white_noise", duration=60, sample_rate=256, seed=1))
t = count_transitions(symbolize(noise))
print(np.round(block_views(t).abundant_abundant, 3))
print(block_views(t).sums())

###############################################################################
# Integer-valued data has frequent ties and so reaches the sparse
# configurations as well.
steps = np.random.default_rng(2).integers(-1, 2, 5000).cumsum().astype(float)
t = count_transitions(symbolize(steps))
print(block_views(t).sums())
print(np.round(t.row_stochastic()[8], 3))
