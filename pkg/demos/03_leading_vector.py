"""
The leading vector
==================

Given the empty-label amplitude ``h0`` and the single-bit amplitudes ``h^k``,
the leading vector is the one product state that agrees with ``h`` on those
``l + 1`` entries. Subtracting it leaves at most ``2**l - l - 1`` nonzero
entries.
"""

import numpy as np

from productdecomp import LocalFrame, kappa, leading_split, leading_vector, naive_leading_vector, random_state

h = random_state(3, seed=5)
split = leading_split(h)

print("agreement on the low entries:", np.abs(split.leading.amplitudes[[0, 1, 2, 4]] - h.amplitudes[[0, 1, 2, 4]]).max())
print("residual support:", np.flatnonzero(np.abs(split.residual.amplitudes) > 1e-12))
print("closed form vs explicit kron:", np.abs(leading_vector(h).amplitudes - naive_leading_vector(h).amplitudes).max())

# kappa is the squared norm of the leading vector after a local change of frame
frame = LocalFrame.random(3, np.random.default_rng(0))
print("kappa in the identity frame:", kappa(h, LocalFrame.identity(3)), "=", split.kappa)
print("kappa in a random frame:", kappa(h, frame))
