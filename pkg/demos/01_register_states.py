"""
Register states and their simplex labels
========================================

A state of ``l`` two-level systems is a length ``2**l`` complex vector.
Amplitude ``i`` belongs to the set of bits that are 1 in ``i``; bit 1 is the
least significant binary digit. A set with ``n + 1`` bits has dimension ``n``.
"""

import numpy as np

from productdecomp import basis_state, ghz_state, random_state, simplex_dimension, simplex_vertices, skeleton, w_state

# label 0b101 holds bits 1 and 3, so it is an edge (dimension 1)
print("vertices of 0b101:", simplex_vertices(0b101), "dimension:", simplex_dimension(0b101))
print("dimension of the empty label:", simplex_dimension(0))

h = basis_state(3, 0b101)
print("basis state |101>:", np.flatnonzero(h.amplitudes))

# The GHZ state lives on the empty label and the full triangle
ghz = ghz_state(3)
for n in range(-1, 3):
    print(f"GHZ skeleton of dimension {n}:", skeleton(ghz, n))

# W puts equal weight on the three single bits
print("W vertices:", skeleton(w_state(3), 0))

# Seeded random states are reproducible
a, b = random_state(4, seed=11), random_state(4, seed=11)
print("same seed, same state:", np.array_equal(a.amplitudes, b.amplitudes), "norm:", a.norm)
