"""
Recognising product states
==========================

A product of single-bit vectors satisfies one exchange identity per
(s, t, v) triple. A linear-size subset of those identities already decides
the question, and the full quadratic scan is kept for cross-checks.
"""

import numpy as np

from productdecomp import NotProductError, factorize_product, ghz_state, is_product, product_state, worst_defect

rng = np.random.default_rng(3)
factors = [rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(4)]
p = product_state(factors)

print("random product passes:", is_product(p), "| full scan agrees:", is_product(p, method="full"))

# Angles and phases per bit, plus one overall scale and phase
f = factorize_product(p)
print("angles:", np.round(f.angles, 4))
print("phases:", np.round(f.phases, 4))
print("round-trip error:", np.abs(f.reconstruct().amplitudes - p.amplitudes).max())

# An entangled state fails, and the witness triple says where
ghz = ghz_state(3)
defect, triple = worst_defect(ghz)
print("GHZ worst defect:", abs(defect), "at (s, t, v) =", triple)
try:
    factorize_product(ghz)
except NotProductError as err:
    print("factorize_product refused:", err)
