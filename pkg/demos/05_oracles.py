"""
Checking against independent oracles
====================================

Two bits reduce to a 2x2 singular value decomposition, and small registers
can be brute-forced over sampled local frames. Both are written without the
sweep, so agreement is real evidence.
"""

import numpy as np

from productdecomp import brute_force_max_leading, decompose, random_state, schmidt_svd, w_state
from productdecomp.oracle import verify_suite

h = random_state(2, seed=9)
print("Schmidt coefficients:", np.round(schmidt_svd(h).sigma, 12))
print("decomposer |c|:      ", np.round(sorted(np.abs(decompose(h).coefficients), reverse=True), 12))

w = w_state(3)
print("W3 best leading amplitude, brute force:", brute_force_max_leading(w))
print("W3 best leading amplitude, decomposer: ", abs(decompose(w).coefficients[0]))

# The packaged property sweep, as run by `productdecomp verify`
for name, passed, worst in verify_suite(3, trials=20, seed=0):
    print(f"  {'ok  ' if passed else 'FAIL'} {name:24s} worst = {worst:.2e}")
