import numpy as np

SQ2 = 1 / np.sqrt(2)

# max |(F h)_0| over local frames, from brute_force_max_leading(state, 10_000, seed=0)
GHZ3_MAX_LEADING = 0.7071067811865475
W3_MAX_LEADING = 0.6666666666666667


def expand_terms(d):
    """Sum of the explicitly expanded product terms (Kronecker products)."""
    return sum(t.expand().amplitudes for t in d.terms)


def max_pairwise_overlap(d):
    vecs = np.array([t.expand().amplitudes for t in d.terms])
    gram = vecs.conj() @ vecs.T
    np.fill_diagonal(gram, 0)
    return float(np.abs(gram).max()) if len(vecs) > 1 else 0.0
