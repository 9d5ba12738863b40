"""Independent reference computations used to cross-check the decomposer.

None of these share code with the sweep optimizer: the two-bit case goes
through a closed-form singular value decomposition, the maximal leading
amplitude for three bits or fewer is found by random search plus a
quasi-Newton polish, and the leading vector is expanded literally with
Kronecker products.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import CostGuardError, PreconditionError, RangeError, ShapeError
from .leading import _require_leading
from .register import as_state, product_state

BRUTE_FORCE_MAX_BITS = 3
NAIVE_MAX_BITS = 10
MIN_SAMPLES = 10_000


@dataclass(frozen=True)
class SchmidtResult:
    sigma: tuple
    left_vectors: tuple
    right_vectors: tuple

    def reconstruct(self):
        out = 0
        for s, a, b in zip(self.sigma, self.left_vectors, self.right_vectors):
            out = out + product_state([a, b]).amplitudes * s
        return as_state(out)


def _complement(v):
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def schmidt_svd(h):
    """Schmidt decomposition of a two-bit state.

    Uses the matrix ``M[a, b] = h[a + 2 b]`` (bit 1 indexes rows). Singular
    values come from the eigenvalues of ``M^dagger M``; the smaller one is taken
    as ``|det M| / sigma_1`` for accuracy. ``left_vectors`` are the bit-1 factors,
    ``right_vectors`` the bit-2 factors.
    """
    h = as_state(h)
    if h.l != 2:
        raise ShapeError(f"Schmidt oracle needs exactly 2 bits, got {h.l}")
    m = h.amplitudes.reshape(2, 2).T
    a = m.conj().T @ m
    p, q, b = a[0, 0].real, a[1, 1].real, a[0, 1]
    lam = 0.5 * (p + q + np.sqrt((p - q) ** 2 + 4 * abs(b) ** 2))
    c1 = np.array([b, lam - p])
    c2 = np.array([lam - q, np.conj(b)])
    v1 = c1 if np.linalg.norm(c1) >= np.linalg.norm(c2) else c2
    nv = np.linalg.norm(v1)
    v1 = v1 / nv if nv > 0 else np.array([1.0 + 0j, 0.0])
    v2 = _complement(v1)

    x1 = m @ v1
    s1 = float(np.linalg.norm(x1))
    u1 = x1 / s1 if s1 > 0 else np.array([1.0 + 0j, 0.0])
    u2 = _complement(u1)
    c = np.vdot(u2, m @ v2)
    s2 = float(abs(c))
    if s2 > 0:
        u2 = u2 * (c / s2)
    return SchmidtResult(
        sigma=(s1, s2),
        left_vectors=(u1, u2),
        right_vectors=(v1.conj(), v2.conj()),
    )


def _first_rows(theta, phi):
    return np.stack([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], axis=-1)


def _leading_amplitudes(amps, rows):
    """``|sum_s prod_k rows[:, k, s_k] h^s|`` for rows of shape ``(N, l, 2)``."""
    vec = np.ones((rows.shape[0], 1), dtype=np.complex128)
    for k in range(rows.shape[1]):
        vec = (rows[:, k, :, None] * vec[:, None, :]).reshape(rows.shape[0], -1)
    return np.abs(vec @ amps)


def random_frame_angles(l, samples, rng):
    """Three uniform angles per bit; the third (a row phase) never affects ``|g0|``."""
    theta = rng.uniform(0, np.pi / 2, (samples, l))
    phi = rng.uniform(-np.pi, np.pi, (samples, l))
    chi = rng.uniform(-np.pi, np.pi, (samples, l))
    return theta, phi, chi


def brute_force_max_leading(h, samples=MIN_SAMPLES, seed=0, polish=10):
    """Lower bound on ``max_F |(F h)_0|`` over local frames.

    Evaluates ``samples`` random frames, then polishes the best ``polish`` of
    them with BFGS over the first-row angles.
    """
    h = as_state(h)
    if h.l > BRUTE_FORCE_MAX_BITS:
        raise CostGuardError(f"brute-force search is limited to l <= {BRUTE_FORCE_MAX_BITS}")
    if samples < MIN_SAMPLES:
        raise PreconditionError(f"need at least {MIN_SAMPLES} samples, got {samples}")
    l, amps = h.l, h.amplitudes
    rng = np.random.default_rng(seed)
    theta, phi, _ = random_frame_angles(l, samples, rng)
    vals = _leading_amplitudes(amps, _first_rows(theta, phi))
    best = float(vals.max())

    def objective(x):
        rows = _first_rows(x[:l], x[l:])[None]
        return -_leading_amplitudes(amps, rows)[0] ** 2

    for i in np.argsort(vals)[::-1][:polish]:
        x0 = np.concatenate([theta[i], phi[i]])
        res = minimize(objective, x0, method="BFGS", options={"gtol": 1e-12})
        best = max(best, float(np.sqrt(max(-res.fun, 0.0))))
    return best


def naive_leading_vector(h, zero_tol=1e-12):
    """Leading vector by literal Kronecker expansion followed by the scalar division."""
    h = as_state(h)
    if h.l > NAIVE_MAX_BITS:
        raise CostGuardError(f"naive expansion is limited to l <= {NAIVE_MAX_BITS}")
    h0 = _require_leading(h, zero_tol)
    out = np.ones(1, dtype=np.complex128)
    for k in range(h.l):
        out = np.kron(np.array([h0, h.amplitudes[1 << k]]), out)
    return as_state(out / h0 ** (h.l - 1))


def random_product(l, rng):
    """Explicit tensor product of ``l`` random unit 2-vectors (with a random scale)."""
    z = rng.standard_normal((l, 2)) + 1j * rng.standard_normal((l, 2))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    scale = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    return product_state(z) * scale


def verify_suite(l, trials, seed=0, cfg=None, samples=MIN_SAMPLES):
    """Cross-check the main modules against the oracles on random inputs.

    Returns a list of ``(name, passed, worst)`` where ``worst`` is the largest
    violation observed (0 for pure pass/fail properties).
    """
    from .decomposer import OptimizerConfig, decompose
    from .leading import leading_vector
    from .product import factorize_product, is_product
    from .register import random_state

    if not 1 <= l <= BRUTE_FORCE_MAX_BITS:
        raise RangeError(f"verification runs at 1 <= l <= {BRUTE_FORCE_MAX_BITS}, got {l}")
    cfg = cfg or OptimizerConfig(seed=seed)
    rng = np.random.default_rng(seed)
    worst = {
        "reconstruction": 0.0,
        "stationarity": 0.0,
        "pythagoras": 0.0,
        "term-count-bound": 0.0,
        "naive-leading-vector": 0.0,
        "product-round-trip": 0.0,
        "product-single-term": 0.0,
        "reduced-vs-full-scan": 0.0,
    }
    if l == 2:
        worst["schmidt-equivalence"] = 0.0
    worst["brute-force-bound"] = 0.0
    tols = {
        "reconstruction": 1e-10,
        "stationarity": 1e-10,
        "pythagoras": 1e-10,
        "naive-leading-vector": 1e-10,
        "product-round-trip": 1e-10,
        "schmidt-equivalence": 1e-8,
        "brute-force-bound": 1e-6,
    }
    bound = 2**l - l
    for i in range(trials):
        h = random_state(l, int(rng.integers(2**31)))
        d = decompose(h, cfg)
        diag = d.diagnostics
        worst["reconstruction"] = max(worst["reconstruction"], diag.reconstruction_error)
        if diag.converged:
            worst["stationarity"] = max(worst["stationarity"], diag.max_single_excitation)
            gap = abs(diag.leading_sq_norm + diag.residual_sq_norm - h.squared_norm)
            worst["pythagoras"] = max(worst["pythagoras"], gap)
            worst["term-count-bound"] = max(worst["term-count-bound"], float(len(d) > bound))
        else:
            worst["stationarity"] = np.inf
        lead = abs(d.coefficients[0])
        if l == 2:
            s1 = schmidt_svd(h).sigma[0]
            worst["schmidt-equivalence"] = max(worst["schmidt-equivalence"], abs(s1 - lead))
        bf = brute_force_max_leading(h, samples, seed=i)
        worst["brute-force-bound"] = max(worst["brute-force-bound"], bf - lead)
        if abs(h.amplitudes[0]) > 1e-12:
            diff = np.abs(leading_vector(h).amplitudes - naive_leading_vector(h).amplitudes).max()
            worst["naive-leading-vector"] = max(worst["naive-leading-vector"], diff)

        p = random_product(l, rng)
        fac = factorize_product(p)
        err = np.abs(fac.reconstruct().amplitudes - p.amplitudes).max() / p.norm
        worst["product-round-trip"] = max(worst["product-round-trip"], err)
        worst["product-single-term"] = max(
            worst["product-single-term"], float(len(decompose(p, cfg)) != 1)
        )
        for x in (h, p):
            if is_product(x) != is_product(x, method="full"):
                worst["reduced-vs-full-scan"] = 1.0
    return [(name, bool(v <= tols.get(name, 0.0)), float(v)) for name, v in worst.items()]
