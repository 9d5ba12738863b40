import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from productdecomp import (
    basis_state,
    exchangeability_defect,
    factorize_product,
    is_product,
    product_state,
    random_state,
    worst_defect,
)
from productdecomp.errors import DegenerateStateError, NotProductError, PreconditionError
from productdecomp.oracle import random_product

from .helpers import SQ2


def valid_triples(l):
    for s, t in itertools.product(range(1 << l), repeat=2):
        for v in range(1, l + 1):
            vb = 1 << (v - 1)
            if s & vb and not t & vb:
                yield s, t, v


def test_defect_bell(bell):
    assert exchangeability_defect(bell, 0b11, 0, 1) == pytest.approx(0.5)


def test_defect_basis_state_vanishes():
    h = basis_state(2, 0)
    assert all(exchangeability_defect(h, s, t, v) == 0 for s, t, v in valid_triples(2))


def test_defect_uniform_product():
    h = product_state([[1, 1], [1, 1]]) * 0.5
    assert exchangeability_defect(h, 0b01, 0b10, 1) == 0


def test_defect_preconditions():
    h = random_state(3, 0)
    with pytest.raises(PreconditionError):
        exchangeability_defect(h, 0b010, 0, 1)
    with pytest.raises(PreconditionError):
        exchangeability_defect(h, 0b001, 0b001, 1)
    with pytest.raises(PreconditionError):
        exchangeability_defect(h, 0b001, 0, 4)


def test_defect_is_bilinear():
    h = random_state(3, 4)
    for s, t, v in valid_triples(3):
        # scaling by 2 is exact in binary floating point
        assert exchangeability_defect(h * 2, s, t, v) == 4 * exchangeability_defect(h, s, t, v)
    lam = 0.3 - 1.7j
    for s, t, v in valid_triples(3):
        d = exchangeability_defect(h, s, t, v)
        assert abs(exchangeability_defect(h * lam, s, t, v) - lam**2 * d) <= 1e-14 * abs(lam) ** 2


def test_is_product_examples(bell):
    assert not is_product(bell)
    assert is_product(basis_state(5, 0))
    assert is_product(basis_state(3, 0b111))


def test_is_product_zero_state():
    with pytest.raises(DegenerateStateError):
        is_product(np.zeros(4))


def test_random_products_accepted_and_random_states_rejected():
    rng = np.random.default_rng(0)
    for trial in range(100):
        l = 2 + trial % 5
        assert is_product(random_product(l, rng), tol=1e-10)
        assert not is_product(random_state(l, trial), tol=1e-10)


@given(l=st.integers(2, 4), seed=st.integers(0, 2**32 - 1), product=st.booleans())
def test_reduced_scan_agrees_with_full(l, seed, product):
    h = random_product(l, np.random.default_rng(seed)) if product else random_state(l, seed)
    assert is_product(h) == is_product(h, method="full")


def test_full_scan_worst_matches_brute_loop():
    h = random_state(3, 8)
    best = max(abs(exchangeability_defect(h, *tr)) for tr in valid_triples(3))
    d, triple = worst_defect(h, method="full")
    assert abs(d) == pytest.approx(best, rel=1e-14)
    assert abs(exchangeability_defect(h, *triple)) == pytest.approx(best, rel=1e-14)


def test_reduced_triple_is_valid_after_relabel():
    # largest amplitude at index 3 forces flips on bits 1 and 2
    h = np.array([0.1, 0.2, 0.3, 0.9, 0.05, 0.0, 0.0, 0.2])
    d, (s, t, v) = worst_defect(h)
    assert d == exchangeability_defect(h, s, t, v)
    assert abs(d) > 0


def test_factorize_basis_state():
    fac = factorize_product(basis_state(3, 0))
    assert fac.angles == (0.0, 0.0, 0.0)
    assert fac.global_phase == 1
    assert fac.overall_scale == 1


def test_factorize_uniform():
    fac = factorize_product(product_state([[1, 1], [1, 1]]) * 0.5)
    assert np.allclose(fac.angles, [np.pi / 4, np.pi / 4], atol=1e-15)
    assert np.allclose(fac.phases, [0, 0], atol=1e-15)


def test_factorize_phase_example():
    h = product_state([[SQ2, 1j * SQ2], [1, 0]])
    fac = factorize_product(h)
    assert fac.angles[0] == pytest.approx(np.pi / 4, abs=1e-15)
    assert fac.phases[0] == pytest.approx(np.pi / 2, abs=1e-15)
    assert fac.angles[1] == 0
    assert fac.phases[1] == 0


def test_factorize_relabel_path():
    h = basis_state(2, 0b11)
    fac = factorize_product(h)
    assert fac.flips == 0b11
    assert np.allclose(fac.angles, [np.pi / 2, np.pi / 2])
    assert np.abs(fac.reconstruct().amplitudes - h.amplitudes).max() <= 1e-15


def test_factorize_rejects_entangled(bell):
    with pytest.raises(NotProductError) as exc:
        factorize_product(bell)
    assert exc.value.triple == (0b11, 0, 1)
    assert abs(exc.value.defect) == pytest.approx(0.5)


def per_simplex_product(fac, l):
    """h^s = scale * phase * prod_k ((1 - s_k) cos a_k + s_k e^{i p_k} sin a_k)."""
    out = np.empty(1 << l, dtype=complex)
    for s in range(1 << l):
        val = fac.overall_scale * fac.global_phase
        for k in range(l):
            sk = s >> k & 1
            a, p = fac.angles[k], fac.phases[k]
            val *= (1 - sk) * np.cos(a) + sk * np.exp(1j * p) * np.sin(a)
        out[s] = val
    return out


def test_factorization_round_trip():
    rng = np.random.default_rng(5)
    for trial in range(100):
        l = 1 + trial % 6
        h = random_product(l, rng)
        if trial % 4 == 0:
            # zero out |0> on some bits so the empty-simplex amplitude vanishes
            z = rng.standard_normal((l, 2)) + 1j * rng.standard_normal((l, 2))
            z[rng.random(l) < 0.5, 0] = 0
            z[0, 0] = 0
            h = product_state(z)
        fac = factorize_product(h)
        assert abs(abs(fac.global_phase) - 1) <= 1e-12
        assert all(0 <= a <= np.pi / 2 for a in fac.angles)
        assert all(-np.pi < p <= np.pi for p in fac.phases)
        for a, p in zip(fac.angles, fac.phases):
            if np.sin(a) <= 1e-12:
                assert p == 0
        assert np.abs(fac.reconstruct().amplitudes - h.amplitudes).max() <= 1e-10 * h.norm
        assert np.abs(per_simplex_product(fac, l) - h.amplitudes).max() <= 1e-10 * h.norm
