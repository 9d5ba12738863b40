import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from productdecomp import (
    LocalFrame,
    apply_local_frame,
    basis_state,
    ghz_state,
    kappa,
    leading_split,
    leading_vector,
    random_state,
)
from productdecomp.errors import LeadingUndefinedError
from productdecomp.oracle import naive_leading_vector, random_product

from .helpers import SQ2

SINGLES = {l: [1 << k for k in range(l)] for l in range(1, 25)}


def test_leading_vector_ghz(ghz3):
    lv = leading_vector(ghz3)
    assert np.abs(lv.amplitudes - basis_state(3, 0).amplitudes * SQ2).max() <= 1e-15


def test_leading_vector_of_product_is_itself():
    rng = np.random.default_rng(2)
    for trial in range(50):
        h = random_product(2 + trial % 5, rng)
        assert (leading_vector(h) - h).norm <= 1e-10 * h.norm


def test_homogeneity():
    rng = np.random.default_rng(3)
    for trial in range(100):
        h = random_state(1 + trial % 7, trial)
        lam = complex(*rng.standard_normal(2))
        diff = leading_vector(h * lam).amplitudes - lam * leading_vector(h).amplitudes
        assert np.abs(diff).max() <= 1e-12 * abs(lam) * leading_vector(h).norm
    h = random_state(4, 0)
    assert np.allclose(leading_vector(h * 2).amplitudes, 2 * leading_vector(h).amplitudes, rtol=0, atol=1e-15)


def test_undefined_for_vanishing_empty_amplitude():
    with pytest.raises(LeadingUndefinedError):
        leading_vector(basis_state(3, 0b101))


def test_split_ghz(ghz3):
    split = leading_split(ghz3)
    assert np.allclose(split.leading.amplitudes, basis_state(3, 0).amplitudes * SQ2, atol=1e-15)
    assert np.allclose(split.residual.amplitudes, basis_state(3, 7).amplitudes * SQ2, atol=1e-15)
    assert split.residual.nonzero_count() == 1
    assert split.kappa == pytest.approx(0.5)


def test_split_of_product_has_no_residual():
    h = random_product(4, np.random.default_rng(0))
    assert np.abs(leading_split(h).residual.amplitudes).max() <= 1e-10 * h.norm


@given(l=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_split_cancellation_and_count(l, seed):
    h = random_state(l, seed)
    split = leading_split(h)
    res = split.residual.amplitudes
    # h - lv is formed in floating point, so the round trip is exact up to eps * |lv|
    scale = max(h.norm, split.leading.norm)
    assert np.abs((split.leading + split.residual).amplitudes - h.amplitudes).max() <= 1e-14 * scale
    assert np.abs(res[[0] + SINGLES[l]]).max() <= 1e-12 * h.norm
    assert split.leading[0] == h[0]
    assert np.array_equal(split.leading.amplitudes[SINGLES[l]], h.amplitudes[SINGLES[l]])
    assert split.residual.nonzero_count() <= 2**l - l - 1


def test_split_count_l3():
    for seed in range(100):
        assert leading_split(random_state(3, seed)).residual.nonzero_count() <= 4


def test_closed_form_matches_kron_expansion():
    for l in range(1, 5):
        for seed in range(25):
            h = random_state(l, seed)
            assert np.abs(leading_vector(h).amplitudes - naive_leading_vector(h).amplitudes).max() <= 1e-10


def test_log_path_matches_kron_expansion():
    # |h0| below 1e-3 |h| switches to the log-magnitude expansion
    for l in (2, 4, 6):
        h = random_state(l, l).amplitudes.copy()
        h[0] = 3e-5 * np.exp(0.7j)
        lv, ref = leading_vector(h).amplitudes, naive_leading_vector(h).amplitudes
        assert np.abs(lv - ref).max() <= 1e-10 * np.abs(ref).max()


def test_log_path_large_register_is_finite():
    h = random_state(14, 0).amplitudes.copy()
    h[0] = 1e-9
    lv = leading_vector(h).amplitudes
    assert np.all(np.isfinite(lv))


def test_kappa_examples(ghz3):
    assert kappa(basis_state(3, 0), LocalFrame.identity(3)) == pytest.approx(1.0)
    assert kappa(ghz3, LocalFrame.identity(3)) == pytest.approx(0.5, rel=1e-14)


def test_kappa_is_leading_vector_norm():
    rng = np.random.default_rng(7)
    for trial in range(100):
        l = 1 + trial % 6
        h = random_state(l, trial)
        f = LocalFrame.random(l, rng)
        expected = leading_vector(apply_local_frame(h, f)).squared_norm
        assert abs(kappa(h, f) - expected) <= 1e-10 * expected


def test_orthogonal_when_singles_vanish():
    rng = np.random.default_rng(1)
    for l in range(2, 7):
        h = random_state(l, l).amplitudes.copy()
        h[SINGLES[l]] = 0
        split = leading_split(h)
        assert np.allclose(split.leading.amplitudes, basis_state(l, 0).amplitudes * h[0], atol=0)
        inner = np.vdot(split.leading.amplitudes, split.residual.amplitudes)
        assert abs(inner) <= 1e-12 * np.linalg.norm(h) ** 2
