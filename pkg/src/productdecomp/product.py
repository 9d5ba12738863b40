"""Exchangeability conditions and exact factorization of product states.

A chain ``h`` is a product vector iff every exchangeability condition

    h^s h^t = h^(s - v) h^(t + v),   v in s, v not in t

holds. Checking every triple costs ``O(4**l * l)``. Once the empty-simplex
amplitude is nonzero it is enough to check, for each label ``i`` with at
least two vertices, the triple ``(i, {}, lowest vertex of i)``: those
conditions force ``h^i = prod_{k in i} h^{k} / (h^{})**(|i| - 1)``, which is the
expansion of a tensor product. Labels are first relabelled by bit flips so
that the largest amplitude sits at index 0.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    CostGuardError,
    DegenerateStateError,
    NotProductError,
    PreconditionError,
)
from .register import RegisterState, as_state, popcounts, product_state

DEFAULT_TOL = 1e-10
ZERO_TOL = 1e-12
FULL_SCAN_MAX_BITS = 12


def exchangeability_defect(h, s, t, v):
    """``h^s h^t - h^(s without v) h^(t with v)`` for a vertex ``v`` (1-based).

    Requires ``v`` in ``s`` and ``v`` not in ``t``.
    """
    h = as_state(h)
    if not 1 <= v <= h.l:
        raise PreconditionError(f"vertex must be in [1, {h.l}], got {v}")
    vb = 1 << (v - 1)
    if not s & vb:
        raise PreconditionError(f"vertex {v} is not in s={s:#b}")
    if t & vb:
        raise PreconditionError(f"vertex {v} is already in t={t:#b}")
    a = h.amplitudes
    return complex(a[s] * a[t] - a[s ^ vb] * a[t | vb])


def relabel_flips(h):
    """Bitmask of the flips moving the largest amplitude to index 0.

    Ties go to the smallest index.
    """
    return int(np.argmax(np.abs(as_state(h).amplitudes)))


def _flipped(amps, flips):
    return amps[np.arange(amps.size) ^ flips] if flips else amps


def _reduced_scan(h):
    """Worst defect of the reduced family, reported with original labels."""
    a = h.amplitudes
    flips = relabel_flips(h)
    g = _flipped(a, flips)
    idx = np.flatnonzero(popcounts(h.l) >= 2)
    if idx.size == 0:
        return 0j, None
    low = idx & -idx
    d = g[idx] * g[0] - g[idx ^ low] * g[low]
    j = int(np.argmax(np.abs(d)))
    i, vb = int(idx[j]), int(low[j])
    s, t = i ^ flips, flips
    if flips & vb:
        # the flip moved v from s to t; the same condition reads with s and t swapped
        s, t = t, s
    v = vb.bit_length()
    return exchangeability_defect(h, s, t, v), (s, t, v)


def _full_scan(h):
    """Worst defect over every valid ``(s, t, v)`` triple."""
    if h.l > FULL_SCAN_MAX_BITS:
        raise CostGuardError(f"full exchangeability scan is limited to l <= {FULL_SCAN_MAX_BITS}")
    a = h.amplitudes
    idx = np.arange(a.size)
    best, best_triple = 0j, None
    for v in range(1, h.l + 1):
        vb = 1 << (v - 1)
        s_idx = idx[(idx & vb) != 0]
        t_idx = idx[(idx & vb) == 0]
        d = np.outer(a[s_idx], a[t_idx]) - np.outer(a[s_idx ^ vb], a[t_idx | vb])
        j = np.unravel_index(np.argmax(np.abs(d)), d.shape)
        if best_triple is None or abs(d[j]) > abs(best):
            best = complex(d[j])
            best_triple = (int(s_idx[j[0]]), int(t_idx[j[1]]), v)
    return best, best_triple


def worst_defect(h, method="reduced"):
    """Largest exchangeability defect and its ``(s, t, v)`` triple.

    ``method`` is ``"reduced"`` (``O(2**l)``) or ``"full"`` (every triple).
    For ``l == 1`` there are no conditions; returns ``(0j, None)``.
    """
    h = as_state(h)
    if method == "reduced":
        return _reduced_scan(h)
    if method == "full":
        return _full_scan(h)
    raise ValueError(f"unknown method {method!r}")


def is_product(h, tol=DEFAULT_TOL, method="reduced"):
    """True iff every exchangeability defect is at most ``tol * |h|**2``."""
    h = as_state(h)
    sq = h.squared_norm
    if sq == 0:
        raise DegenerateStateError("degenerate input: zero vector")
    d, _ = worst_defect(h, method)
    return abs(d) <= tol * sq


def _wrap_phase(x):
    y = float(np.angle(np.exp(1j * x)))
    return np.pi if y <= -np.pi else y


@dataclass(frozen=True)
class ProductFactorization:
    """``scale * phase * kron_k (cos a_k |0> + exp(i p_k) sin a_k |1>)``.

    ``angles[k - 1]`` and ``phases[k - 1]`` belong to bit ``k``; ``flips`` is the
    bitmask of label swaps used while reconstructing the factors.
    """

    global_phase: complex
    overall_scale: float
    angles: tuple
    phases: tuple
    flips: int = 0

    def factors(self):
        return [
            np.array([np.cos(a), np.exp(1j * p) * np.sin(a)])
            for a, p in zip(self.angles, self.phases)
        ]

    def reconstruct(self):
        return product_state(self.factors()) * (self.overall_scale * self.global_phase)


def factorize_product(h, tol=DEFAULT_TOL):
    """Recover angles and phases of a product state.

    Raises :class:`NotProductError` (carrying the worst triple) if the
    exchangeability test fails at ``tol``.
    """
    h = as_state(h)
    scale = h.norm
    if scale == 0:
        raise DegenerateStateError("degenerate input: cannot factorize the zero vector")
    d, triple = worst_defect(h)
    if abs(d) > tol * scale**2:
        raise NotProductError(
            f"state is not a product: defect {abs(d):.3g} at (s, t, v) = {triple}",
            triple=triple,
            defect=d,
        )
    flips = relabel_flips(h)
    g = _flipped(h.amplitudes, flips) / scale
    phase = g[0] / abs(g[0])
    g = g / phase
    angles, phases = [], []
    for k in range(h.l):
        gk = g[1 << k]
        a = float(np.arctan2(abs(gk), g[0].real))
        p = float(np.angle(gk)) if np.sin(a) > ZERO_TOL else 0.0
        if flips >> k & 1:
            # (c, e^ip s) on swapped labels is e^ip (s, e^-ip c) on the originals
            phase *= np.exp(1j * p)
            a, p = np.pi / 2 - a, -p
            if np.sin(a) <= ZERO_TOL:
                p = 0.0
        angles.append(a)
        phases.append(_wrap_phase(p) if p else 0.0)
    return ProductFactorization(
        global_phase=complex(phase),
        overall_scale=scale,
        angles=tuple(angles),
        phases=tuple(phases),
        flips=flips,
    )
