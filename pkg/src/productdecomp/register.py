"""Register states as chains over the face complex of a simplex.

An ``l``-bit register state is a vector of ``2**l`` complex amplitudes. Each
basis label is read as a subset of the vertices ``{1, ..., l}``: amplitude
index ``i`` has bit ``k`` set in binary digit ``k - 1`` (bit 1 is the least
significant digit). Index ``0`` is the empty simplex, index ``1 << (k - 1)``
is the single vertex ``{k}``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ShapeError, ValidationError

MAX_BITS = 24
UNITARY_TOL = 1e-12


def simplex_dimension(bits):
    """Dimension of the simplex encoded by ``bits``: vertex count minus one.

    The empty simplex (``bits == 0``) has dimension -1.
    """
    if bits < 0:
        raise RangeError(f"simplex bitmask must be nonnegative, got {bits}")
    return int(bits).bit_count() - 1


def simplex_vertices(bits):
    """1-based vertex labels present in ``bits``, in increasing order."""
    return tuple(k + 1 for k in range(int(bits).bit_length()) if bits >> k & 1)


def simplex_from_vertices(vertices):
    """Inverse of :func:`simplex_vertices`."""
    bits = 0
    for v in vertices:
        if v < 1:
            raise RangeError(f"vertices are numbered from 1, got {v}")
        bits |= 1 << (v - 1)
    return bits


def popcounts(l):
    """Array of popcounts of ``0 .. 2**l - 1``."""
    idx = np.arange(1 << l, dtype=np.int64)
    counts = np.zeros(1 << l, dtype=np.int64)
    for k in range(l):
        counts += (idx >> k) & 1
    return counts


@dataclass(frozen=True, eq=False)
class RegisterState:
    """Immutable amplitude vector of an ``l``-bit register.

    Accepts any array-like of length ``2**l`` with ``1 <= l <= 24``; the data is
    copied to a read-only ``complex128`` array.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        n = amps.size
        if n < 2 or n & (n - 1):
            raise ShapeError(f"amplitude count must be a power of two >= 2, got {n}")
        if n.bit_length() - 1 > MAX_BITS:
            raise RangeError(f"at most {MAX_BITS} bits are supported")
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def l(self):
        return self.amplitudes.size.bit_length() - 1

    @property
    def squared_norm(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def __len__(self):
        return self.amplitudes.size

    def __getitem__(self, bits):
        return self.amplitudes[bits]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.amplitudes
        return self.amplitudes.astype(dtype)

    def __add__(self, other):
        return RegisterState(self.amplitudes + as_state(other).amplitudes)

    def __sub__(self, other):
        return RegisterState(self.amplitudes - as_state(other).amplitudes)

    def __mul__(self, scalar):
        return RegisterState(self.amplitudes * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        return f"RegisterState(l={self.l}, norm={self.norm:.6g})"

    def tensor(self):
        """Amplitudes as an ``l``-axis array; axis 0 is bit ``l``, the last axis bit 1."""
        return self.amplitudes.reshape((2,) * self.l)

    def nonzero_count(self, zero_tol=1e-12):
        """Number of amplitudes with modulus above ``zero_tol * norm``."""
        return int(np.count_nonzero(np.abs(self.amplitudes) > zero_tol * self.norm))


def as_state(h):
    """Coerce an array-like or :class:`RegisterState` to a :class:`RegisterState`."""
    if isinstance(h, RegisterState):
        return h
    return RegisterState(h)


def basis_state(l, bits):
    amps = np.zeros(1 << l, dtype=np.complex128)
    amps[bits] = 1.0
    return RegisterState(amps)


def ghz_state(l):
    """``(|0...0> + |1...1>) / sqrt(2)``."""
    amps = np.zeros(1 << l, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return RegisterState(amps)


def w_state(l):
    """Equal superposition of the ``l`` single-excitation labels."""
    amps = np.zeros(1 << l, dtype=np.complex128)
    amps[[1 << k for k in range(l)]] = 1 / np.sqrt(l)
    return RegisterState(amps)


def product_state(factors):
    """Explicit tensor product; ``factors[k - 1]`` is the 2-vector on bit ``k``."""
    amps = np.ones(1, dtype=np.complex128)
    for f in factors:
        # bit k lands at binary digit k - 1, so each new factor becomes more significant
        amps = np.kron(np.asarray(f, dtype=np.complex128), amps)
    return RegisterState(amps)


def skeleton(h, n, include_zeros=False, zero_tol=1e-12):
    """``(bits, amplitude)`` pairs of all simplices of dimension ``n``.

    With ``include_zeros=False`` entries with modulus at most ``zero_tol * norm``
    are dropped.
    """
    h = as_state(h)
    if not -1 <= n <= h.l - 1:
        raise RangeError(f"skeleton dimension must be in [-1, {h.l - 1}], got {n}")
    idx = np.flatnonzero(popcounts(h.l) == n + 1)
    amps = h.amplitudes[idx]
    if not include_zeros:
        keep = np.abs(amps) > zero_tol * h.norm
        idx, amps = idx[keep], amps[keep]
    return [(int(i), complex(a)) for i, a in zip(idx, amps)]


def random_state(l, seed):
    """Normalized vector of ``2**l`` i.i.d. standard complex Gaussians."""
    if not 1 <= l <= MAX_BITS:
        raise RangeError(f"l must be in [1, {MAX_BITS}], got {l}")
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(1 << l) + 1j * rng.standard_normal(1 << l)
    return RegisterState(amps / np.linalg.norm(amps))


def random_unitary(rng):
    """Haar-random 2x2 unitary (QR of a complex Ginibre matrix with phase fix)."""
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def check_unitary(u, tol=UNITARY_TOL):
    """Return ``u`` as a 2x2 complex array, raising if ``u u^dagger != 1``."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ShapeError(f"local unitary must be 2x2, got shape {u.shape}")
    err = np.abs(u @ u.conj().T - np.eye(2)).max()
    if not err <= tol:
        raise ValidationError(f"matrix is not unitary (deviation {err:.3g} > {tol:g})")
    return u


@dataclass(frozen=True, eq=False)
class LocalFrame:
    """One 2x2 unitary per bit; ``unitaries[m - 1]`` acts on bit ``m``."""

    unitaries: np.ndarray

    def __post_init__(self):
        us = np.array(self.unitaries, dtype=np.complex128)
        if us.ndim != 3 or us.shape[1:] != (2, 2):
            raise ShapeError(f"frame must have shape (l, 2, 2), got {us.shape}")
        for u in us:
            check_unitary(u)
        us.setflags(write=False)
        object.__setattr__(self, "unitaries", us)

    @classmethod
    def identity(cls, l):
        return cls(np.broadcast_to(np.eye(2), (l, 2, 2)))

    @classmethod
    def random(cls, l, rng):
        return cls(np.stack([random_unitary(rng) for _ in range(l)]))

    @property
    def l(self):
        return len(self.unitaries)

    def __len__(self):
        return len(self.unitaries)

    def __getitem__(self, k):
        return self.unitaries[k]

    def dagger(self):
        """Frame of inverse unitaries."""
        return LocalFrame(self.unitaries.conj().transpose(0, 2, 1))

    def then(self, other):
        """Frame equal to applying ``self`` first and ``other`` second."""
        if other.l != self.l:
            raise ShapeError("frames act on registers of different length")
        return LocalFrame(other.unitaries @ self.unitaries)

    def matrix(self):
        """Dense ``2**l x 2**l`` operator; for small ``l`` only."""
        out = np.ones((1, 1), dtype=np.complex128)
        for u in self.unitaries:
            out = np.kron(u, out)
        return out


def apply_bit(amps, u, m):
    """Apply the 2x2 matrix ``u`` to bit ``m`` of a flat amplitude array."""
    l = amps.size.bit_length() - 1
    v = amps.reshape(1 << (l - m), 2, 1 << (m - 1))
    out = np.empty_like(v)
    v0, v1 = v[:, 0], v[:, 1]
    out[:, 0] = u[0, 0] * v0 + u[0, 1] * v1
    out[:, 1] = u[1, 0] * v0 + u[1, 1] * v1
    return out.reshape(-1)


def apply_local_frame(h, frame):
    """Express ``h`` in the frame: returns ``(U_1 x ... x U_l) h``."""
    h = as_state(h)
    if not isinstance(frame, LocalFrame):
        frame = LocalFrame(frame)
    if frame.l != h.l:
        raise ShapeError(f"frame has {frame.l} unitaries but the register has {h.l} bits")
    amps = h.amplitudes
    eye = np.eye(2)
    for m, u in enumerate(frame.unitaries, start=1):
        if not np.array_equal(u, eye):
            amps = apply_bit(amps, u, m)
    return RegisterState(amps)
