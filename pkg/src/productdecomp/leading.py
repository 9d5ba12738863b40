"""Leading vector of a chain, its residual, and the squared-norm objective.

For ``h`` with a nonzero empty-simplex amplitude ``h0`` the leading vector is

    lv(h) = h0**(1 - l) * kron_k (h0 |0> + h^{k} |1>),

equivalently ``lv(h)^s = h0 * prod_{k in s} (h^{k} / h0)``. It is a product
state that agrees with ``h`` on the empty simplex and all single vertices, so
``h - lv(h)`` has at most ``2**l - l - 1`` nonzero amplitudes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import LeadingUndefinedError
from .register import RegisterState, apply_local_frame, as_state

ZERO_TOL = 1e-12
# below this |h0| / |h| the expansion is carried out in log-magnitude form
LOG_PATH_THRESHOLD = 1e-3


def _require_leading(h, zero_tol):
    h0 = h.amplitudes[0]
    if not abs(h0) > zero_tol * h.norm:
        raise LeadingUndefinedError(
            f"empty-simplex amplitude {abs(h0):.3g} is below {zero_tol:g} * |h|; "
            "relabel or optimize the frame first"
        )
    return h0


def _expand(values, op, start):
    # entry i combines values[k] for every bit k set in i
    out = np.array([start])
    for v in values:
        out = np.concatenate([out, op(out, v)])
    return out


def leading_vector(h, zero_tol=ZERO_TOL):
    h = as_state(h)
    h0 = _require_leading(h, zero_tol)
    singles = h.amplitudes[[1 << k for k in range(h.l)]]
    if abs(h0) >= LOG_PATH_THRESHOLD * h.norm:
        lv = h0 * _expand(singles / h0, np.multiply, 1.0 + 0j)
    else:
        with np.errstate(divide="ignore"):
            logmag = np.log(np.abs(singles)) - np.log(abs(h0))
        mag = _expand(logmag, np.add, 0.0)
        arg = _expand(np.angle(singles) - np.angle(h0), np.add, 0.0)
        lv = h0 * np.exp(mag) * np.exp(1j * arg)
    # these l + 1 entries equal h's by construction; pin them so the residual cancels exactly
    lv[0] = h0
    lv[[1 << k for k in range(h.l)]] = singles
    return RegisterState(lv)


@dataclass(frozen=True)
class LeadingSplit:
    leading: RegisterState
    residual: RegisterState
    kappa: float


def leading_split(h, zero_tol=ZERO_TOL):
    """Split ``h`` into its leading vector and the residual ``h - lv(h)``."""
    h = as_state(h)
    lv = leading_vector(h, zero_tol)
    return LeadingSplit(leading=lv, residual=h - lv, kappa=lv.squared_norm)


def kappa(h, frame, zero_tol=ZERO_TOL):
    """Squared norm of the leading vector of ``h`` expressed in ``frame``.

    ``|g0|**(2 - 2l) * prod_k (|g0|**2 + |g^{k}|**2)`` with ``g = frame . h``.
    """
    g = apply_local_frame(h, frame)
    g0 = _require_leading(g, zero_tol)
    p0 = abs(g0) ** 2
    singles = np.abs(g.amplitudes[[1 << k for k in range(g.l)]]) ** 2
    return float(np.exp(np.sum(np.log(p0 + singles)) - (g.l - 1) * np.log(p0)))
