"""JSON state files and reports.

State file: ``{"l": <int>, "amplitudes": [[re, im], ...]}`` with ``2**l``
entries; entry ``i`` has bit ``k`` at binary digit ``k - 1``. Floats are written
with ``repr`` so every double survives a round trip unchanged.
"""

import hashlib
import json
from dataclasses import asdict

import numpy as np

from .errors import DecompError
from .register import MAX_BITS, RegisterState, as_state

TOOL_VERSION = "0.1.0"


class InputError(DecompError):
    """A state file is malformed or violates the format constraints."""


def complex_to_json(z):
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair):
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
    ):
        raise InputError(f"complex numbers must be [re, im] pairs of numbers, got {pair!r}")
    return complex(pair[0], pair[1])


def vector_to_json(v):
    return [complex_to_json(z) for z in np.asarray(v).reshape(-1)]


def state_to_dict(h):
    h = as_state(h)
    return {"l": h.l, "amplitudes": vector_to_json(h.amplitudes)}


def state_from_dict(obj):
    if not isinstance(obj, dict):
        raise InputError("state file must contain a JSON object")
    for key in ("l", "amplitudes"):
        if key not in obj:
            raise InputError(f"state file is missing the {key!r} field")
    l = obj["l"]
    if not isinstance(l, int) or isinstance(l, bool) or not 1 <= l <= MAX_BITS:
        raise InputError(f"'l' must be an integer in [1, {MAX_BITS}], got {l!r}")
    amps = obj["amplitudes"]
    if not isinstance(amps, list):
        raise InputError("'amplitudes' must be a list of [re, im] pairs")
    if len(amps) != 1 << l:
        raise InputError(f"expected {1 << l} amplitudes for l = {l}, got {len(amps)}")
    return RegisterState(np.array([complex_from_json(p) for p in amps], dtype=np.complex128))


def dumps(obj):
    return json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n"


def dump_state(h):
    return dumps(state_to_dict(h))


def load_state(path):
    try:
        with open(path) as f:
            obj = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}") from e
    return state_from_dict(obj)


def state_digest(h):
    return "sha256:" + hashlib.sha256(h.amplitudes.astype("<c16").tobytes()).hexdigest()


def frame_to_json(frame):
    return [[vector_to_json(row) for row in u] for u in frame.unitaries]


def decomposition_to_dict(d):
    return {
        "terms": [
            {"coefficient": complex_to_json(t.coefficient), "factors": [vector_to_json(f) for f in t.factors]}
            for t in d.terms
        ],
        "labels": [int(x) for x in d.labels],
        "leading_index": d.leading_index,
        "frame": frame_to_json(d.frame),
    }


def terms_from_dict(obj):
    """``(coefficient, factors)`` pairs of a serialized decomposition."""
    return [
        (
            complex_from_json(t["coefficient"]),
            np.array([[complex_from_json(z) for z in f] for f in t["factors"]]),
        )
        for t in obj["terms"]
    ]


def diagnostics_to_dict(diag):
    return asdict(diag)


def report(command, result, diagnostics=None, digest=None):
    return {
        "tool_version": TOOL_VERSION,
        "command": command,
        "input_digest": digest,
        "result": result,
        "diagnostics": diagnostics,
    }
