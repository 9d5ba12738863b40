"""Orthogonal product-state decomposition of multi-bit register states.

A state of ``l`` two-level systems is rotated by one unitary per bit until
every single-excitation amplitude vanishes; it then splits into its leading
product vector plus at most ``2**l - l - 1`` computational-basis terms of the
optimized frame.
"""

from .decomposer import (
    Decomposition,
    Diagnostics,
    OptimizationResult,
    OptimizerConfig,
    ProductTerm,
    decompose,
    optimize_frame,
    sweep_update_bit,
    term_count,
)
from .errors import (
    CostGuardError,
    DecompError,
    DegenerateStateError,
    LeadingUndefinedError,
    NotProductError,
    PreconditionError,
    RangeError,
    ShapeError,
    ValidationError,
)
from .leading import LeadingSplit, kappa, leading_split, leading_vector
from .oracle import (
    SchmidtResult,
    brute_force_max_leading,
    naive_leading_vector,
    schmidt_svd,
)
from .product import (
    ProductFactorization,
    exchangeability_defect,
    factorize_product,
    is_product,
    worst_defect,
)
from .register import (
    LocalFrame,
    RegisterState,
    apply_local_frame,
    basis_state,
    ghz_state,
    product_state,
    random_state,
    simplex_dimension,
    simplex_vertices,
    skeleton,
    w_state,
)
from .serialize import TOOL_VERSION as __version__
