"""Exact linear algebra for matrices over multivariate polynomial rings.

Fraction-free Strassen-style inversion with content cancellation, plus the
oracles and instrumentation used to verify the degree-growth behaviour.
"""

from .content import (
    A11,
    DELTA,
    ContentPrediction,
    OpPath,
    ZeroMatrixError,
    extract_content,
    gcd_budget,
    predict_adj_content,
    predict_delta_content,
    predict_mixed_content,
)
from .fastmul import MulConfig, MulCounters, MulVariant, mul, mul_naive
from .ffinversion import (
    CancelPolicy,
    FFResult,
    SingularPivotError,
    det_only,
    ff_invert_v1,
    ff_invert_v2,
    schur_delta,
    verify_inverse,
)
from .oracle import bareiss_det, cofactor_adjugate, cofactor_det, principal_minor_det
from .polymatrix import (
    OddSizeError,
    PadMode,
    PolyMatrix,
    ScaledMatrix,
    SizeMismatchError,
    pad,
    pair_add,
    pair_mul,
    trim_adjugate,
)
from .polyring import (
    NEG_INF,
    NotDivisibleError,
    ParseError,
    Poly,
    RingMismatchError,
    gcd,
    normalized,
    parse,
)
from .profiling import DegreeProfile, NodeRecord, check_degree_laws, gcd_report

__version__ = "0.1.0"
