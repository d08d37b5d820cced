"""Fraction-free recursive inversion of polynomial matrices.

Two formulations are provided.  The first threads (matrix, denominator)
pairs through the textbook block-inversion identities verbatim, recursing to
size 1.  The second recurses to size 2 (a plain cofactor transpose), reads
the determinant off the recursion, and needs far fewer exact divisions; it
also hosts the content-cancellation policies: every Schur complement and
every adjugate received from recursion can be divided by its content before
further arithmetic, either by the predicted principal-minor power, by an
accumulated GCD of the entries, or by a GCD scan that stops early at the
predicted degree.  All policies reconstruct the same output pair exactly.

Both algorithms return B = d1 * Adj(A) and d2 = Det(A), satisfying
A*B = B*A = d1*d2*I exactly, and require every recursive pivot block to be
nonsingular; a zero pivot raises SingularPivotError carrying the recursion
path of the failing block.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .content import (
    A11,
    DELTA,
    ContentPrediction,
    OpPath,
    adj_prediction_for_path,
    extract_content,
    predict_mixed_content,
)
from .fastmul import MulConfig, MulCounters, MulVariant, mul, mul_naive
from .polymatrix import (
    OddSizeError,
    PadMode,
    PolyMatrix,
    ScaledMatrix,
    next_power_of_two,
    pad,
    pair_add,
    pair_mul,
    trim_adjugate,
)
from .polyring import NotDivisibleError, Poly
from .profiling import (
    KIND_A11,
    KIND_BASE,
    KIND_DELTA,
    KIND_DELTA_ADJ,
    DegreeProfile,
    NodeRecord,
)


class CancelPolicy(Enum):
    """How intermediate content is removed before further arithmetic.

    NONE reproduces the plain recursion; THEOREM divides by the predicted
    principal-minor power; GCD extracts content by pairwise GCDs of the
    entries; HYBRID extracts by GCDs but stops as soon as the predicted
    degree is reached.  All four yield identical output pairs.
    """

    NONE = "none"
    THEOREM = "theorem"
    GCD = "gcd"
    HYBRID = "hybrid"


class SingularPivotError(ArithmeticError):
    """A pivot block required to be nonsingular had determinant zero."""

    def __init__(self, path: OpPath, message: str = ""):
        super().__init__(message or f"singular pivot block at {path}")
        self.path = path


@dataclass
class FFResult:
    """Output pair of a fraction-free inversion plus its recursion profile."""

    adj_scaled: PolyMatrix
    det: Poly
    profile: DegreeProfile


def _coerce_poly(vars: tuple, value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly.const(vars, value)
    raise TypeError(f"expected Poly or int, got {type(value).__name__}")


def schur_delta(
    a: PolyMatrix,
    a11_adj: PolyMatrix,
    a11_det: Poly,
    cfg: MulConfig = MulConfig(),
    counters: MulCounters | None = None,
) -> PolyMatrix:
    """Fraction-free Schur complement a11_det*A22 - A21*a11_adj*A12."""
    if a.n % 2:
        raise OddSizeError(f"Schur complement needs an even size, got {a.n}")
    _, a12, a21, a22 = a.quadrants()
    if a11_adj.n != a.n // 2:
        raise ValueError("adjugate block size does not match the quadrants")
    return a11_det * a22 - mul(mul(a21, a11_adj, cfg, counters), a12, cfg, counters)


# -- shared context -----------------------------------------------------------


@dataclass
class _Ctx:
    root: PolyMatrix
    policy: CancelPolicy
    seed: int
    cfg: MulConfig
    counters: MulCounters
    profile: DegreeProfile
    d_units: int
    pred_cache: dict


def _node_seed(seed: int, path: OpPath, kind: str) -> int:
    s = (seed ^ 0x9E3779B9) & ((1 << 63) - 1)
    for op in path:
        s = (s * 1000003 + (1 if op == DELTA else 2)) % (1 << 63)
    if kind == KIND_DELTA_ADJ:
        s = (s * 1000003 + 3) % (1 << 63)
    return s


def _prediction_poly(ctx: _Ctx, pred: ContentPrediction) -> Poly:
    key = (pred.minor_size, pred.power)
    poly = ctx.pred_cache.get(key)
    if poly is None:
        poly = pred.polynomial(ctx.root)
        ctx.pred_cache[key] = poly
    return poly


def _cancel(
    m: PolyMatrix,
    pred: Optional[ContentPrediction],
    path: OpPath,
    kind: str,
    ctx: _Ctx,
):
    """Divide m by its content per policy; returns (content, quotient, record).

    `pred` is None when no closed-form prediction exists (mixed adjugates);
    those nodes are handled empirically by the GCD-based policies and left
    alone by THEOREM.
    """
    t0 = time.perf_counter()
    if m.is_zero():
        raise SingularPivotError(path, f"zero block at {path}")
    pre = int(m.max_degree())
    one = Poly.one(m.vars)
    predicted_abs = pred.predicted_degree * ctx.d_units if pred is not None else None

    content = one
    observed = None
    gcds = 0
    fell_back = False
    divides_flag = None

    skip_extraction = kind == KIND_DELTA_ADJ and m.n == 2
    if ctx.policy is CancelPolicy.NONE or skip_extraction:
        pass
    elif ctx.policy is CancelPolicy.THEOREM:
        if pred is not None and not pred.is_trivial:
            content = _prediction_poly(ctx, pred)
            observed = int(content.total_degree())
            divides_flag = True
    else:
        expected = predicted_abs if ctx.policy is CancelPolicy.HYBRID else None
        content, gcds = extract_content(m, expected, _node_seed(ctx.seed, path, kind))
        if expected is not None and int(content.total_degree()) != expected:
            fell_back = True
        observed = int(content.total_degree())
        if pred is not None and not pred.is_trivial:
            divides_flag = _prediction_poly(ctx, pred).divides(content)
        elif pred is not None:
            divides_flag = True

    if content.is_one():
        quotient = m
        content = one
    else:
        try:
            quotient = m.div_exact(content)
        except NotDivisibleError as exc:
            if ctx.policy is CancelPolicy.THEOREM:
                raise NotDivisibleError(
                    f"predicted content does not divide the block at {path}: {exc}",
                    path=path.ops,
                ) from exc
            # An early-stopped GCD candidate missed entries it never saw;
            # redo the scan in full, whose result always divides.
            content, extra = extract_content(m, None, _node_seed(ctx.seed, path, kind))
            gcds += extra
            fell_back = True
            observed = int(content.total_degree())
            quotient = m if content.is_one() else m.div_exact(content)

    record = NodeRecord(
        path=path,
        size=m.n,
        kind=kind,
        pre_cancel_degree=pre,
        post_cancel_degree=int(quotient.max_degree()),
        predicted_content_degree=predicted_abs,
        observed_content_degree=observed,
        gcd_invocations=gcds,
        predicted_divides_observed=divides_flag,
        fallback_full_scan=fell_back,
        wall_time=time.perf_counter() - t0,
    )
    return content, quotient, record


def _record_call(ctx: _Ctx, m: PolyMatrix, path: OpPath, elapsed: float) -> None:
    deg = m.max_degree()
    deg = int(deg) if not m.is_zero() else 0
    kind = KIND_BASE if m.n <= 2 else KIND_A11
    ctx.profile.record(
        NodeRecord(
            path=path,
            size=m.n,
            kind=kind,
            pre_cancel_degree=deg,
            post_cancel_degree=deg,
            wall_time=elapsed,
        )
    )


def _cofactor_transpose_2x2(m: PolyMatrix) -> tuple:
    (a, b), (c, d) = m.rows
    adj = PolyMatrix([[d, -b], [-c, a]])
    return adj, a * d - b * c


def _invert_node(m: PolyMatrix, path: OpPath, ctx: _Ctx, emit_self: bool = True):
    """Pure pair (Adj(m), Det(m)) for a content-ready block at `path`.

    The caller-supplied scale factor enters linearly in the output, so it is
    applied once at the public boundary instead of being threaded through the
    recursion; this also keeps the recorded adjugate objects unscaled.
    """
    t0 = time.perf_counter()
    s = m.n
    if s == 1:
        result = PolyMatrix([[Poly.one(m.vars)]]), m.rows[0][0]
    elif s == 2:
        result = _cofactor_transpose_2x2(m)
    else:
        result = _invert_composite(m, path, ctx)
    if emit_self:
        _record_call(ctx, m, path, time.perf_counter() - t0)
    return result


def _invert_composite(m: PolyMatrix, path: OpPath, ctx: _Ctx):
    s = m.n
    k = s // 2
    m11, m12, m21, m22 = m.quadrants()

    a11_path = path.child(A11)
    a11_adj, a11_det = _invert_node(m11, a11_path, ctx)
    if a11_det.is_zero():
        raise SingularPivotError(a11_path)

    delta_path = path.child(DELTA)
    delta_raw = schur_delta(m, a11_adj, a11_det, ctx.cfg, ctx.counters)
    pred = predict_mixed_content(delta_path, ctx.root.n)
    c_delta, delta_tilde, rec = _cancel(delta_raw, pred, delta_path, KIND_DELTA, ctx)
    ctx.profile.record(rec)

    adj_tilde, det_tilde = _invert_node(delta_tilde, delta_path, ctx, emit_self=False)
    if det_tilde.is_zero():
        raise SingularPivotError(delta_path)

    adj_pred = adj_prediction_for_path(delta_path, ctx.root.n)
    c_adj, adj_prim, rec_adj = _cancel(adj_tilde, adj_pred, delta_path, KIND_DELTA_ADJ, ctx)
    ctx.profile.record(rec_adj)

    # Reconstruct the uncancelled quantities so every policy yields the same
    # output: Det(delta_raw) = c_delta^k * det_tilde, and the scaled adjugate
    # of delta_raw is a11_det * c_delta^(k-1) * c_adj * adj_prim.
    a11_pow = a11_det ** (k - 1)
    d2 = ((c_delta**k) * det_tilde).div_exact(a11_pow)
    numer = a11_det * (c_delta ** (k - 1)) * c_adj
    try:
        delta_adj_prime = numer.div_exact(a11_pow) * adj_prim
    except NotDivisibleError:
        delta_adj_prime = (numer * adj_prim).div_exact(a11_pow)

    lam = mul(
        mul(delta_adj_prime, m21, ctx.cfg, ctx.counters), a11_adj, ctx.cfg, ctx.counters
    ).div_exact(a11_det)
    eps = mul(a11_adj, m12, ctx.cfg, ctx.counters)

    b11 = (d2 * a11_adj + mul(eps, lam, ctx.cfg, ctx.counters)).div_exact(a11_det)
    b12 = (-mul(eps, delta_adj_prime, ctx.cfg, ctx.counters)).div_exact(a11_det)
    b21 = -lam
    b22 = delta_adj_prime
    return PolyMatrix.join(b11, b12, b21, b22), d2


def _make_ctx(
    root: PolyMatrix,
    policy: CancelPolicy,
    seed: int,
    cfg: MulConfig,
    algorithm: str,
    padded_from: Optional[int],
) -> _Ctx:
    deg = root.max_degree()
    d_units = int(deg) if not root.is_zero() else 0
    profile = DegreeProfile(
        root_n=root.n,
        root_degree=d_units,
        variable_count=len(root.vars),
        cancel_policy=policy.value,
        seed=seed,
        algorithm=algorithm,
        mul_cutoff=cfg.cutoff,
        mul_variant=cfg.variant.value,
        padded_from=padded_from,
    )
    return _Ctx(
        root=root,
        policy=policy,
        seed=seed,
        cfg=cfg,
        counters=MulCounters(),
        profile=profile,
        d_units=d_units,
        pred_cache={},
    )


def ff_invert_v2(
    a: PolyMatrix,
    d1=1,
    cancel: CancelPolicy = CancelPolicy.HYBRID,
    *,
    mul_config: MulConfig | None = None,
    seed: int = 0,
    pad_mode: PadMode = PadMode.UPPER_LEFT,
) -> FFResult:
    """Fraction-free inversion recursing to size-2 cofactor transposes.

    Accepts any size >= 1: inputs that are not a power of two are padded once
    on entry and the resulting adjugate trimmed back.  Returns B = d1*Adj(a)
    and d2 = Det(a).
    """
    d1 = _coerce_poly(a.vars, d1)
    if d1.is_zero():
        raise ValueError("scale factor d1 must be nonzero")
    cfg = mul_config or MulConfig()
    target = next_power_of_two(a.n)
    padded = target != a.n
    work = pad(a, target, pad_mode) if padded else a
    ctx = _make_ctx(work, cancel, seed, cfg, "v2", a.n if padded else None)
    b, d2 = _invert_node(work, OpPath(), ctx)
    if d2.is_zero():
        raise SingularPivotError(OpPath(), "input matrix is singular")
    if padded:
        b = trim_adjugate(b, a.n, pad_mode)
    if not d1.is_one():
        b = d1 * b
    ctx.profile.mul_count = ctx.counters.scalar_muls
    ctx.profile.close()
    return FFResult(b, d2, ctx.profile)


def det_only(
    a: PolyMatrix,
    cancel: CancelPolicy = CancelPolicy.HYBRID,
    *,
    mul_config: MulConfig | None = None,
    seed: int = 0,
) -> Poly:
    """Determinant via the inversion recursion, skipping the output blocks.

    The quadrant block still needs its full adjugate (the Schur complement
    consumes it), but the Schur branch only contributes its determinant.
    """
    cfg = mul_config or MulConfig()
    target = next_power_of_two(a.n)
    work = pad(a, target) if target != a.n else a
    ctx = _make_ctx(work, cancel, seed, cfg, "det", a.n if target != a.n else None)
    det = _det_node(work, OpPath(), ctx)
    ctx.profile.mul_count = ctx.counters.scalar_muls
    ctx.profile.close()
    return det


def _det_node(m: PolyMatrix, path: OpPath, ctx: _Ctx) -> Poly:
    s = m.n
    if s == 1:
        return m.rows[0][0]
    if s == 2:
        (a, b), (c, d) = m.rows
        return a * d - b * c
    k = s // 2
    m11 = PolyMatrix([row[:k] for row in m.rows[:k]])
    a11_path = path.child(A11)
    a11_adj, a11_det = _invert_node(m11, a11_path, ctx)
    if a11_det.is_zero():
        raise SingularPivotError(a11_path)
    delta_path = path.child(DELTA)
    delta_raw = schur_delta(m, a11_adj, a11_det, ctx.cfg, ctx.counters)
    pred = predict_mixed_content(delta_path, ctx.root.n)
    c_delta, delta_tilde, rec = _cancel(delta_raw, pred, delta_path, KIND_DELTA, ctx)
    ctx.profile.record(rec)
    det_tilde = _det_node(delta_tilde, delta_path, ctx)
    if det_tilde.is_zero():
        raise SingularPivotError(delta_path)
    return ((c_delta**k) * det_tilde).div_exact(a11_det ** (k - 1))


# -- first formulation --------------------------------------------------------


def ff_invert_v1(
    a: PolyMatrix,
    d1=1,
    *,
    mul_config: MulConfig | None = None,
    seed: int = 0,
) -> FFResult:
    """Fraction-free inversion by literal pair arithmetic, recursing to size 1.

    Follows the block identities verbatim on (matrix, denominator) pairs and
    verifies at runtime that every prescribed division is exact.  Requires a
    power-of-two size.
    """
    n = a.n
    if n & (n - 1):
        raise ValueError(f"this formulation needs a power-of-two size, got {n}")
    d1 = _coerce_poly(a.vars, d1)
    if d1.is_zero():
        raise ValueError("scale factor d1 must be nonzero")
    cfg = mul_config or MulConfig()
    ctx = _make_ctx(a, CancelPolicy.NONE, seed, cfg, "v1", None)
    b, d2 = _invert_v1_node(a, d1, OpPath(), ctx)
    if d2.is_zero():
        raise SingularPivotError(OpPath(), "input matrix is singular")
    ctx.profile.mul_count = ctx.counters.scalar_muls
    ctx.profile.close()
    return FFResult(b, d2, ctx.profile)


def _div_mat(m: PolyMatrix, c: Poly, path: OpPath) -> PolyMatrix:
    try:
        return m.div_exact(c)
    except NotDivisibleError as exc:
        raise NotDivisibleError(f"inexact division at {path}: {exc}", path=path.ops) from exc


def _invert_v1_node(m: PolyMatrix, d1: Poly, path: OpPath, ctx: _Ctx, emit_self: bool = True):
    t0 = time.perf_counter()
    s = m.n
    if s == 1:
        if emit_self:
            _record_call(ctx, m, path, time.perf_counter() - t0)
        return PolyMatrix([[d1]]), m.rows[0][0]

    k = s // 2
    one = Poly.one(m.vars)
    m11, m12, m21, m22 = m.quadrants()

    a11_path = path.child(A11)
    a11_adj, a11_det = _invert_v1_node(m11, one, a11_path, ctx)
    if a11_det.is_zero():
        raise SingularPivotError(a11_path)

    cfg, counters = ctx.cfg, ctx.counters
    pair = lambda mat, den: ScaledMatrix(mat, den)  # noqa: E731
    delta_pair = pair_add(
        pair(m22, one),
        pair_mul(
            pair_mul(pair(-m21, one), pair(a11_adj, a11_det), cfg, counters),
            pair(m12, one),
            cfg,
            counters,
        ),
    )
    delta, delta_den = delta_pair.mat, delta_pair.denom
    delta_path = path.child(DELTA)
    if delta.is_zero():
        raise SingularPivotError(delta_path, f"zero block at {delta_path}")
    ctx.profile.record(
        NodeRecord(
            path=delta_path,
            size=k,
            kind=KIND_DELTA,
            pre_cancel_degree=int(delta.max_degree()),
            post_cancel_degree=int(delta.max_degree()),
        )
    )

    delta_adj, delta_adj_den = _invert_v1_node(delta, delta_den, delta_path, ctx, emit_self=False)
    if delta_adj_den.is_zero():
        raise SingularPivotError(delta_path)
    ctx.profile.record(
        NodeRecord(
            path=delta_path,
            size=k,
            kind=KIND_DELTA_ADJ,
            pre_cancel_degree=int(delta_adj.max_degree()),
            post_cancel_degree=int(delta_adj.max_degree()),
        )
    )

    lam_pair = pair_mul(
        pair_mul(pair(delta_adj, delta_adj_den), pair(m21, one), cfg, counters),
        pair(a11_adj, a11_det),
        cfg,
        counters,
    )
    b11_pair = pair_mul(
        pair(a11_adj, a11_det),
        pair_add(
            pair(PolyMatrix.identity(m.vars, k), one),
            pair_mul(pair(m12, one), lam_pair, cfg, counters),
        ),
        cfg,
        counters,
    )
    b12_pair = pair_mul(
        pair_mul(pair(-a11_adj, a11_det), pair(m12, one), cfg, counters),
        pair(delta_adj, delta_adj_den),
        cfg,
        counters,
    )

    d2 = delta_adj_den.div_exact(a11_det ** (k - 1))
    d = d1 * d2
    b11 = _div_mat(d * b11_pair.mat, b11_pair.denom, path)
    b12 = _div_mat(d * b12_pair.mat, b12_pair.denom, path)
    b21 = _div_mat(-(d * lam_pair.mat), lam_pair.denom, path)
    b22 = _div_mat(d * delta_adj, delta_adj_den, path)
    result = PolyMatrix.join(b11, b12, b21, b22), d2
    if emit_self:
        _record_call(ctx, m, path, time.perf_counter() - t0)
    return result


def verify_inverse(a: PolyMatrix, b: PolyMatrix, scale: Poly) -> bool:
    """Check A*B = B*A = scale*I with the schoolbook product."""
    expect = scale * PolyMatrix.identity(a.vars, a.n)
    return mul_naive(a, b) == expect and mul_naive(b, a) == expect
