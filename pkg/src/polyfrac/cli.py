"""Command-line front end: generate, invert, det, mul, profile, verify.

All input and output is JSON.  Commands are deterministic given their flags
and seed; the POLYFRAC_SEED environment variable overrides any seed given on
the command line.  Exit codes: 0 success, 2 singular pivot, 3 input error,
4 internal divisibility failure.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from typing import Optional, Sequence

from .content import extract_content
from .fastmul import MulConfig, MulVariant, mul, mul_naive
from .ffinversion import (
    CancelPolicy,
    SingularPivotError,
    det_only,
    ff_invert_v2,
    verify_inverse,
)
from .oracle import bareiss_det
from .polymatrix import PadMode, PolyMatrix
from .polyring import NotDivisibleError, ParseError, Poly, parse
from .profiling import check_degree_laws, gcd_report

EXIT_OK = 0
EXIT_SINGULAR = 2
EXIT_INPUT = 3
EXIT_DIVISIBILITY = 4

_VAR_NAMES = ("x", "y", "z")


def default_vars(m: int) -> tuple:
    """Variable names for an m-variable ring: x, y, z, then x1..xm."""
    if m < 1:
        raise ValueError("variable count must be >= 1")
    if m <= len(_VAR_NAMES):
        return _VAR_NAMES[:m]
    return tuple(f"x{i}" for i in range(1, m + 1))


def _monomials_up_to(m: int, d: int) -> list:
    monos = [
        mono
        for mono in itertools.product(range(d + 1), repeat=m)
        if sum(mono) <= d
    ]
    monos.sort(key=lambda mono: (sum(mono), mono))
    return monos


def random_poly(vars: Sequence[str], degree: int, coeff_bound: int, rng: random.Random) -> Poly:
    """Dense random polynomial of exact total degree `degree`.

    Every monomial of total degree <= degree gets a coefficient drawn from
    [-coeff_bound, coeff_bound]; coefficients on the top-degree monomials are
    forced nonzero so the total degree is exact.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if coeff_bound < 1:
        raise ValueError("coefficient bound must be >= 1")
    m = len(vars)
    terms = {}
    for mono in _monomials_up_to(m, degree):
        if sum(mono) == degree:
            c = rng.randint(1, coeff_bound) * rng.choice((-1, 1))
        else:
            c = rng.randint(-coeff_bound, coeff_bound)
        if c:
            terms[mono] = c
    return Poly(vars, terms)


def random_matrix(
    n: int,
    m: int,
    degree: int,
    coeff_bound: int = 9,
    seed: int = 0,
) -> PolyMatrix:
    """Seeded n-by-n matrix whose entries all have exact total degree `degree`."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    vars = default_vars(m)
    rng = random.Random(seed)
    rows = [
        [random_poly(vars, degree, coeff_bound, rng) for _ in range(n)]
        for _ in range(n)
    ]
    return PolyMatrix(rows)


# -- command plumbing ----------------------------------------------------------


def _env_seed(seed: int) -> int:
    env = os.environ.get("POLYFRAC_SEED")
    return int(env) if env is not None else seed


def _emit(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_matrix(args) -> PolyMatrix:
    if args.input:
        with open(args.input) as fh:
            return PolyMatrix.from_json_dict(json.load(fh))
    if args.n is None:
        raise ValueError("either --input or generator flags (--n ...) are required")
    seed = _env_seed(args.seed)
    return random_matrix(args.n, args.m, args.d, args.coeff_bound, seed)


def _mul_config(args) -> MulConfig:
    variant = MulVariant.NAIVE_ONLY if getattr(args, "naive", False) else MulVariant.STRASSEN_WINOGRAD
    return MulConfig(cutoff=args.cutoff, variant=variant)


_POLICIES = {p.value: p for p in CancelPolicy}
_PAD_MODES = {m.value: m for m in PadMode}


def _add_generator_flags(p: argparse.ArgumentParser, required_n: bool = False) -> None:
    p.add_argument("--n", type=int, required=required_n, help="matrix size")
    p.add_argument("--m", type=int, default=1, help="number of variables")
    p.add_argument("--d", type=int, default=1, help="exact total degree of every entry")
    p.add_argument("--coeff-bound", type=int, default=9, dest="coeff_bound")
    p.add_argument("--seed", type=int, default=0)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="matrix JSON file (instead of generator flags)")
    _add_generator_flags(p)
    p.add_argument("--cancel", choices=sorted(_POLICIES), default="hybrid")
    p.add_argument("--cutoff", type=int, default=2, help="multiplication recursion cutoff")
    p.add_argument("--naive", action="store_true", help="disable recursive multiplication")
    p.add_argument("--pad", choices=sorted(_PAD_MODES), default="upper-left")
    p.add_argument("--out", help="write JSON here instead of stdout")


def cmd_gen(args) -> int:
    seed = _env_seed(args.seed)
    mat = random_matrix(args.n, args.m, args.d, args.coeff_bound, seed)
    _emit(mat.to_json_dict(), args.out)
    return EXIT_OK


def cmd_invert(args) -> int:
    mat = _load_matrix(args)
    d1 = parse(args.d1, mat.vars)
    result = ff_invert_v2(
        mat,
        d1,
        _POLICIES[args.cancel],
        mul_config=_mul_config(args),
        seed=_env_seed(args.seed),
        pad_mode=_PAD_MODES[args.pad],
    )
    obj = {
        "adjugate": result.adj_scaled.to_json_dict(),
        "det": str(result.det),
        "profile": result.profile.to_json_dict(),
    }
    if args.verify:
        ok = verify_inverse(mat, result.adj_scaled, d1 * result.det)
        ok = ok and result.det == bareiss_det(mat)
        obj["verified"] = ok
    _emit(obj, args.out)
    return EXIT_OK


def cmd_det(args) -> int:
    mat = _load_matrix(args)
    det = det_only(
        mat,
        _POLICIES[args.cancel],
        mul_config=_mul_config(args),
        seed=_env_seed(args.seed),
    )
    _emit({"det": str(det)}, args.out)
    return EXIT_OK


def cmd_mul(args) -> int:
    with open(args.a) as fh:
        a = PolyMatrix.from_json_dict(json.load(fh))
    with open(args.b) as fh:
        b = PolyMatrix.from_json_dict(json.load(fh))
    product = mul(a, b, _mul_config(args))
    _emit(product.to_json_dict(), args.out)
    return EXIT_OK


def cmd_profile(args) -> int:
    mat = _load_matrix(args)
    result = ff_invert_v2(
        mat,
        1,
        _POLICIES[args.cancel],
        mul_config=_mul_config(args),
        seed=_env_seed(args.seed),
        pad_mode=_PAD_MODES[args.pad],
    )
    profile = result.profile
    obj = profile.to_json_dict()
    obj["law_checks"] = [c.to_json_dict() for c in check_degree_laws(profile).checks]
    obj["gcd_report"] = gcd_report(profile)
    _emit(obj, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    mat = _load_matrix(args)
    result = ff_invert_v2(
        mat,
        1,
        _POLICIES[args.cancel],
        mul_config=_mul_config(args),
        seed=_env_seed(args.seed),
    )
    det_oracle = bareiss_det(mat)
    checks = {
        "inverse_identity": verify_inverse(mat, result.adj_scaled, result.det),
        "det_matches_elimination_oracle": result.det == det_oracle,
        "fast_multiply_matches_naive": mul(mat, result.adj_scaled, _mul_config(args))
        == mul_naive(mat, result.adj_scaled),
    }
    _emit({"verified": all(checks.values()), "checks": checks}, args.out)
    return EXIT_OK if all(checks.values()) else EXIT_INPUT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyfrac",
        description="Exact fraction-free linear algebra over multivariate polynomial rings",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random uniform-degree matrix")
    _add_generator_flags(p, required_n=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("invert", help="fraction-free inversion: adjugate and determinant")
    _add_common_flags(p)
    p.add_argument("--d1", default="1", help="scale polynomial for the adjugate")
    p.add_argument("--verify", action="store_true", help="check the output against oracles")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("det", help="determinant only")
    _add_common_flags(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("mul", help="multiply two matrix JSON files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--cutoff", type=int, default=2)
    p.add_argument("--naive", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("profile", help="inversion profile with degree-law and GCD reports")
    _add_common_flags(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="run the oracle cross-checks on a matrix")
    _add_common_flags(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SingularPivotError as exc:
        print(f"error: {exc} (path {list(exc.path)})", file=sys.stderr)
        return EXIT_SINGULAR
    except NotDivisibleError as exc:
        print(f"error: divisibility failure: {exc}", file=sys.stderr)
        return EXIT_DIVISIBILITY
    except (ParseError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
