"""Recursion-tree instrumentation for the fraction-free inversion.

Each inversion call contributes exactly one node record; adjugates received
at Schur-complement nodes contribute an extra DELTA_ADJ record.  Degrees are
recorded in absolute terms; normalization into units of the input degree
happens only in report rendering, because non-uniform inputs break the
uniform-degree convention.

Profiles serialize to JSON with a stable key order.  Wall-clock durations are
kept in memory only, so profiles from identical seeds and policies are
byte-identical on disk.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .content import (
    DELTA,
    OpPath,
    adj_prediction_for_path,
    gcd_budget,
    predict_mixed_content,
)

KIND_BASE = "BASE"
KIND_A11 = "A11_BLOCK"
KIND_DELTA = "DELTA"
KIND_DELTA_ADJ = "DELTA_ADJ"


@dataclass
class NodeRecord:
    """Degrees and cancellation data for one recursion-tree object."""

    path: OpPath
    size: int
    kind: str
    pre_cancel_degree: int
    post_cancel_degree: int
    predicted_content_degree: Optional[int] = None
    observed_content_degree: Optional[int] = None
    gcd_invocations: int = 0
    predicted_divides_observed: Optional[bool] = None
    fallback_full_scan: bool = False
    wall_time: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "path": self.path.to_json(),
            "size": self.size,
            "kind": self.kind,
            "pre_cancel_degree": self.pre_cancel_degree,
            "post_cancel_degree": self.post_cancel_degree,
            "predicted_content_degree": self.predicted_content_degree,
            "observed_content_degree": self.observed_content_degree,
            "gcd_invocations": self.gcd_invocations,
            "predicted_divides_observed": self.predicted_divides_observed,
            "fallback_full_scan": self.fallback_full_scan,
        }


@dataclass
class DegreeProfile:
    """Append-only record sink for one inversion run."""

    root_n: int
    root_degree: int
    variable_count: int
    cancel_policy: str
    seed: int = 0
    algorithm: str = "v2"
    mul_cutoff: int = 2
    mul_variant: str = "strassen-winograd"
    padded_from: Optional[int] = None
    nodes: list = field(default_factory=list)
    gcd_count: int = 0
    mul_count: int = 0
    _closed: bool = field(default=False, repr=False)

    def record(self, node: NodeRecord) -> None:
        if self._closed:
            raise RuntimeError("profile is closed for recording")
        self.nodes.append(node)
        self.gcd_count += node.gcd_invocations

    def close(self) -> None:
        self._closed = True

    def call_nodes(self) -> list:
        """Records of recursion calls (one per tree node, adjugates excluded)."""
        return [n for n in self.nodes if n.kind != KIND_DELTA_ADJ]

    def find(self, ops: tuple, kind: str) -> Optional[NodeRecord]:
        for node in self.nodes:
            if node.kind == kind and node.path.ops == tuple(ops):
                return node
        return None

    def to_json_dict(self) -> dict:
        return {
            "config": {
                "root_n": self.root_n,
                "root_degree": self.root_degree,
                "variable_count": self.variable_count,
                "cancel_policy": self.cancel_policy,
                "seed": self.seed,
                "algorithm": self.algorithm,
                "mul_cutoff": self.mul_cutoff,
                "mul_variant": self.mul_variant,
                "padded_from": self.padded_from,
            },
            "nodes": [n.to_json_dict() for n in self.nodes],
            "totals": {"gcd_count": self.gcd_count, "mul_count": self.mul_count},
        }

    def to_json(self, law_checks: bool = True) -> str:
        obj = self.to_json_dict()
        if law_checks:
            obj["law_checks"] = [c.to_json_dict() for c in check_degree_laws(self).checks]
        return json.dumps(obj, indent=2)


@dataclass
class LawCheck:
    name: str
    path: list
    expected: int
    observed: int
    passed: bool
    severity: str  # "hard" or "warning"

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "path": self.path,
            "expected": self.expected,
            "observed": self.observed,
            "passed": self.passed,
            "severity": self.severity,
        }


@dataclass
class LawReport:
    checks: list

    @property
    def all_hard_passed(self) -> bool:
        return all(c.passed for c in self.checks if c.severity == "hard")

    @property
    def violations(self) -> list:
        return [c for c in self.checks if not c.passed]


def _spine_expected_degrees(n: int, d: int) -> list:
    """Uncancelled Schur-spine degrees: each step multiplies by (size/2 + 1)."""
    expected = []
    deg = (n // 2 + 1) * d
    size = n // 2
    while size >= 2:
        expected.append(deg)
        if size == 2:
            break
        deg = (size // 2 + 1) * deg
        size //= 2
    return expected


def check_degree_laws(profile: DegreeProfile) -> LawReport:
    """Compare recorded node degrees against the proven growth laws.

    Without cancellation the pure Schur spine must match the exact recurrence.
    With cancellation, nodes on pure paths (after absorbing leading quadrant
    steps into the root) must not exceed the exact post-cancellation bounds;
    genuinely mixed nodes only get report-level checks against a linear-size
    envelope, since no exact statement exists for them.
    """
    checks: list = []
    n = profile.root_n
    d = profile.root_degree

    if profile.cancel_policy == "none":
        expected = _spine_expected_degrees(n, d)
        for k, exp in enumerate(expected):
            node = profile.find((DELTA,) * (k + 1), KIND_DELTA)
            if node is None:
                continue
            checks.append(
                LawCheck(
                    name=f"uncancelled-spine-degree-{k}",
                    path=node.path.to_json(),
                    expected=exp,
                    observed=node.pre_cancel_degree,
                    passed=node.pre_cancel_degree == exp,
                    severity="hard",
                )
            )
        return LawReport(checks)

    for node in profile.nodes:
        if node.kind == KIND_DELTA:
            shift, rest = node.path.strip_leading_a11()
            n_eff = n >> shift
            if all(op == DELTA for op in rest):
                i = len(rest) - 1
                bound = (((2 ** (i + 1) - 1) * n_eff) // 2 ** (i + 1) + 1) * d
                checks.append(
                    LawCheck(
                        name="cancelled-schur-degree",
                        path=node.path.to_json(),
                        expected=bound,
                        observed=node.post_cancel_degree,
                        passed=node.post_cancel_degree <= bound,
                        severity="hard",
                    )
                )
            else:
                bound = 2 * n * d
                checks.append(
                    LawCheck(
                        name="mixed-schur-degree-envelope",
                        path=node.path.to_json(),
                        expected=bound,
                        observed=node.post_cancel_degree,
                        passed=node.post_cancel_degree <= bound,
                        severity="warning",
                    )
                )
        elif node.kind == KIND_DELTA_ADJ:
            if node.size == 2:
                continue
            shift, rest = node.path.strip_leading_a11()
            n_eff = n >> shift
            if all(op == DELTA for op in rest):
                bound = (n_eff - 1) * d
                checks.append(
                    LawCheck(
                        name="cancelled-adjugate-degree",
                        path=node.path.to_json(),
                        expected=bound,
                        observed=node.post_cancel_degree,
                        passed=node.post_cancel_degree <= bound,
                        severity="hard",
                    )
                )
            else:
                bound = 2 * n * d
                checks.append(
                    LawCheck(
                        name="mixed-adjugate-degree-envelope",
                        path=node.path.to_json(),
                        expected=bound,
                        observed=node.post_cancel_degree,
                        passed=node.post_cancel_degree <= bound,
                        severity="warning",
                    )
                )
    return LawReport(checks)


def _census(profile: DegreeProfile) -> tuple:
    """Observed cancellable nodes per level: Schur nodes with nontrivial
    predicted content, and adjugate nodes of size >= 4 at Schur nodes."""
    delta_by_level: dict = {}
    adj_by_level: dict = {}
    for node in profile.nodes:
        level = len(node.path)
        if node.kind == KIND_DELTA:
            pred = predict_mixed_content(node.path, profile.root_n)
            if not pred.is_trivial:
                delta_by_level[level] = delta_by_level.get(level, 0) + 1
        elif node.kind == KIND_DELTA_ADJ and node.size >= 4:
            adj_by_level[level] = adj_by_level.get(level, 0) + 1
    return delta_by_level, adj_by_level


def expected_census(n: int) -> tuple:
    """Cancellable-node counts per level: 2^(i-1) - 1 Schur nodes for levels
    1..log2(n)-1 and 2^(i-1) adjugates for levels 1..log2(n)-2."""
    log_n = n.bit_length() - 1
    delta = {i: 2 ** (i - 1) - 1 for i in range(1, log_n)}
    adj = {i: 2 ** (i - 1) for i in range(1, log_n - 1)}
    return delta, adj


def gcd_report(profile: DegreeProfile) -> dict:
    """GCD usage: totals against the budget, census against the level counts."""
    n = profile.root_n
    observed_delta, observed_adj = _census(profile)
    exp_delta, exp_adj = expected_census(n)
    exp_delta = {k: v for k, v in exp_delta.items() if v > 0}
    observed_delta = {k: v for k, v in observed_delta.items() if v > 0}
    report = {
        "total_gcd_invocations": profile.gcd_count,
        "census": {
            "delta_by_level": {str(k): v for k, v in sorted(observed_delta.items())},
            "delta_adj_by_level": {str(k): v for k, v in sorted(observed_adj.items())},
        },
        "expected_census": {
            "delta_by_level": {str(k): v for k, v in sorted(exp_delta.items())},
            "delta_adj_by_level": {str(k): v for k, v in sorted(exp_adj.items())},
        },
        "census_matches": observed_delta == exp_delta and observed_adj == exp_adj,
    }
    if n >= 8:
        minimum, worst = gcd_budget(n)
        report["minimum_required"] = minimum
        report["worst_case_budget"] = worst
        report["meets_minimum"] = profile.gcd_count >= minimum
    return report
