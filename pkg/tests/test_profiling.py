import json

import pytest

from polyfrac import CancelPolicy, ff_invert_v2
from polyfrac.cli import random_matrix
from polyfrac.profiling import (
    KIND_A11,
    KIND_BASE,
    KIND_DELTA,
    KIND_DELTA_ADJ,
    DegreeProfile,
    NodeRecord,
    check_degree_laws,
    expected_census,
    gcd_report,
)
from polyfrac.content import OpPath


def profile_for(n, seed=0, policy=CancelPolicy.HYBRID, d=1):
    a = random_matrix(n, 1, d, seed=seed)
    return ff_invert_v2(a, 1, policy, seed=seed).profile


def test_base_case_records_have_no_gcds():
    p = profile_for(4)
    base = p.find(("A11",), KIND_BASE)
    assert base is not None and base.size == 2
    assert base.gcd_invocations == 0


def test_top_delta_prediction_is_trivial():
    p = profile_for(8)
    node = p.find(("DELTA",), KIND_DELTA)
    assert node.predicted_content_degree == 0


def test_call_records_cover_the_recursion_tree():
    # One record per inversion call: 2^levels - 1 of them.
    for n, expected in ((4, 3), (8, 7), (16, 15)):
        p = profile_for(n)
        calls = p.call_nodes()
        assert len(calls) == expected
        assert len({(c.path.ops, c.kind) for c in calls}) == expected


def test_record_kinds_partition():
    p = profile_for(8)
    kinds = {k: [n for n in p.nodes if n.kind == k] for k in
             (KIND_BASE, KIND_A11, KIND_DELTA, KIND_DELTA_ADJ)}
    # A11-headed leaves are BASE; Schur-headed calls keep the DELTA kind so
    # their cancellation data stays on the tree node.
    assert all(n.size <= 2 for n in kinds[KIND_BASE])
    assert all(n.size >= 4 for n in kinds[KIND_A11])
    assert all(n.path.last == "DELTA" for n in kinds[KIND_DELTA])
    assert len(kinds[KIND_DELTA_ADJ]) == 3  # one per composite call


def test_law_checks_on_cancelled_run():
    p = profile_for(8)
    report = check_degree_laws(p)
    assert report.all_hard_passed
    by_path = {(c.name, tuple(c.path)): c for c in report.checks}
    spine1 = by_path[("cancelled-schur-degree", ("DELTA", "DELTA"))]
    assert spine1.observed == 7 and spine1.expected == 7
    adj0 = by_path[("cancelled-adjugate-degree", ("DELTA",))]
    assert adj0.observed == 7 and adj0.expected == 7


def test_law_checks_on_uncancelled_run():
    p = profile_for(8, policy=CancelPolicy.NONE)
    report = check_degree_laws(p)
    assert report.all_hard_passed
    observed = {tuple(c.path): (c.observed, c.expected) for c in report.checks}
    assert observed[("DELTA",)] == (5, 5)
    assert observed[("DELTA", "DELTA")] == (15, 15)


def test_gcd_report_census_and_budget():
    p = profile_for(8)
    rep = gcd_report(p)
    assert rep["census_matches"]
    assert rep["minimum_required"] == 2
    assert rep["worst_case_budget"] == 80
    assert rep["total_gcd_invocations"] >= 2
    assert rep["meets_minimum"]


def test_expected_census_shape():
    delta, adj = expected_census(16)
    assert delta == {1: 0, 2: 1, 3: 3}
    assert adj == {1: 1, 2: 2}


def test_profile_json_is_deterministic_and_time_free():
    a = random_matrix(8, 1, 1, seed=3)
    p1 = ff_invert_v2(a, 1, seed=3).profile
    p2 = ff_invert_v2(a, 1, seed=3).profile
    assert p1.to_json() == p2.to_json()
    blob = json.loads(p1.to_json())
    assert set(blob) == {"config", "nodes", "totals", "law_checks"}
    assert all("wall_time" not in node for node in blob["nodes"])
    assert blob["totals"]["gcd_count"] == p1.gcd_count
    assert blob["totals"]["mul_count"] == p1.mul_count > 0


def test_closed_profile_rejects_records():
    p = profile_for(4)
    with pytest.raises(RuntimeError):
        p.record(
            NodeRecord(
                path=OpPath(), size=2, kind=KIND_BASE,
                pre_cancel_degree=0, post_cancel_degree=0,
            )
        )


def test_cancellation_bookkeeping_is_consistent():
    # Wherever cancellation occurred, post = pre - observed, and the
    # prediction divides the extracted content.
    p = profile_for(16, seed=1)
    saw_cancellation = False
    for node in p.nodes:
        if node.observed_content_degree:
            saw_cancellation = True
            assert node.post_cancel_degree == node.pre_cancel_degree - node.observed_content_degree
            assert node.predicted_divides_observed is True
    assert saw_cancellation
