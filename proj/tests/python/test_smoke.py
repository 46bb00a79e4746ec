import json

import pytest

import groupctl


DELTA = """schema tail=Z/2
gen 1 | 0
"""

CONSTANT = """schema tail=Z/2
gen | 1
"""


def test_delta_subgroup_is_strongly_controllable():
    h = groupctl.Subgroup.parse(DELTA)
    assert h.order == 2
    assert h.window == (1, 1)
    verdicts = h.check_all(1)
    assert all(verdicts.values())
    assert not h.is_k_controllable(0)
    assert h.strong_index() == 1


def test_constant_subgroup_is_not_controllable():
    h = groupctl.Subgroup.parse(CONSTANT)
    v = h.is_controllable()
    assert not v and v.evidence == "witness"
    assert h.verify(v)
    assert not h.is_weakly_controllable()
    assert h.uniformity_defect([0]) is None
    assert h.oracle("controllable") is False


def test_chain_family_defect_matches_depth():
    for depth in range(2, 5):
        h = groupctl.Subgroup.parse(f"family z2_power depth={depth}\n")
        assert h.is_uniformly_controllable()
        assert h.uniformity_defect([0]) == depth - 1
        assert h.invariant_factors() == [2] * len(h.invariant_factors())


def test_block_family_strong_index_agrees_with_oracle():
    h = groupctl.Subgroup.parse("family block p=2 blocks=2,3\n")
    assert not h.is_k_controllable(1)
    assert h.is_k_controllable(h.strong_index())
    assert h.oracle("k_controllable", k=h.strong_index())


def test_text_round_trip():
    h = groupctl.Subgroup.parse("schema prefix=Z/4 tail=Z/2\ngen 1 | 1 0\n")
    again = groupctl.Subgroup.parse(h.to_text())
    assert again.to_text() == h.to_text()
    assert again.order == h.order


def test_torus_example():
    verdict, verified = groupctl.torus_witness("family torsion_torus n=3\n", "1/2")
    assert verified and not verdict.holds
    assert not groupctl.in_span("1/2", ["1/3", "1/5", "1/7"])
    assert groupctl.approximate_constant("1/2", ["1/3", "1/5", "1/7"], [0], "1/10")[:2] == (2, 3)


def test_reproductions_pass():
    assert groupctl.reproduce_ids() == ["ex-3.5", "ex-4.6", "ex-5-dense", "thm-7.1"]
    for rid in groupctl.reproduce_ids():
        report = json.loads(groupctl.reproduce(rid))
        assert report["checks"] and all(c["pass"] for c in report["checks"])


def test_report_and_errors():
    code, out, _ = groupctl.report(DELTA)
    assert code == 0 and json.loads(out)["verdicts"]
    with pytest.raises(groupctl.ParseError):
        groupctl.Subgroup.parse("schema tail=Z/0\n")
    with pytest.raises(groupctl.ParseError):
        groupctl.reproduce("nope")
    with pytest.raises(groupctl.PreconditionFailed):
        groupctl.torus_witness("family torsion_torus n=2\n", "1/3")
