"""Smoke tests for the dkbplan extension module."""

import os

import pytest

dkbplan = pytest.importorskip("dkbplan")


def test_fixture_shape():
    spec = dkbplan.appendix_fixture()
    assert spec.dl_axioms == 22
    assert spec.sj_axioms == 2
    assert spec.assertions == 6
    assert sorted(spec.actions) == ["appoint", "review", "setAdmDoc", "setTechnician"]
    assert dkbplan.consistent(spec)


def test_parse_round_trip():
    spec = dkbplan.appendix_fixture()
    again = dkbplan.parse_kb(spec.serialize())
    assert again.serialize() == spec.serialize()


def test_fixture_file_matches_builtin():
    data_dir = os.environ.get("DKBPLAN_DATA")
    if not data_dir:
        pytest.skip("DKBPLAN_DATA not set")
    spec = dkbplan.parse_kb_file(os.path.join(data_dir, "case_study.kb"))
    assert spec.serialize() == dkbplan.appendix_fixture().serialize()


def test_certain_answers():
    spec = dkbplan.appendix_fixture()
    rows = dkbplan.ans(spec, "Manager(?x), canManage(?y,?z)")
    assert rows == [{"x": "e001", "y": "e002", "z": "d001"}]
    assert dkbplan.ans(spec, "hasStatus(?x,reviewed), UrgentDoc(?x)") == []


def test_planners_agree_on_the_small_instance():
    spec = dkbplan.generate(1, 1, 1)
    graph, metrics, plans = dkbplan.forward_plan(spec)
    assert metrics["edges"] == 3
    assert len(plans) == 1
    assert [step[0] for step in plans[0]] == ["setTechnician", "appoint", "review"]

    abstract, fpi_graph, fpi_metrics, fpi_plans = dkbplan.abp_fpi(spec)
    assert fpi_metrics["edges"] == 3
    assert fpi_metrics["visited"] == 7
    assert fpi_metrics["inconsistent"] == 3
    assert fpi_plans == plans
    assert len(abstract.pairs) == 4


def test_abstract_graph_export():
    spec = dkbplan.generate(1, 1, 1, include_administrative=True)
    abstract = dkbplan.abstract_backward_plan(spec)
    assert len(abstract.states) == 7
    dot = abstract.to_dot()
    assert dot.startswith("digraph")
    assert "SJ axiom" in dot


def test_plan_inclusion_on_random_problems():
    for seed in range(5):
        spec = dkbplan.random_dkb(seed)
        verdict = dkbplan.check_inclusion(spec)
        assert verdict["included"]


def test_graph_exports():
    spec = dkbplan.generate(1, 1, 1)
    graph, _, _ = dkbplan.forward_plan(spec)
    assert dkbplan.planning_graph_dot(spec, graph).startswith("digraph")
    assert '"version": 1' in dkbplan.planning_graph_json(spec, graph)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(Exception):
        dkbplan.parse_kb("[abox]\nC(a)\n")  # missing goal
    with pytest.raises(Exception):
        dkbplan.generate(0, 0, 0)
