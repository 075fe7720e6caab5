import json

import pytest

from volterra_spectra.harness import (
    KINDS,
    CaseRecord,
    ExperimentSpec,
    Report,
    emit_report,
    run_experiment,
)

PASSING = {
    "ResolventIdentity": dict(symbol="z^2", lambdas=(1, 1j, 2 - 1j), cases=5),
    "TGammaBound": dict(n=2, alpha=1.0, gammas=(0, 0.3, 0.6 + 0.2j), cases=9),
    "MembershipDivergence": dict(symbol="z", alpha=1.0, p=1.0, radii=(0.5, 1.0, 2.0)),
    "Caratheodory": dict(cases=20),
    "NilpotentSections": dict(symbol="6z^2 - z", sizes=(8, 32)),
    "SpectrumCrossCheck": dict(symbol="6z^2 - z", alpha=3.0, p=2.0, space="Hv", n_points=200),
}

FAILING = {
    "ResolventIdentity": dict(symbol="z^2", lambdas=(1,), cases=2, perturbation=1e-6),
    "TGammaBound": dict(n=2, gammas=(1.2,), cases=3),
    "MembershipDivergence": dict(symbol="z", radii=(0.9,), perturbation=0.2),
    "Caratheodory": dict(cases=3, perturbation=1e6),
    "NilpotentSections": dict(symbol="z", sizes=(8,), perturbation=1e-3),
    "SpectrumCrossCheck": dict(symbol="z", p=1.0, space="Hv", perturbation=0.05, n_points=200),
}


@pytest.mark.parametrize("kind", KINDS)
def test_known_pass(kind):
    rep = run_experiment(ExperimentSpec(kind, **PASSING[kind]))
    assert rep.cases and rep.ok, [c for c in rep.cases if c.status != "pass"]
    assert rep.summary["fail"] == 0


@pytest.mark.parametrize("kind", KINDS)
def test_known_fail(kind):
    rep = run_experiment(ExperimentSpec(kind, **FAILING[kind]))
    assert rep.summary["fail"] >= 1


def test_tgamma_hypothesis_violation_is_reported():
    rep = run_experiment(ExperimentSpec("TGammaBound", n=1, gammas=(0.5, 1.5), cases=3))
    assert [c.status for c in rep.cases] == ["pass", "fail"]
    assert "hypothesis" in rep.cases[1].note


def test_membership_divergence_spec_example():
    rep = run_experiment(ExperimentSpec("MembershipDivergence", symbol="z", alpha=1, p=1, radii=(0.5, 1.0, 2.0)))
    verdicts = [c.measured["verdict"] for c in rep.cases]
    assert verdicts == ["DivergenceSuspected", "Bounded", "Bounded"]
    assert rep.cases[1].measured["norm"] == pytest.approx(1.0, rel=0.02)


def test_unbounded_operator_is_skipped():
    rep = run_experiment(ExperimentSpec("SpectrumCrossCheck", symbol="z^3", p=1.0, space="Hv"))
    assert rep.summary == {"pass": 0, "fail": 0, "skip": 1}
    assert rep.ok
    assert "not bounded" in rep.cases[0].note


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("Nope")
    with pytest.raises(ValueError):
        ExperimentSpec("TGammaBound", gammas=())
    with pytest.raises(ValueError):
        ExperimentSpec("Caratheodory", seed=-1)
    with pytest.raises(ValueError):
        ExperimentSpec("Caratheodory", space="L2")


def test_default_tolerances_are_echoed():
    spec = ExperimentSpec("ResolventIdentity")
    assert spec.echo()["tolerance"] == 1e-10


def test_empty_report_json():
    doc = json.loads(emit_report(Report({"kind": "Caratheodory"})))
    assert doc["cases"] == [] and doc["summary"] == {"pass": 0, "fail": 0, "skip": 0}


def test_one_passing_case_summary():
    r = Report({"kind": "Caratheodory"}, [CaseRecord(0, "pass", {}, {})])
    doc = json.loads(emit_report(r))
    assert doc["summary"]["pass"] == 1 and doc["summary"]["fail"] == 0


@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_determinism(fmt):
    spec = ExperimentSpec("ResolventIdentity", symbol="random", cases=4, seed=99)
    a = emit_report(run_experiment(spec), fmt)
    b = emit_report(run_experiment(ExperimentSpec("ResolventIdentity", symbol="random", cases=4, seed=99)), fmt)
    assert a == b
    c = emit_report(run_experiment(ExperimentSpec("ResolventIdentity", symbol="random", cases=4, seed=100)), fmt)
    assert a != c


def test_timing_only_when_requested():
    rep = run_experiment(ExperimentSpec("NilpotentSections", sizes=(4,)))
    assert "wall_time" not in json.loads(emit_report(rep))
    assert "wall_time" in json.loads(emit_report(rep, include_timing=True))


def test_csv_flattening():
    rep = run_experiment(ExperimentSpec("ResolventIdentity", symbol="z", lambdas=(1, 2j), cases=1))
    lines = emit_report(rep, "csv").decode().splitlines()
    header = lines[0].split(",")
    assert header[:3] == ["index", "status", "note"]
    assert "out.residual" in header and "in.lambda" in header
    assert len(lines) == 3


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(Report({}), "xml")
