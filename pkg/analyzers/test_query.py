import pytest

from analyzers.query import QueryAnalyzer, criterion_holds, query_safe
from analyzers.safety import STRONGLY_LINEAR, safe_args
from corpus import load_goal, load_program
from kernel import ArgumentId, PredicateSymbol
from kernel.config import AnalysisConfig
from transforms import Query, flatten_program, magic_rewrite


def query_for(name, strict=True):
    return Query(load_goal(name), load_program(name, strict=strict))


def test_growing_program_is_safe_through_its_rewriting():
    verdict = query_safe(query_for("query_grow"))
    assert not verdict.original
    assert verdict.rewritten
    assert verdict.branch == "rewritten"
    assert verdict.verdict == "terminating"


def test_shrinking_program_is_safe_only_as_written():
    verdict = query_safe(query_for("query_shrink"))
    assert verdict.original
    assert not verdict.rewritten
    assert verdict.branch == "original"


@pytest.mark.parametrize("criterion", ["ar", "gamma", "safe"])
def test_rewriting_of_growing_program_under_every_criterion(criterion):
    assert query_safe(query_for("query_grow"), criterion).rewritten


@pytest.mark.parametrize("name", ["length", "reverse"])
def test_list_programs_are_safe_but_not_gamma_acyclic_after_rewriting(name):
    verdict = query_safe(query_for(name, strict=False))
    assert verdict.holds
    assert not verdict.original
    assert verdict.branch == "rewritten"
    assert not query_safe(query_for(name, strict=False), "gamma").holds


@pytest.mark.parametrize("name", ["length", "reverse"])
def test_list_counter_is_limited_through_the_relay_rule(name):
    magic = magic_rewrite(query_for(name, strict=False))
    flat = flatten_program(magic.program).program
    report = safe_args(flat)
    assert report.holds
    counter = ArgumentId(PredicateSymbol(f"{name}_bf", 2), 2)
    assert counter not in report.start
    assert report.justification[counter] == STRONGLY_LINEAR


def test_list_programs_are_not_gamma_acyclic_after_rewriting():
    for name in ("length", "reverse"):
        verdict = query_safe(query_for(name, strict=False), "gamma")
        assert not verdict.rewritten
        assert not verdict.holds


def test_criterion_holds_rejects_unknown_criterion():
    with pytest.raises(ValueError):
        criterion_holds(load_program("query_grow"), "termination")
    with pytest.raises(ValueError):
        QueryAnalyzer(criterion="termination")


def test_ksafe_uses_config_k():
    analyzer = QueryAnalyzer(AnalysisConfig(k=2), "ksafe")
    verdict = analyzer.run(query_for("query_grow"))
    assert verdict.k == 2
    assert not verdict.original
    assert verdict.rewritten


def test_verdict_dict():
    data = query_safe(query_for("query_grow")).to_dict()
    assert data["branch"] == "rewritten"
    assert data["goal"] == "p_b(f(f(a)))"
    assert data["adornments"] == ["p/b"]
    assert data["program"].splitlines()[0] == "magic_p_b(f(f(a)))."
