import json
import random
import time

import pytest

from cli.main import main
from cli.pipeline import analyze_program, prepare
from cli.report import REPORT_SCHEMA, SCHEMA, AnalysisReport, render_text, validate_report
from corpus import CORPUS, load_program
from kernel import AnalysisConfig, parse_program
from kernel.generators import random_flat_program


@pytest.fixture
def corpus_file(tmp_path):
    def write(name, text=None):
        path = tmp_path / f"{name}.lp"
        path.write_text(CORPUS[name] if text is None else text, encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_reports_ranking_table(capsys, corpus_file):
    code, out, _ = run(capsys, "analyze", corpus_file("ranking_chain"), "--criteria", "ar", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == SCHEMA
    (verdict,) = data["criteria"]
    assert verdict["holds"]
    assert verdict["details"]["phi_min"] == {"b[1]": 0, "p[1]": 1, "t[1]": 2, "s[1]": 1}
    assert len(verdict["details"]["history"]) == 5
    assert verdict["details"]["history"][-1] == verdict["details"]["phi_min"]


def test_analyze_with_longer_paths(capsys, corpus_file):
    code, out, _ = run(capsys, "analyze", corpus_file("delayed_block"), "--k", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert validate_report(data) == []
    verdicts = {item["criterion"]: item for item in data["criteria"]}
    assert not verdicts["safe"]["holds"]
    assert verdicts["ksafe"]["holds"]
    assert verdicts["ksafe"]["verdict"] == "2-safe"


def test_analyze_not_recognized(capsys, corpus_file):
    code, out, _ = run(capsys, "analyze", corpus_file("unsafe_cycle"))
    assert code == 1
    assert out.splitlines()[0].endswith(": not recognized")


def test_empty_program_is_an_input_error(capsys, corpus_file):
    code, out, err = run(capsys, "analyze", corpus_file("ranking_chain", "% nothing here\n"))
    assert code == 2
    assert out == ""
    assert "no rules" in err


def test_syntax_error_is_an_input_error(capsys, corpus_file):
    code, _, err = run(capsys, "analyze", corpus_file("ranking_chain", "p(X :- q(X).\n"))
    assert code == 2
    assert err.startswith("termlint:")


def test_missing_file_is_an_input_error(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "absent.lp"))
    assert code == 2


def test_substitution_budget_from_environment(capsys, corpus_file, monkeypatch):
    monkeypatch.setenv("TERMLINT_MAX_SUBST_BYTES", "40")
    path = corpus_file("ranking_chain", "p(f(X,X)) :- p(X).\np(a).\n")
    code, _, err = run(capsys, "analyze", path, "--criteria", "ksafe", "--k", "6")
    assert code == 3
    assert "resource cap" in err


def test_graph_labeled(capsys, corpus_file):
    code, out, _ = run(capsys, "graph", corpus_file("label_cancel"), "labeled")
    assert code == 0
    lines = out.splitlines()
    assert sum(1 for line in lines if "->" in line) == 4
    assert '  "q[1]" -> "s[1]" [label="~g"];' in lines


def test_graph_activation(capsys, corpus_file):
    code, out, _ = run(capsys, "graph", corpus_file("self_blocking"), "activation")
    assert code == 0
    assert out == 'digraph "activation" {\n  "r1";\n  "r2";\n  "r1" -> "r2";\n}\n'


def test_rewrite_ext(capsys, corpus_file):
    code, out, _ = run(capsys, "rewrite", corpus_file("disjunctive"), "ext")
    assert code == 0
    assert out.splitlines() == [
        "p(X) | q(X) :- P(X), Q(X), r(X), not a(X).",
        "r(X) :- R(X), b(X), not q(X).",
        "P(X) :- R(X).",
        "Q(X) :- R(X).",
        "R(X) :- b(X).",
    ]


def test_rewrite_magic(capsys, corpus_file):
    code, out, _ = run(capsys, "rewrite", corpus_file("query_grow"), "magic", "p(f(f(a)))")
    assert code == 0
    assert out == (
        "magic_p_b(f(f(a))).\n"
        "magic_p_b(X) :- magic_p_b(f(X)).\n"
        "p_b(a) :- magic_p_b(a).\n"
        "p_b(f(X)) :- magic_p_b(f(X)), p_b(X).\n"
    )


def test_rewrite_magic_needs_goal(capsys, corpus_file):
    code, _, _ = run(capsys, "rewrite", corpus_file("query_grow"), "magic")
    assert code == 2


def test_rewrite_flatten_keeps_flat_program(capsys, corpus_file):
    code, out, _ = run(capsys, "rewrite", corpus_file("lockstep"), "flatten")
    assert code == 0
    assert out == str(load_program("lockstep"))
    assert parse_program(out) == load_program("lockstep")


def test_eval_with_database(capsys, corpus_file, tmp_path):
    db = tmp_path / "db.lp"
    db.write_text("b(a).\n", encoding="utf-8")
    code, out, _ = run(capsys, "eval", corpus_file("self_blocking"), "--db", str(db))
    assert code == 0
    assert out.splitlines() == ["b(a).", "p(a,a).", "p(f(a),g(a))."]


def test_eval_facts_only(capsys, corpus_file):
    code, out, _ = run(capsys, "eval", corpus_file("ranking_chain", "q(b).\nq(a).\n"))
    assert code == 0
    assert out == "q(a).\nq(b).\n"


def test_eval_reports_exhaustion(capsys, corpus_file):
    path = corpus_file("query_grow")
    code, out, _ = run(capsys, "eval", path, "--fuel-iters", "50", "--json")
    assert code == 0
    assert not json.loads(out)["converged"]
    code, out, _ = run(capsys, "eval", path, "--fuel-iters", "50", "--strict")
    assert code == 3
    assert out.startswith("exhausted")


def test_query(capsys, corpus_file):
    code, out, _ = run(capsys, "query", corpus_file("query_grow"), "p(f(f(a)))")
    assert code == 0
    assert out == "p(f(f(a))): terminating via the rewritten program\n"


def test_query_on_unknown_predicate(capsys, corpus_file):
    code, _, _ = run(capsys, "query", corpus_file("query_grow"), "r(a)")
    assert code == 2


def test_unknown_criteria_are_rejected():
    with pytest.raises(SystemExit):
        main(["analyze", "x.lp", "--criteria", "ar,termination"])


def test_prepare_flattens_and_maps_rules():
    prepared = prepare(parse_program("p(X) :- b(X).\np(f(g(X))) :- p(X)."))
    assert prepared.flattened
    assert prepared.mapping == {"r1": "r1", "r2_1": "r2", "r2_2": "r2"}
    assert not prepared.standard_version


def test_prepare_uses_standard_version_of_disjunctive_program():
    prepared = prepare(load_program("disjunctive"))
    assert prepared.standard_version
    assert not prepared.flattened
    assert prepared.mapping == {"r1_1": "r1", "r1_2": "r1", "r2": "r2"}


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_reports_respect_criteria_hierarchy(name):
    report = analyze_program(load_program(name, strict=False), config=AnalysisConfig(k=2), source=name)
    assert validate_report(report.to_dict()) == []
    assert AnalysisReport.from_dict(report.to_dict()).to_dict() == report.to_dict()
    assert render_text(report).startswith(f"{name}: ")


def test_validator_flags_broken_reports():
    report = analyze_program(load_program("label_cancel"), source="label_cancel").to_dict()
    assert validate_report({}) != []
    assert validate_report(dict(report, schema="termlint.report/0")) == ["schema: 'termlint.report/1' was expected"]
    broken = json.loads(json.dumps(report))
    broken["criteria"][0]["limited"].append("z[1]")
    assert any("misses" in problem for problem in validate_report(broken))
    with pytest.raises(ValueError):
        AnalysisReport.from_dict(dict(report, k=0))


def test_large_generated_program_is_analyzed_quickly():
    program = random_flat_program(random.Random(59), n_rules=100, n_predicates=10)
    started = time.perf_counter()
    report = analyze_program(program, config=AnalysisConfig(k=2))
    assert time.perf_counter() - started < 10
    assert validate_report(report.to_dict()) == []


def test_validator_uses_bundled_schema():
    report = analyze_program(load_program("lockstep"), source="lockstep").to_dict()
    assert REPORT_SCHEMA["properties"]["schema"]["const"] == SCHEMA
    missing = {key: value for key, value in report.items() if key != "digest"}
    assert validate_report(missing) == ["report: 'digest' is a required property"]
    assert validate_report(dict(report, k="2"))[0].startswith("k: ")
    assert validate_report(["not", "a", "report"])[0].startswith("report: ")
    twice = dict(report, criteria=report["criteria"][:1] * 2)
    assert validate_report(twice) == ["criterion 'ar' reported twice"]
