from analyzers import GammaAnalyzer, SafetyAnalyzer, query_safe, to_dot, labeled_argument_graph
from corpus import load_goal, load_program
from kernel import AnalysisConfig
from transforms import Query

# Gamma-acyclicity with a witness cycle
program = load_program("label_growth")
result = GammaAnalyzer().run(program)
print(result.verdict, result.witness)
print(to_dot(labeled_argument_graph(program), "labeled"))

# k-safety: the cycle of this program only dies after two activations
analyzer = SafetyAnalyzer(AnalysisConfig(k=2))
report = analyzer.run(load_program("delayed_block"))
print(report.verdict)
for step, args in enumerate(report.chain):
    print(step, sorted(str(arg) for arg in args))

# Query termination through magic sets
verdict = query_safe(Query(load_goal("query_grow"), load_program("query_grow")))
print(verdict.verdict, "via", verdict.branch)
print(verdict.magic.program)

for entry in analyzer.get_history():
    print(f"{entry.kind}: {entry.message}")
    print("-" * 100)
