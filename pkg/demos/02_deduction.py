"""Deriving a detailed ruling from general rules, with a replayable trace.

The worked example: one general sentence ties the two inverted branch
reasons (pledged / not pledged) to the inverted absolute conditional,
its positive counterpart ties either branch to the absolute conditional,
and an established fact records that a pledge makes fasting obligatory.
The fasting rule then follows by substitution.
"""

from fiqhkit import parse_formula, derive_detailed, check_stratification

inverted_link = parse_formula(
    "(inverse(Fs & Pgv -> X) & inverse(Fs & inverse(Pgv) -> X)) <-> inverse(Fs -> X)",
    variables=["X"],
)
branch_link = parse_formula(
    "((Fs & Pgv -> X) | (Fs & inverse(Pgv) -> X)) <-> (Fs -> X)",
    variables=["X"],
)
pledged_fact = parse_formula("Fs & Pgv -> Fv")

trace = derive_detailed([inverted_link, branch_link, pledged_fact], parse_formula("Fs -> Fv"))
print("status:", trace.status)
for step in trace.steps:
    pairs = ", ".join(f"{k}:={v}" for k, v in step.substitution.items()) or "as stated"
    print(f"  rule {step.rule_index + 1} with {pairs}")
    print(f"    -> {step.intermediate}")
print("replay confirms:", trace.replay())

# Circularity guard: definitions that negate themselves are flagged as
# errors, negation-free cycles only as warnings.
report = check_stratification(
    [parse_formula("A -> inverse(A)"), parse_formula("B -> C"), parse_formula("C -> B")]
)
for cycle in report.cycles:
    print(cycle.severity, "cycle through", ", ".join(cycle.atoms))
print("stratified:", report.is_stratified)
