"""The rule language: parsing, printing, truth tables, satisfiability."""

from fiqhkit import parse_formula, print_formula, evaluate, truth_table
from fiqhkit import sat_dpll, sat_bruteforce, entails, Not

# Atoms are named claims; connectives are ->, &, |, <-> and inverse(...).
rule = parse_formula("Fs & Pgv -> Fv")
print("parsed:", rule)

# Evaluation is plain truth-functional semantics over an assignment.
case = {"Fs": True, "Pgv": True, "Fv": True}
print("holds in the pledged case:", evaluate(rule, case))

# Truth tables enumerate every assignment, first atom most significant.
for assignment, value in truth_table(parse_formula("A & (B | C)")):
    print(assignment, "->", value)

# Two satisfiability routes: DPLL for real use, enumeration as the oracle.
f = parse_formula("(A | B) & inverse(A)")
print("dpll:", sat_dpll(f))
print("brute:", sat_bruteforce(f))

# Validity = unsatisfiability of the negation.
print("self-implication valid:", sat_dpll(Not(parse_formula("Fs -> Fs"))).status)

# Entailment with countermodels on failure.
result = entails([parse_formula("A | B")], parse_formula("A"))
print("A | B entails A?", result.holds, "countermodel:", result.countermodel)

# Round trip: printing is canonical and re-parses to the same tree.
deep = parse_formula("inverse(A -> B) & ((C | D) <-> A)")
assert parse_formula(print_formula(deep)) == deep
print("round trip ok:", print_formula(deep))
