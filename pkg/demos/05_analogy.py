"""Direct and inverse analogy, and the necessary-and-sufficient check.

The inverse case: prayer is not a condition of the retreat whether
pledged or not (the two-branch reason), so its verdict is the inverted
absolute conditional.  The secondary case establishes the opposite of
that reason for fasting, and the opposite verdict transfers.  Validation
then demands that the reason be necessary AND sufficient: dropping the
unpledged branch breaks sufficiency, and the check names the missing
direction with a countermodel.
"""

from fiqhkit import (
    AnalogyCase,
    direct_analogy,
    inverse_analogy,
    load_analogy_doc,
    parse_formula,
    validate_analogy,
)
from fiqhkit.datafiles import packaged_data_dir

itikaf = load_analogy_doc((packaged_data_dir() / "itikaf.analogy.json").read_text())
candidate = inverse_analogy(itikaf.primary, itikaf.secondary)
print("inverse analogy derives:", candidate.derived)
print("substitution:", candidate.substitution)
print("validation:", validate_analogy(candidate, itikaf.axioms).message)

truncated = AnalogyCase(
    parse_formula("inverse(Fs & Pgv -> X)", ["X"]),
    parse_formula("inverse(Fs -> X)", ["X"]),
    "primary",
)
bad = inverse_analogy(truncated, itikaf.secondary)
check = validate_analogy(bad)
print("\ntruncated reason:", check.message)
for direction, model in check.countermodels.items():
    print(f"  countermodel ({direction}):", model)

parents = load_analogy_doc((packaged_data_dir() / "parents.analogy.json").read_text())
ugh = direct_analogy(parents.primary, parents.secondary.case_formula)
print("\ndirect analogy derives:", ugh.derived)
print("validation under the established link:",
      validate_analogy(ugh, parents.axioms).message)
