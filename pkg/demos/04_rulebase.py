"""Rulebase matching and the completeness/consistency decision.

Negative rules prune ill-posed questions, positive rules assert verdicts,
and scanning the whole space decides whether the rulebase is a complete
and consistent legislation over it.  Gaps are reported for the scholars
doing the manual abstraction.
"""

from fiqhkit import Question, classify_space, gap_report, match_question
from fiqhkit.datafiles import DataRegistry

registry = DataRegistry()
rulebase = registry.rulebases["tahara"]

question = Question(
    {
        "gender": "child",
        "health": "not_sick",
        "travel": "traveling",
        "water_availability": "unavailable",
        "substance": "plain_water",
        "tool_condition": "pure",
        "tool_worth": "ordinary",
        "impurity_site": "private_parts",
        "prayer_due": "due",
        "action": "washing",
        "outcome": "full",
    }
)
verdict = match_question(rulebase, question)
print("status:", verdict.status, "| rules:", ", ".join(verdict.matched_rules))
for line in verdict.explanation:
    print(" ", line)

print()
report = classify_space(rulebase)
print(gap_report(report), end="")
