"""Positive/negative practical rules and the legislation decision procedure.

A rulebase file is a JSON document::

    {
      "id": "tahara",
      "space": "taymammum",
      "verdicts": ["invalid", "use_prohibited", ...],
      "rules": [
        {"id": "water-available",
         "polarity": "negative",
         "condition": "water_availability=available",
         "dont_care": [],
         "verdict": "invalid",
         "reason": "...",
         "primary_rule": "..."},
        ...
      ]
    }

Conditions are detailed formulas over the space's ``attr=value`` atoms.
Negative rules prune ill-posed combinations (the matched question is
excluded); positive rules assert verdict labels.  A fired negative rule
always wins over positive ones.  Every rule must state a reason; the
``primary_rule`` citation is optional and its absence can be treated as
a consistency breach via a flag on ``classify_space``.

The verdict vocabulary defaults to the five classical ruling categories
when a file declares none.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import LoadError, MatchError
from .formulas import Formula, parse_formula, print_formula, evaluate
from .questions import Question, QuestionSpace, encode_question, enumerate_questions, question_count

POSITIVE = "positive"
NEGATIVE = "negative"

RULED = "ruled"
EXCLUDED = "excluded"
UNCOVERED = "uncovered"
CONFLICTING = "conflicting"

STATUSES = (RULED, EXCLUDED, UNCOVERED, CONFLICTING)

DEFAULT_VERDICTS = ("wajib", "haram", "mandub", "makruh", "mubah")

DEFAULT_CLASSIFY_BUDGET = 10**7
DEFAULT_SAMPLE_LIMIT = 10


@dataclass(frozen=True)
class Rule:
    id: str
    polarity: str
    condition: Formula
    verdict: str
    reason: str
    dont_care: frozenset[str] = frozenset()
    primary_rule: Optional[str] = None

    def __post_init__(self) -> None:
        if self.polarity not in (POSITIVE, NEGATIVE):
            raise LoadError(f"rule {self.id!r}: unknown polarity {self.polarity!r}")
        if not self.condition.is_detailed():
            raise LoadError(f"rule {self.id!r}: condition must be detailed")
        if not self.reason.strip():
            raise LoadError(f"rule {self.id!r}: every ruling must carry a reason")


@dataclass(frozen=True)
class Verdict:
    status: str
    verdict_label: Optional[str]
    matched_rules: tuple[str, ...]
    explanation: tuple[str, ...]


@dataclass
class CoverageReport:
    total: int
    counts: dict[str, int]
    uncovered_sample: list[Question]
    conflicting_sample: list[Question]
    complete: Optional[bool]
    consistent: Optional[bool]
    undecided_at_budget: bool = False
    examined: int = 0

    def to_doc(self) -> dict:
        return {
            "total": self.total,
            "examined": self.examined,
            "counts": dict(self.counts),
            "complete": self.complete,
            "consistent": self.consistent,
            "undecided_at_budget": self.undecided_at_budget,
            "uncovered_sample": [dict(q.bindings) for q in self.uncovered_sample],
            "conflicting_sample": [dict(q.bindings) for q in self.conflicting_sample],
        }


class RuleBase:
    def __init__(
        self,
        rules: Sequence[Rule],
        space: QuestionSpace,
        verdicts: Iterable[str] = DEFAULT_VERDICTS,
        rulebase_id: str = "rulebase",
    ):
        self.id = rulebase_id
        self.space = space
        self.verdicts = tuple(verdicts)
        self.rules = tuple(rules)

        seen: set[str] = set()
        valid_atoms = set(space.atom_names())
        attr_names = {attr.name for attr in space.attributes}
        for rule in self.rules:
            if rule.id in seen:
                raise LoadError(f"duplicate rule id {rule.id!r}")
            seen.add(rule.id)
            if rule.verdict not in self.verdicts:
                raise LoadError(
                    f"rule {rule.id!r}: verdict {rule.verdict!r} not in the declared set"
                )
            unknown_dc = rule.dont_care - attr_names
            if unknown_dc:
                raise LoadError(
                    f"rule {rule.id!r}: unknown dont_care attribute(s): "
                    + ", ".join(sorted(unknown_dc))
                )
            for atom in rule.condition.atoms():
                if atom not in valid_atoms:
                    raise LoadError(
                        f"rule {rule.id!r}: condition atom {atom!r} names no "
                        "attribute=value of the space"
                    )
                attr = atom.split("=", 1)[0]
                if attr in rule.dont_care:
                    raise LoadError(
                        f"rule {rule.id!r}: condition reads dont_care attribute {attr!r}"
                    )


def load_rulebase(doc: Union[str, Mapping], space: QuestionSpace) -> RuleBase:
    """Build a validated RuleBase from JSON text or a parsed mapping."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise LoadError(f"malformed rulebase document: {exc}") from None
    if not isinstance(doc, Mapping) or "rules" not in doc:
        raise LoadError("rulebase document must be a JSON object with a 'rules' list")
    declared_space = doc.get("space")
    if declared_space is not None and declared_space != space.id:
        raise LoadError(
            f"rulebase targets space {declared_space!r}, got {space.id!r}"
        )
    verdicts = tuple(doc.get("verdicts", DEFAULT_VERDICTS))
    rules = []
    for entry in doc["rules"]:
        if not isinstance(entry, Mapping):
            raise LoadError("malformed rule entry")
        missing = [k for k in ("id", "polarity", "condition", "verdict", "reason") if k not in entry]
        if missing:
            raise LoadError(
                f"rule entry {entry.get('id', '?')!r} misses: " + ", ".join(missing)
            )
        condition = parse_formula(entry["condition"])
        rules.append(
            Rule(
                id=entry["id"],
                polarity=entry["polarity"],
                condition=condition,
                verdict=entry["verdict"],
                reason=entry["reason"],
                dont_care=frozenset(entry.get("dont_care", ())),
                primary_rule=entry.get("primary_rule"),
            )
        )
    return RuleBase(rules, space, verdicts, rulebase_id=doc.get("id", "rulebase"))


def _explain(rule: Rule) -> list[str]:
    lines = [
        f"rule {rule.id} ({rule.polarity}) fired: {print_formula(rule.condition)}"
        + (f" [ignoring: {', '.join(sorted(rule.dont_care))}]" if rule.dont_care else ""),
        f"  reason: {rule.reason}",
    ]
    if rule.primary_rule:
        lines.append(f"  primary rule: {rule.primary_rule}")
    return lines


def match_question(rb: RuleBase, q: Question) -> Verdict:
    """Match one question against the rulebase, with a step-by-step explanation.

    Fired negative rules exclude the question outright.  Otherwise the fired
    positive rules decide: one shared verdict label rules the question,
    disagreeing labels make it conflicting, and no fired rule leaves it
    uncovered.
    """
    try:
        assignment = encode_question(rb.space, q)
    except LoadError as exc:
        raise MatchError(str(exc)) from None

    fired_negative = [r for r in rb.rules if r.polarity == NEGATIVE and evaluate(r.condition, assignment)]
    fired_positive = [r for r in rb.rules if r.polarity == POSITIVE and evaluate(r.condition, assignment)]

    if fired_negative:
        label = fired_negative[0].verdict
        explanation = [f"excluded: {label}"]
        for rule in fired_negative:
            explanation.extend(_explain(rule))
        return Verdict(EXCLUDED, label, tuple(r.id for r in fired_negative), tuple(explanation))

    if fired_positive:
        labels = {r.verdict for r in fired_positive}
        if len(labels) > 1:
            explanation = ["conflicting verdicts: " + ", ".join(sorted(labels))]
            for rule in fired_positive:
                explanation.extend(_explain(rule))
            return Verdict(
                CONFLICTING, None, tuple(r.id for r in fired_positive), tuple(explanation)
            )
        label = fired_positive[0].verdict
        explanation = [f"ruled: {label}"]
        for rule in fired_positive:
            explanation.extend(_explain(rule))
        return Verdict(RULED, label, tuple(r.id for r in fired_positive), tuple(explanation))

    return Verdict(UNCOVERED, None, (), ("uncovered: no rule fired",))


def classify_space(
    rb: RuleBase,
    max_questions: int = DEFAULT_CLASSIFY_BUDGET,
    sample_limit: int = DEFAULT_SAMPLE_LIMIT,
    require_primary_rule: bool = False,
) -> CoverageReport:
    """Stream every question through ``match_question`` and decide the
    completeness and consistency of the legislation the rulebase encodes.

    Complete: no uncovered question.  Consistent: no conflicting question
    (reasons are already mandatory at load; with ``require_primary_rule``
    a fired rule lacking a primary-rule citation also breaks consistency).
    If the space exceeds ``max_questions`` the scan stops and the report
    says undecided at this budget, with the partial tallies kept.
    """
    total = question_count(rb.space)
    counts = {status: 0 for status in STATUSES}
    uncovered_sample: list[Question] = []
    conflicting_sample: list[Question] = []
    fired_without_primary: set[str] = set()

    examined = 0
    undecided = total > max_questions
    for q in enumerate_questions(rb.space):
        if examined >= max_questions:
            break
        verdict = match_question(rb, q)
        counts[verdict.status] += 1
        if verdict.status == UNCOVERED and len(uncovered_sample) < sample_limit:
            uncovered_sample.append(q)
        if verdict.status == CONFLICTING and len(conflicting_sample) < sample_limit:
            conflicting_sample.append(q)
        if require_primary_rule:
            for rule_id in verdict.matched_rules:
                fired_without_primary.add(rule_id)
        examined += 1

    if require_primary_rule:
        by_id = {r.id: r for r in rb.rules}
        fired_without_primary = {
            rid for rid in fired_without_primary if not by_id[rid].primary_rule
        }

    complete: Optional[bool]
    consistent: Optional[bool]
    if undecided:
        complete = None
        consistent = None
    else:
        complete = counts[UNCOVERED] == 0
        consistent = counts[CONFLICTING] == 0 and not fired_without_primary
    return CoverageReport(
        total=total,
        counts=counts,
        uncovered_sample=uncovered_sample,
        conflicting_sample=conflicting_sample,
        complete=complete,
        consistent=consistent,
        undecided_at_budget=undecided,
        examined=examined,
    )


def verify_compression(
    rb: RuleBase,
    table: Sequence[tuple[Question, Mapping[str, Optional[str]]]],
) -> list[dict]:
    """Check the rulebase against an explicit question table.

    Each row pairs a question with the expected outcome, a mapping with
    keys ``status`` and optionally ``verdict``.  Returns one mismatch
    record per disagreeing row; an empty list means the rulebase
    reproduces the table exactly.
    """
    mismatches: list[dict] = []
    for q, expected in table:
        actual = match_question(rb, q)
        expected_status = expected.get("status")
        expected_verdict = expected.get("verdict")
        bad_status = expected_status is not None and actual.status != expected_status
        bad_verdict = (
            expected_verdict is not None and actual.verdict_label != expected_verdict
        )
        if bad_status or bad_verdict:
            mismatches.append(
                {
                    "question": dict(q.bindings),
                    "expected": dict(expected),
                    "actual": {"status": actual.status, "verdict": actual.verdict_label},
                }
            )
    return mismatches


def gap_report(report: CoverageReport) -> str:
    """Human-readable account of the coverage decision, for the scholars
    doing the manual rule abstraction: which questions slip through, which
    collide, and the resulting completeness/consistency verdicts."""
    lines = [
        f"questions total: {report.total}",
        "status counts: "
        + ", ".join(f"{status}={report.counts[status]}" for status in STATUSES),
    ]
    if report.undecided_at_budget:
        lines.append(
            f"undecided at this budget: examined {report.examined} of {report.total}"
        )
    else:
        lines.append(f"complete: {'yes' if report.complete else 'no'}")
        lines.append(f"consistent: {'yes' if report.consistent else 'no'}")
    if not report.uncovered_sample and not report.conflicting_sample:
        if report.complete and report.consistent:
            lines.append("no gaps")
        return "\n".join(lines) + "\n"
    if report.uncovered_sample:
        lines.append(f"uncovered sample (first {len(report.uncovered_sample)}):")
        for q in report.uncovered_sample:
            lines.append("  - " + " ".join(f"{a}={v}" for a, v in q.bindings.items()))
    if report.conflicting_sample:
        lines.append(f"conflicting sample (first {len(report.conflicting_sample)}):")
        for q in report.conflicting_sample:
            lines.append("  - " + " ".join(f"{a}={v}" for a, v in q.bindings.items()))
    return "\n".join(lines) + "\n"
