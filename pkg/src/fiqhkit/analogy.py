"""Direct and inverse analogy over rule formulas.

Direct analogy carries a solved case's verdict onto a new case whose
reason matches the solved one's reason schema.  Inverse analogy starts
from a case whose reason is established in the *opposite* form and
transfers the opposite verdict.  Candidates come back with a replayable
justification built through the deduction machinery, and with the
reason/verdict pair that licensed them, so their validity (the reason
being a necessary and sufficient condition) can be checked separately.

An analogy case file is JSON::

    {
      "vars": ["X"],
      "mode": "inverse",
      "primary":   {"reason": "...", "verdict": "..."},
      "secondary": {"reason": "..."},
      "axioms": ["..."]
    }

``axioms`` (optional) lists independently established rules the validity
check may rely on, e.g. the certainty link between a solved primary
case's reason and its verdict.

For the necessary-and-sufficient check, the opposite of a conditional
norm "Q required given P" is read as "Q barred given P": an inverted
implication is normalized to an implication with inverted consequent
before entailment runs.  Under the plain material reading the inverted
branch conditionals of an inverse analogy collapse to a contradiction
and every check would pass or fail vacuously.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

from .errors import AnalogyError, LoadError
from .formulas import (
    And,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    negate,
    parse_formula,
    print_formula,
    substitute,
)
from .deduction import DeductionTrace, derive_detailed, instantiate_rules
from .solver import Entailment, entails

DIRECT = "direct"
INVERSE = "inverse"

PRIMARY = "primary"
SECONDARY = "secondary"


@dataclass(frozen=True)
class AnalogyCase:
    case_formula: Formula
    verdict_formula: Optional[Formula]
    role: str

    def __post_init__(self) -> None:
        if self.role not in (PRIMARY, SECONDARY):
            raise LoadError(f"unknown analogy role: {self.role!r}")
        if self.role == PRIMARY and self.verdict_formula is None:
            raise LoadError("a primary case must come with an established verdict")


@dataclass(frozen=True)
class CandidateRule:
    derived: Formula
    mode: str
    justification: DeductionTrace
    reason_formula: Formula
    verdict_formula: Formula
    substitution: Mapping[str, str]


@dataclass(frozen=True)
class AnalogyValidation:
    valid: bool
    missing: tuple[str, ...] = ()
    countermodels: Mapping[str, Mapping[str, bool]] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.countermodels is None:
            object.__setattr__(self, "countermodels", {})

    @property
    def message(self) -> str:
        if self.valid:
            return "valid: the reason is a necessary and sufficient condition"
        parts = []
        if "sufficient" in self.missing:
            parts.append("the reason does not force the verdict (not sufficient)")
        if "necessary" in self.missing:
            parts.append("the verdict does not force the reason (not necessary)")
        return "invalid: " + "; ".join(parts)


def match_formula(pattern: Formula, target: Formula) -> Optional[dict[str, str]]:
    """One-way structural match; variables bind to atoms only."""
    binding: dict[str, str] = {}

    def walk(p: Formula, t: Formula) -> bool:
        if isinstance(p, Var):
            if not isinstance(t, Atom):
                return False
            bound = binding.get(p.name)
            if bound is None:
                binding[p.name] = t.name
                return True
            return bound == t.name
        if isinstance(p, Atom):
            return isinstance(t, Atom) and p.name == t.name
        if type(p) is not type(t):
            return False
        if isinstance(p, Not):
            return walk(p.operand, t.operand)  # type: ignore[attr-defined]
        return walk(p.left, t.left) and walk(p.right, t.right)  # type: ignore[attr-defined]

    return binding if walk(pattern, target) else None


def direct_analogy(primary: AnalogyCase, secondary_reason: Formula) -> CandidateRule:
    """Transfer the primary verdict to a case sharing its reason schema."""
    if primary.role != PRIMARY:
        raise AnalogyError("direct analogy needs a primary case")
    binding = match_formula(primary.case_formula, secondary_reason)
    if binding is None:
        raise AnalogyError(
            "no unifying substitution: the secondary reason does not share "
            "the primary reason schema"
        )
    derived = substitute(primary.verdict_formula, binding)
    link = Iff(primary.case_formula, primary.verdict_formula)
    justification = derive_detailed([link, secondary_reason], derived)
    return CandidateRule(
        derived=derived,
        mode=DIRECT,
        justification=justification,
        reason_formula=substitute(primary.case_formula, binding),
        verdict_formula=derived,
        substitution=binding,
    )


def inverse_analogy(primary: AnalogyCase, secondary: AnalogyCase) -> CandidateRule:
    """Transfer the opposite verdict to a case establishing the opposite reason.

    The secondary's established reason must match (one branch of) the
    opposite of the primary reason schema.  The justification premises are
    the reason-verdict link of the primary, its opposite-form counterpart,
    and the secondary's established reason.
    """
    if primary.role != PRIMARY:
        raise AnalogyError("inverse analogy needs a primary case")
    opposite = negate(primary.case_formula)
    binding = None
    for candidate in _branches(opposite):
        binding = match_formula(candidate, secondary.case_formula)
        if binding is not None:
            break
    if binding is None:
        raise AnalogyError(
            "precondition unmet: the secondary case does not establish the "
            "opposite of the primary reason"
        )
    derived = substitute(negate(primary.verdict_formula), binding)
    link = Iff(primary.case_formula, primary.verdict_formula)
    dual = Iff(negate(primary.case_formula), negate(primary.verdict_formula))
    justification = derive_detailed([link, dual, secondary.case_formula], derived)
    return CandidateRule(
        derived=derived,
        mode=INVERSE,
        justification=justification,
        reason_formula=substitute(primary.case_formula, binding),
        verdict_formula=substitute(primary.verdict_formula, binding),
        substitution=binding,
    )


def _branches(f: Formula):
    """The formula itself, then its disjunctive branches, outermost first."""
    yield f
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Or):
            for child in (node.left, node.right):
                yield child
                stack.append(child)


def validate_analogy(
    candidate: CandidateRule, rules: Sequence[Formula] = ()
) -> AnalogyValidation:
    """Check that the candidate's reason is necessary and sufficient for
    its verdict under the rule set.

    Sufficient: rules plus the reason entail the verdict.  Necessary:
    rules plus the verdict entail the reason.  Both run on the normalized
    conditional-norm forms; a failed direction is named and comes with the
    countermodel that defeats it.
    """
    reason = normalize_conditional_norms(candidate.reason_formula)
    verdict = normalize_conditional_norms(candidate.verdict_formula)
    atoms = sorted(reason.atoms() | verdict.atoms())
    normalized_rules = [normalize_conditional_norms(r) for r in rules]
    premises = [step.intermediate for step in instantiate_rules(normalized_rules, atoms)]

    checks: dict[str, Entailment] = {
        "sufficient": entails([*premises, reason], verdict),
        "necessary": entails([*premises, verdict], reason),
    }
    missing = tuple(name for name, result in checks.items() if not result.holds)
    countermodels = {
        name: checks[name].countermodel for name in missing if checks[name].countermodel
    }
    return AnalogyValidation(valid=not missing, missing=missing, countermodels=countermodels)


def normalize_conditional_norms(f: Formula) -> Formula:
    """Rewrite an inverted conditional norm into a conditional with the
    opposite consequent: inverse(P -> Q) becomes P -> inverse(Q), with
    double negation collapsed.  Other shapes pass through unchanged."""
    if isinstance(f, Not):
        inner = f.operand
        if isinstance(inner, Implies):
            consequent = normalize_conditional_norms(inner.right)
            flipped = consequent.operand if isinstance(consequent, Not) else Not(consequent)
            return Implies(normalize_conditional_norms(inner.left), flipped)
        if isinstance(inner, Not):
            return normalize_conditional_norms(inner.operand)
        return Not(normalize_conditional_norms(inner))
    if isinstance(f, (Atom, Var)):
        return f
    cls = type(f)
    return cls(
        normalize_conditional_norms(f.left),  # type: ignore[attr-defined]
        normalize_conditional_norms(f.right),  # type: ignore[attr-defined]
    )


@dataclass(frozen=True)
class AnalogyDoc:
    primary: AnalogyCase
    secondary: AnalogyCase
    mode: str
    axioms: tuple[Formula, ...] = ()

    def run(self) -> CandidateRule:
        if self.mode == INVERSE:
            return inverse_analogy(self.primary, self.secondary)
        return direct_analogy(self.primary, self.secondary.case_formula)


def load_analogy_doc(doc: Union[str, Mapping]) -> AnalogyDoc:
    """Parse an analogy case file."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise LoadError(f"malformed analogy document: {exc}") from None
    if not isinstance(doc, Mapping):
        raise LoadError("analogy document must be a JSON object")
    mode = doc.get("mode", DIRECT)
    if mode not in (DIRECT, INVERSE):
        raise LoadError(f"unknown analogy mode: {mode!r}")
    variables = tuple(doc.get("vars", ()))
    try:
        primary_doc = doc["primary"]
        secondary_doc = doc["secondary"]
        primary = AnalogyCase(
            parse_formula(primary_doc["reason"], variables),
            parse_formula(primary_doc["verdict"], variables),
            PRIMARY,
        )
        secondary_verdict = secondary_doc.get("verdict")
        secondary = AnalogyCase(
            parse_formula(secondary_doc["reason"], variables),
            parse_formula(secondary_verdict, variables) if secondary_verdict else None,
            SECONDARY,
        )
    except KeyError as exc:
        raise LoadError(f"analogy document misses field: {exc}") from None
    axioms = tuple(parse_formula(text, variables) for text in doc.get("axioms", ()))
    return AnalogyDoc(primary, secondary, mode, axioms)
