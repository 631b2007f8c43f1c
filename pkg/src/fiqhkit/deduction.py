"""Deriving detailed conclusions from rule sets, with replayable traces.

The derivation relation is instantiate-then-check: variables of general
rules are substituted with atoms drawn from the query, and the detailed
query is then tested for semantic entailment from the instantiated set.
This mirrors the complexity split between cheap substitution and the
SAT-shaped entailment step.

Also here: the circularity check over rule sets.  Conditionals induce a
dependency graph from antecedent atoms to consequent atoms; strongly
connected components that contain a negated dependency are reported as
errors, negation-free ones as warnings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import BudgetError
from .formulas import (
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Var,
    _require_detailed,
    parse_formula,
    print_formula,
    substitute,
)
from .solver import entails

DERIVED = "derived"
NOT_DERIVABLE = "not-derivable"

DEFAULT_INSTANTIATION_BUDGET = 10**6

# Greedy trace minimization is skipped above this many candidate premises;
# each removal probe is a SAT call.
_PRUNE_LIMIT = 256


@dataclass(frozen=True)
class DeductionStep:
    """One instantiation used by a derivation."""

    rule_index: int
    rule: str
    substitution: dict[str, str]
    intermediate: Formula


@dataclass(frozen=True)
class DeductionTrace:
    conclusion: Formula
    steps: tuple[DeductionStep, ...]
    status: str

    @property
    def derived(self) -> bool:
        return self.status == DERIVED

    def premises(self) -> list[Formula]:
        return [step.intermediate for step in self.steps]

    def replay(self) -> bool:
        """Re-check the trace: every step re-instantiates to its recorded
        intermediate, and the intermediates entail the conclusion."""
        if not self.derived:
            return not self.steps
        for step in self.steps:
            rule = parse_formula(step.rule, variables=step.substitution)
            instance = substitute(rule, step.substitution) if step.substitution else rule
            if instance != step.intermediate:
                return False
        return bool(entails(self.premises(), self.conclusion))


def derive_detailed(
    rules: Sequence[Formula],
    query: Formula,
    max_instantiations: int = DEFAULT_INSTANTIATION_BUDGET,
) -> DeductionTrace:
    """Derive a detailed query from general and detailed rules.

    Every variable of every rule ranges over the query's atoms.  If the
    full instantiation set entails the query, the trace is greedily pruned
    to a smaller sufficient subset, each step recording the rule, the
    substitution applied, and the detailed instance it produced.  A derived
    trace has empty steps only in the degenerate case of a valid query
    posed against an empty rule set.
    """
    _require_detailed(query, "derive_detailed")
    candidates = instantiate_rules(rules, sorted(query.atoms()), max_instantiations)
    premises = [step.intermediate for step in candidates]
    if not entails(premises, query):
        return DeductionTrace(query, (), NOT_DERIVABLE)

    kept = _prune(candidates, query)
    return DeductionTrace(query, tuple(kept), DERIVED)


def instantiate_rules(
    rules: Sequence[Formula],
    atoms: Sequence[str],
    budget: int = DEFAULT_INSTANTIATION_BUDGET,
) -> list[DeductionStep]:
    """Every substitution of each rule's variables by the given atoms,
    detailed rules passing through unchanged."""
    total = 0
    steps: list[DeductionStep] = []
    for index, rule in enumerate(rules):
        variables = sorted(rule.variables())
        if not variables:
            steps.append(DeductionStep(index, print_formula(rule), {}, rule))
            total += 1
        else:
            count = len(atoms) ** len(variables)
            total += count
            if total > budget:
                raise BudgetError(
                    f"instantiation count exceeds the budget of {budget}"
                )
            for values in itertools.product(atoms, repeat=len(variables)):
                binding = dict(zip(variables, values))
                steps.append(
                    DeductionStep(
                        index, print_formula(rule), binding, substitute(rule, binding)
                    )
                )
        if total > budget:
            raise BudgetError(f"instantiation count exceeds the budget of {budget}")
    return steps


def _prune(steps: list[DeductionStep], query: Formula) -> list[DeductionStep]:
    if len(steps) > _PRUNE_LIMIT:
        return steps
    kept = list(steps)
    for step in list(steps):
        trial = [s for s in kept if s is not step]
        # A derived trace keeps at least one step: even a tautological
        # query records which instantiation discharged it.
        if trial and entails([s.intermediate for s in trial], query):
            kept = trial
    return kept


# ---------------------------------------------------------------------------
# Circularity check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    atoms: tuple[str, ...]
    through_negation: bool

    @property
    def severity(self) -> str:
        return "error" if self.through_negation else "warning"


@dataclass(frozen=True)
class CycleReport:
    cycles: tuple[Cycle, ...]

    @property
    def is_stratified(self) -> bool:
        return not any(c.through_negation for c in self.cycles)

    @property
    def errors(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if c.through_negation)

    @property
    def warnings(self) -> tuple[Cycle, ...]:
        return tuple(c for c in self.cycles if not c.through_negation)


def check_stratification(rules: Sequence[Formula]) -> CycleReport:
    """Report dependency cycles among the atoms of a rule set.

    Each conditional contributes edges from its antecedent atoms to its
    consequent atoms (both directions for a biconditional).  An edge is
    negated when either endpoint occurrence sits under an odd number of
    negations.  Cycles containing a negated edge are errors; benign cycles
    are warnings only.
    """
    edges: dict[str, set[str]] = {}
    negated_edges: set[tuple[str, str]] = set()

    def add_edge(src: str, dst: str, negated: bool) -> None:
        edges.setdefault(src, set()).add(dst)
        edges.setdefault(dst, set())
        if negated:
            negated_edges.add((src, dst))

    for rule in rules:
        for antecedent, consequent in _conditionals(rule):
            for a_name, a_neg in _occurrences(antecedent):
                for c_name, c_neg in _occurrences(consequent):
                    add_edge(a_name, c_name, a_neg or c_neg)

    components = _strongly_connected(edges)
    cycles: list[Cycle] = []
    for component in components:
        members = set(component)
        cyclic = len(component) > 1 or (
            component[0] in edges.get(component[0], ())
        )
        if not cyclic:
            continue
        negated = any(
            (src, dst) in negated_edges
            for src in members
            for dst in edges.get(src, ())
            if dst in members
        )
        cycles.append(Cycle(tuple(sorted(members)), negated))
    cycles.sort(key=lambda c: c.atoms)
    return CycleReport(tuple(cycles))


def _conditionals(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Implies):
            yield node.left, node.right
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Iff):
            yield node.left, node.right
            yield node.right, node.left
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif hasattr(node, "left"):
            stack.append(node.left)
            stack.append(node.right)


def _occurrences(f: Formula):
    """Yield (name, under_odd_negation) for every leaf occurrence."""
    stack = [(f, False)]
    while stack:
        node, neg = stack.pop()
        if isinstance(node, (Atom, Var)):
            yield node.name, neg
        elif isinstance(node, Not):
            stack.append((node.operand, not neg))
        elif hasattr(node, "left"):
            stack.append((node.left, neg))
            stack.append((node.right, neg))


def _strongly_connected(edges: dict[str, set[str]]) -> list[list[str]]:
    """Tarjan's algorithm, iterative to keep the stack shallow."""
    index: dict[str, int] = {}
    lowlink: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    components: list[list[str]] = []
    counter = itertools.count()

    for root in sorted(edges):
        if root in index:
            continue
        work: list[tuple[str, Optional[Iterator[str]]]] = [(root, None)]
        while work:
            node, children = work[-1]
            if children is None:
                index[node] = lowlink[node] = next(counter)
                stack.append(node)
                on_stack.add(node)
                children = iter(sorted(edges.get(node, ())))
                work[-1] = (node, children)
            advanced = False
            for child in children:
                if child not in index:
                    work.append((child, None))
                    advanced = True
                    break
                if child in on_stack:
                    lowlink[node] = min(lowlink[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component: list[str] = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                components.append(component)
    return components
