"""Satisfiability and semantic entailment for detailed formulas.

Two routes are kept deliberately separate: ``sat_dpll`` is the production
solver (Tseitin clause form plus DPLL with unit propagation and pure
literals), ``sat_bruteforce`` is the independent enumeration oracle used
to cross-check it.  ``entails`` decides semantic consequence by testing
the premises together with the negated conclusion for unsatisfiability;
a satisfying assignment of that test is returned as the countermodel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import BudgetError
from .formulas import (
    And,
    Assignment,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    _require_detailed,
    assignments_over,
    evaluate,
)

DEFAULT_DPLL_ATOM_BUDGET = 64
DEFAULT_BRUTEFORCE_ATOM_BUDGET = 20

SATISFIABLE = "satisfiable"
UNSATISFIABLE = "unsatisfiable"


@dataclass(frozen=True)
class SatResult:
    status: str
    model: Optional[Assignment] = None

    @property
    def satisfiable(self) -> bool:
        return self.status == SATISFIABLE


@dataclass(frozen=True)
class Entailment:
    """Outcome of an entailment query; countermodel present iff it fails."""

    holds: bool
    countermodel: Optional[Assignment] = None

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------------------
# Tseitin clause form
#
# Every subformula gets an integer variable; atom variables come first so a
# model projects back onto atoms by index.  Clauses are lists of nonzero
# ints, negative meaning negated.
# ---------------------------------------------------------------------------


def _tseitin(f: Formula, atom_index: dict[str, int]) -> list[list[int]]:
    clauses: list[list[int]] = []
    next_var = [len(atom_index)]

    def fresh() -> int:
        next_var[0] += 1
        return next_var[0]

    def encode(node: Formula) -> int:
        if isinstance(node, Atom):
            return atom_index[node.name]
        if isinstance(node, Not):
            a = encode(node.operand)
            v = fresh()
            clauses.append([v, a])
            clauses.append([-v, -a])
            return v
        a = encode(node.left)  # type: ignore[attr-defined]
        b = encode(node.right)  # type: ignore[attr-defined]
        v = fresh()
        if isinstance(node, And):
            clauses.append([-v, a])
            clauses.append([-v, b])
            clauses.append([v, -a, -b])
        elif isinstance(node, Or):
            clauses.append([v, -a])
            clauses.append([v, -b])
            clauses.append([-v, a, b])
        elif isinstance(node, Implies):
            clauses.append([v, a])
            clauses.append([v, -b])
            clauses.append([-v, -a, b])
        elif isinstance(node, Iff):
            clauses.append([-v, -a, b])
            clauses.append([-v, a, -b])
            clauses.append([v, a, b])
            clauses.append([v, -a, -b])
        else:
            raise TypeError(f"not a formula node: {node!r}")
        return v

    root = encode(f)
    clauses.append([root])
    return clauses


def _dpll(clauses: list[list[int]], assignment: dict[int, bool]) -> Optional[dict[int, bool]]:
    while True:
        simplified: list[list[int]] = []
        unit: Optional[int] = None
        for clause in clauses:
            satisfied = False
            remaining: list[int] = []
            for lit in clause:
                val = assignment.get(abs(lit))
                if val is None:
                    remaining.append(lit)
                elif (lit > 0) == val:
                    satisfied = True
                    break
            if satisfied:
                continue
            if not remaining:
                return None  # conflict
            if len(remaining) == 1 and unit is None:
                unit = remaining[0]
            simplified.append(remaining)
        clauses = simplified
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0

    if not clauses:
        return assignment

    # Pure literal elimination.
    polarity: dict[int, int] = {}
    for clause in clauses:
        for lit in clause:
            polarity[abs(lit)] = polarity.get(abs(lit), 0) | (1 if lit > 0 else 2)
    pure = [v for v, p in polarity.items() if p != 3]
    if pure:
        for v in pure:
            assignment[v] = polarity[v] == 1
        clauses = [c for c in clauses if not any((lit > 0) == assignment[abs(lit)] for lit in c if abs(lit) in assignment)]
        if not clauses:
            return assignment
        return _dpll(clauses, assignment)

    var = abs(clauses[0][0])
    for value in (False, True):
        trial = dict(assignment)
        trial[var] = value
        result = _dpll(clauses, trial)
        if result is not None:
            return result
    return None


def sat_dpll(f: Formula, max_atoms: int = DEFAULT_DPLL_ATOM_BUDGET) -> SatResult:
    """Decide satisfiability of a detailed formula by DPLL.

    A returned model is total over the formula's atoms and verified by
    ``evaluate`` before it leaves this function.
    """
    _require_detailed(f, "sat_dpll")
    names = sorted(f.atoms())
    if len(names) > max_atoms:
        raise BudgetError(f"{len(names)} atoms exceed the solver cap of {max_atoms}")
    atom_index = {name: i + 1 for i, name in enumerate(names)}
    clauses = _tseitin(f, atom_index)
    solution = _dpll(clauses, {})
    if solution is None:
        return SatResult(UNSATISFIABLE)
    model = {name: solution.get(idx, False) for name, idx in atom_index.items()}
    assert evaluate(f, model), "DPLL model failed verification"
    return SatResult(SATISFIABLE, model)


def sat_bruteforce(f: Formula, max_atoms: int = DEFAULT_BRUTEFORCE_ATOM_BUDGET) -> SatResult:
    """Exhaustive-enumeration satisfiability; the oracle for ``sat_dpll``."""
    _require_detailed(f, "sat_bruteforce")
    names = sorted(f.atoms())
    if len(names) > max_atoms:
        raise BudgetError(f"{len(names)} atoms exceed the enumeration cap of {max_atoms}")
    for assignment in assignments_over(names):
        if evaluate(f, assignment):
            return SatResult(SATISFIABLE, assignment)
    return SatResult(UNSATISFIABLE)


def _balanced_and(parts: list[Formula]) -> Formula:
    # Balanced fold keeps recursion depth logarithmic in the premise count.
    if len(parts) == 1:
        return parts[0]
    mid = len(parts) // 2
    return And(_balanced_and(parts[:mid]), _balanced_and(parts[mid:]))


def entails(premises: Sequence[Formula], conclusion: Formula) -> Entailment:
    """Does every assignment satisfying all premises satisfy the conclusion?

    All formulas must be detailed; general premises are instantiated by the
    caller first.  Decided by unsatisfiability of premises plus the negated
    conclusion.  On failure the satisfying assignment comes back as the
    countermodel, total over all atoms involved.
    """
    _require_detailed(conclusion, "entails")
    for premise in premises:
        _require_detailed(premise, "entails")
    test = _balanced_and([*premises, Not(conclusion)])
    atom_count = len(test.atoms())
    result = sat_dpll(test, max_atoms=max(DEFAULT_DPLL_ATOM_BUDGET, atom_count))
    if result.satisfiable:
        return Entailment(False, result.model)
    return Entailment(True)
