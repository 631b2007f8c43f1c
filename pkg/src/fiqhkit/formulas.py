"""Propositional rule language: AST, parser, printer, and semantics.

Grammar (whitespace insignificant, ``#`` starts a comment running to end
of line)::

    formula := iff
    iff     := impl ("<->" iff)?
    impl    := or ("->" impl)?
    or      := and ("|" or)?
    and     := unary ("&" and)?
    unary   := "inverse" "(" formula ")" | "~" unary | "(" formula ")" | ident
    ident   := [A-Za-z_][A-Za-z0-9_=]*

Binary connectives are right-associative; precedence is
inverse/~ > & > | > -> > <->.  Negation has two spellings, ``inverse(...)``
and ``~``, which parse to the same node; ``inverse(...)`` is the canonical
one on output.  The "=" inside identifiers permits attribute=value atoms
produced by question encoding.

Identifiers name either atoms or variables.  Casing does not decide which:
a parse call receives the set of declared variable names, and every other
identifier is an atom.  A formula with no variable node is "detailed";
otherwise it is "general" and must be instantiated (see ``substitute``)
before any truth-functional operation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import (
    BudgetError,
    EvalError,
    GeneralFormulaError,
    ParseError,
    SubstitutionError,
)

Assignment = dict[str, bool]

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_=]*")

# Default cap for truth_table; 2^24 rows is already a 16M-row list.
MAX_TABLE_ATOMS = 24


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


class Formula:
    """Base class for formula nodes. Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)

    def atoms(self) -> frozenset[str]:
        return frozenset(_collect(self, Atom))

    def variables(self) -> frozenset[str]:
        return frozenset(_collect(self, Var))

    def is_detailed(self) -> bool:
        """True when the formula contains no variable node."""
        return not _collect(self, Var)


def _valid_name(name: str) -> bool:
    return bool(IDENT_RE.fullmatch(name))


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self) -> None:
        if not _valid_name(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str

    def __post_init__(self) -> None:
        if not _valid_name(self.name):
            raise ValueError(f"invalid variable name: {self.name!r}")


@dataclass(frozen=True, slots=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


_BINARY = (And, Or, Implies, Iff)


def _collect(f: Formula, kind: type) -> set[str]:
    names: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            names.add(node.name)  # type: ignore[attr-defined]
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, _BINARY):
            stack.append(node.left)
            stack.append(node.right)
    return names


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<darrow><->)
  | (?P<arrow>->)
  | (?P<pipe>\|)
  | (?P<amp>&)
  | (?P<tilde>~)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_=]*)
    """,
    re.VERBOSE,
)

_TOKEN_LABEL = {
    "darrow": "'<->'",
    "arrow": "'->'",
    "pipe": "'|'",
    "amp": "'&'",
    "tilde": "'~'",
    "lparen": "'('",
    "rparen": "')'",
    "ident": "identifier",
    "eof": "end of input",
}


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1
            )
        kind = m.lastgroup or ""
        if kind in ("ws", "comment"):
            line += m.group().count("\n")
            if "\n" in m.group():
                line_start = m.start() + m.group().rindex("\n") + 1
        else:
            tokens.append(_Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent, one token of lookahead)
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], variables: frozenset[str]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(tok, (_TOKEN_LABEL[kind],))
        return self.advance()

    def fail(self, tok: _Token, expected: tuple[str, ...]) -> None:
        got = _TOKEN_LABEL.get(tok.kind, repr(tok.text))
        if tok.kind == "ident":
            got = repr(tok.text)
        raise ParseError(f"unexpected {got}", tok.line, tok.column, expected)

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        left = self.impl()
        if self.peek().kind == "darrow":
            self.advance()
            return Iff(left, self.iff())
        return left

    def impl(self) -> Formula:
        left = self.or_()
        if self.peek().kind == "arrow":
            self.advance()
            return Implies(left, self.impl())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        if self.peek().kind == "pipe":
            self.advance()
            return Or(left, self.or_())
        return left

    def and_(self) -> Formula:
        left = self.unary()
        if self.peek().kind == "amp":
            self.advance()
            return And(left, self.and_())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "tilde":
            self.advance()
            return Not(self.unary())
        if tok.kind == "lparen":
            self.advance()
            inner = self.formula()
            self.expect("rparen")
            return inner
        if tok.kind == "ident":
            self.advance()
            # "inverse" immediately applied to a parenthesized formula is
            # the negation keyword; bare it is an ordinary identifier.
            if tok.text == "inverse" and self.peek().kind == "lparen":
                self.advance()
                inner = self.formula()
                self.expect("rparen")
                return Not(inner)
            if tok.text in self.variables:
                return Var(tok.text)
            return Atom(tok.text)
        self.fail(tok, ("identifier", "'inverse('", "'~'", "'('"))
        raise AssertionError("unreachable")


def parse_formula(text: str, variables: Iterable[str] = ()) -> Formula:
    """Parse ``text`` into a formula.

    ``variables`` declares which identifiers are variables; all others are
    atoms.  Raises :class:`ParseError` with line/column and the expected
    token set on malformed input (including doubled connectives such as
    ``Fs -> -> Fv``).
    """
    declared = frozenset(variables)
    parser = _Parser(_tokenize(text), declared)
    node = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        parser.fail(tok, ("end of input",))
    return node


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

# Precedence levels; higher binds tighter.
_LEVEL: dict[type, int] = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OP_TEXT: dict[type, str] = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def print_formula(f: Formula) -> str:
    """Canonical text for ``f``; ``parse_formula`` inverts it structurally.

    Binary connectives are right-associative, so a left child at the same
    precedence level is parenthesized and a right child is not.
    """
    return _print(f, 0, False)


def _print(f: Formula, parent_level: int, is_left: bool) -> str:
    if isinstance(f, (Atom, Var)):
        return f.name
    if isinstance(f, Not):
        return f"inverse({_print(f.operand, 0, False)})"
    level = _LEVEL[type(f)]
    text = (
        _print(f.left, level, True)  # type: ignore[attr-defined]
        + f" {_OP_TEXT[type(f)]} "
        + _print(f.right, level, False)  # type: ignore[attr-defined]
    )
    if level < parent_level or (level == parent_level and is_left):
        return f"({text})"
    return text


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------


def _require_detailed(f: Formula, op: str) -> None:
    vs = f.variables()
    if vs:
        raise GeneralFormulaError(
            f"{op} requires a detailed formula; unbound variables: "
            + ", ".join(sorted(vs))
        )


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth-functional evaluation of a detailed formula.

    ``->`` is material implication and ``<->`` the biconditional.  Raises
    :class:`EvalError` naming any atom the assignment misses, and
    :class:`GeneralFormulaError` if ``f`` still contains variables.
    """
    if isinstance(f, Atom):
        try:
            return assignment[f.name]
        except KeyError:
            raise EvalError(f"assignment does not bind atom {f.name!r}") from None
    if isinstance(f, Not):
        return not evaluate(f.operand, assignment)
    if isinstance(f, And):
        return evaluate(f.left, assignment) and evaluate(f.right, assignment)
    if isinstance(f, Or):
        return evaluate(f.left, assignment) or evaluate(f.right, assignment)
    if isinstance(f, Implies):
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    if isinstance(f, Iff):
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    if isinstance(f, Var):
        raise GeneralFormulaError(
            f"cannot evaluate a general formula; unbound variable {f.name!r}"
        )
    raise TypeError(f"not a formula node: {f!r}")


def substitute(f: Formula, binding: Mapping[str, str]) -> Formula:
    """Replace every variable with the atom it is bound to.

    The result is detailed.  Runs in linear time over the formula.  Raises
    :class:`SubstitutionError` if any variable of ``f`` is unbound or a
    binding target is not a well-formed atom name.
    """
    missing = f.variables() - set(binding)
    if missing:
        raise SubstitutionError(
            "substitution does not bind: " + ", ".join(sorted(missing))
        )
    return _substitute(f, binding)


def _substitute(f: Formula, binding: Mapping[str, str]) -> Formula:
    if isinstance(f, Var):
        target = binding[f.name]
        if not _valid_name(target):
            raise SubstitutionError(f"invalid substitution target: {target!r}")
        return Atom(target)
    if isinstance(f, Atom):
        return f
    if isinstance(f, Not):
        return Not(_substitute(f.operand, binding))
    cls = type(f)
    return cls(_substitute(f.left, binding), _substitute(f.right, binding))  # type: ignore[attr-defined]


def truth_table(
    f: Formula, max_atoms: int = MAX_TABLE_ATOMS
) -> list[tuple[Assignment, bool]]:
    """All 2^n rows for a detailed formula, atoms in lexicographic order.

    Rows count up with False < True, first atom most significant.
    """
    _require_detailed(f, "truth_table")
    names = sorted(f.atoms())
    if len(names) > max_atoms:
        raise BudgetError(
            f"truth table over {len(names)} atoms exceeds the cap of {max_atoms}"
        )
    rows: list[tuple[Assignment, bool]] = []
    for values in itertools.product((False, True), repeat=len(names)):
        assignment = dict(zip(names, values))
        rows.append((assignment, evaluate(f, assignment)))
    return rows


def assignments_over(names: Iterable[str]) -> Iterator[Assignment]:
    """Stream every assignment over ``names`` (sorted), never materialized."""
    ordered = sorted(set(names))
    for values in itertools.product((False, True), repeat=len(ordered)):
        yield dict(zip(ordered, values))


def negate(f: Formula) -> Formula:
    """The formula-level opposite of ``f``.

    Collapses double negation and pushes through conjunction and
    disjunction (De Morgan), so the opposite of a conjunction of inverted
    parts comes out as the disjunction of the parts themselves.  Other
    shapes are simply wrapped.
    """
    if isinstance(f, Not):
        return f.operand
    if isinstance(f, And):
        return Or(negate(f.left), negate(f.right))
    if isinstance(f, Or):
        return And(negate(f.left), negate(f.right))
    return Not(f)
