"""fiqhkit: a rules-engine toolkit for formalized Fiqh reasoning.

Subsystems:

- ``formulas``   the propositional rule language (parser, printer, semantics)
- ``solver``     DPLL satisfiability, brute-force oracle, entailment
- ``deduction``  substitution-based derivation with traces; circularity check
- ``questions``  terminology trees and combinatorial question generation
- ``rules``      positive/negative rulebases, matching, coverage decisions
- ``analogy``    direct and inverse analogy with validity checking
- ``fsm``        action-sequence automata for compound questions
- ``service``    HTTP session/query service
- ``cli``        command-line front end
"""

from .errors import (
    AnalogyError,
    BudgetError,
    EvalError,
    FiqhkitError,
    GeneralFormulaError,
    LoadError,
    MatchError,
    ParseError,
    SessionError,
    SubstitutionError,
)
from .formulas import (
    And,
    Assignment,
    Atom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    evaluate,
    negate,
    parse_formula,
    print_formula,
    substitute,
    truth_table,
)
from .solver import Entailment, SatResult, entails, sat_bruteforce, sat_dpll
from .deduction import (
    Cycle,
    CycleReport,
    DeductionStep,
    DeductionTrace,
    check_stratification,
    derive_detailed,
)
from .questions import (
    Attribute,
    Question,
    QuestionSpace,
    TermTree,
    decode_assignment,
    encode_question,
    enumerate_questions,
    load_question_space,
    question_count,
)
from .rules import (
    CoverageReport,
    Rule,
    RuleBase,
    Verdict,
    classify_space,
    gap_report,
    load_rulebase,
    match_question,
    verify_compression,
)
from .analogy import (
    AnalogyCase,
    AnalogyDoc,
    AnalogyValidation,
    CandidateRule,
    direct_analogy,
    inverse_analogy,
    load_analogy_doc,
    validate_analogy,
)
from .fsm import (
    Advice,
    Automaton,
    SessionState,
    check_deterministic,
    init_session,
    load_automaton,
    replay_log,
    step,
    verdict,
)

__version__ = "0.1.0"
