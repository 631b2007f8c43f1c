"""Acceptance suite: one test per release criterion, exact tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line
per criterion.
"""

import itertools
import json
import random
import time

from fiqhkit.analogy import AnalogyCase, inverse_analogy, validate_analogy
from fiqhkit.deduction import derive_detailed
from fiqhkit.errors import ParseError
from fiqhkit.formulas import evaluate, parse_formula, print_formula
from fiqhkit.fsm import init_session, step
from fiqhkit.questions import enumerate_questions, question_count
from fiqhkit.rules import classify_space, gap_report
from fiqhkit.solver import entails, sat_bruteforce, sat_dpll

from genutil import ATOM_POOL, mutate_text, random_formula

ACTION_IDS = ["intention", "wash_face", "wash_arms", "wipe_head", "wash_feet"]

INVERTED_LINK = parse_formula(
    "(inverse(Fs & Pgv -> X) & inverse(Fs & inverse(Pgv) -> X)) <-> inverse(Fs -> X)",
    ["X"],
)
BRANCH_LINK = parse_formula(
    "((Fs & Pgv -> X) | (Fs & inverse(Pgv) -> X)) <-> (Fs -> X)", ["X"]
)
PLEDGED_FACT = parse_formula("Fs & Pgv -> Fv")


def test_question_space_count(taymammum):
    """The shipped space counts exactly 6912 questions and enumerates as
    many distinct ones in under a second."""
    started = time.perf_counter()
    count = question_count(taymammum)
    seen = set()
    for q in enumerate_questions(taymammum):
        seen.add(tuple(q.bindings.values()))
    elapsed = time.perf_counter() - started
    assert count == 6912
    assert len(seen) == 6912
    assert elapsed < 1.0
    print(f"\nPASS question-space count: 6912 questions, all distinct, {elapsed:.3f}s")


def test_inverse_analogy_derivation():
    """The fasting rule derives from the three sentences with X:=Fv, and a
    candidate built from the truncated reason fails validation."""
    trace = derive_detailed([INVERTED_LINK, BRANCH_LINK, PLEDGED_FACT], parse_formula("Fs -> Fv"))
    assert trace.derived
    assert any(s.substitution == {"X": "Fv"} for s in trace.steps)

    truncated_primary = AnalogyCase(
        parse_formula("inverse(Fs & Pgv -> X)", ["X"]),
        parse_formula("inverse(Fs -> X)", ["X"]),
        "primary",
    )
    secondary = AnalogyCase(PLEDGED_FACT, None, "secondary")
    candidate = inverse_analogy(truncated_primary, secondary)
    validation = validate_analogy(candidate)
    assert not validation.valid
    assert "sufficient" in validation.missing
    print(
        "\nPASS inverse-analogy derivation: derived with X:=Fv; "
        f"truncated reason invalid ({validation.missing[0]} direction missing)"
    )


def test_sat_oracle_equivalence():
    """1000 seeded random formulas with at most 12 atoms: DPLL status must
    match exhaustive enumeration on every one, and each satisfiable model
    must evaluate true."""
    rng = random.Random(4096)
    agreements = 0
    for _ in range(1000):
        n_atoms = rng.randint(1, 12)
        f = random_formula(rng, ATOM_POOL[:n_atoms], max_depth=rng.randint(1, 5))
        fast = sat_dpll(f)
        slow = sat_bruteforce(f)
        assert fast.status == slow.status, print_formula(f)
        if fast.model is not None:
            assert evaluate(f, fast.model) is True
        agreements += 1
    assert agreements == 1000
    print(f"\nPASS sat oracle equivalence: {agreements}/1000 statuses agree, models verified")


def test_derivation_soundness():
    """500 seeded random rule-set/query cases where the syntactic route
    reports derived: the semantic route must confirm every one."""
    rng = random.Random(777)
    confirmed = 0
    attempts = 0
    while confirmed < 500:
        attempts += 1
        assert attempts < 5000, "generator failed to produce enough derived cases"
        atoms = ["P", "Q", "R", "S"][: rng.randint(2, 4)]
        query = random_formula(rng, atoms, max_depth=3)
        rules = [
            random_formula(rng, atoms, max_depth=3, variables=["X"])
            for _ in range(rng.randint(1, 2))
        ]
        if rng.random() < 0.7:
            chosen = rng.choice(sorted(query.atoms()))
            rules.append(
                parse_formula(print_formula(query).replace(chosen, "X"), ["X"])
            )
        trace = derive_detailed(rules, query)
        if not trace.derived:
            continue
        assert entails(trace.premises(), query).holds, print_formula(query)
        confirmed += 1
    print(f"\nPASS derivation soundness: {confirmed}/500 derived cases confirmed by entailment")


def test_wudu_permutations(wudu_shafii, wudu_hanafi):
    """Of the 120 action orderings exactly one completes the ordered
    automaton; all 120 complete the unordered one."""
    ordered_valid = 0
    unordered_valid = 0
    for perm in itertools.permutations(ACTION_IDS):
        state = init_session(wudu_shafii)
        for event in perm:
            state = step(state, event)
        ordered_valid += state.status == "valid"
        state = init_session(wudu_hanafi)
        for event in perm:
            state = step(state, event)
        unordered_valid += state.status == "valid"
    assert ordered_valid == 1
    assert unordered_valid == 120
    print(
        f"\nPASS wudu permutations: ordered {ordered_valid}/120 valid, "
        f"unordered {unordered_valid}/120 valid"
    )


def test_classification_baseline(tahara):
    """The classifier must reproduce the committed brute-force baseline
    byte for byte.  The baseline is oracle-derived (the source publishes
    no counts); scripts/compute_tahara_baseline.py regenerates it."""
    report = classify_space(tahara)
    engine_bytes = (json.dumps(report.to_doc(), indent=2, sort_keys=True) + "\n").encode()
    committed_bytes = open("tests/data/tahara_baseline.json", "rb").read()
    assert engine_bytes == committed_bytes
    gap_bytes = gap_report(report).encode()
    golden_bytes = open("tests/data/tahara_gap.golden.txt", "rb").read()
    assert gap_bytes == golden_bytes
    print(
        "\nPASS classification baseline: counts "
        + ", ".join(f"{k}={v}" for k, v in report.counts.items())
        + " match the committed oracle output byte for byte"
    )


def test_parser_fuzz():
    """10,000 printed random formulas round-trip structurally; 10,000
    mutated strings either parse or raise ParseError, never crash."""
    rng = random.Random(90210)
    for _ in range(10_000):
        f = random_formula(rng, ["A", "B", "C", "D", "E"], max_depth=6)
        assert parse_formula(print_formula(f)) == f

    survived = 0
    for _ in range(10_000):
        f = random_formula(rng, ["A", "B", "C"], max_depth=4)
        text = print_formula(f)
        for _ in range(rng.randint(1, 4)):
            text = mutate_text(rng, text)
        try:
            parse_formula(text)
        except ParseError:
            pass
        survived += 1
    assert survived == 10_000
    print("\nPASS parser fuzz: 10000 round-trips, 10000 mutations without a crash")
