"""Command-line front end.

Subcommands: count, gen, ask, classify, prove, sat, qiyas, fsm replay,
serve.  Exit codes: 0 on success, 1 when a check mode ends in a negative
domain verdict (unsatisfiable, not derivable, excluded/conflicting,
incomplete/inconsistent, analogy invalid, session not valid), 2 on usage
or data errors.

Data inputs (``--space``, ``--rules``, ``--automaton``, ``--case``)
accept a file path or a name resolved against the data directory
(``--data-dir`` flag, ``FIQHKIT_DATA_DIR`` environment variable, or the
packaged samples).
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .analogy import load_analogy_doc, validate_analogy
from .datafiles import packaged_data_dir
from .deduction import derive_detailed
from .errors import FiqhkitError
from .formulas import parse_formula, print_formula
from .fsm import load_automaton, replay_log, verdict as session_verdict
from .questions import (
    Question,
    enumerate_questions,
    load_question_space,
    question_count,
)
from .rules import (
    CONFLICTING,
    EXCLUDED,
    classify_space,
    gap_report,
    load_rulebase,
    match_question,
)
from .solver import sat_bruteforce, sat_dpll


def _data_dir(args) -> Path:
    if getattr(args, "data_dir", None):
        return Path(args.data_dir)
    env = os.environ.get("FIQHKIT_DATA_DIR")
    return Path(env) if env else packaged_data_dir()


def _resolve(args, name: str, suffix: str) -> Path:
    """Find a data file by path or by name within the data directory."""
    base = _data_dir(args)
    candidates = [
        Path(name),
        Path(str(name) + ".json"),
        base / name,
        base / (str(name) + ".json"),
        base / (str(name) + suffix),
    ]
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise FiqhkitError(f"cannot find {name!r} (tried {suffix} files under {base})")


def _load_space(args, name: str):
    path = _resolve(args, name, ".space.json")
    return load_question_space(path.read_text(encoding="utf-8"), space_id=path.name.split(".")[0])


def _load_rules(args, name: str, space):
    path = _resolve(args, name, ".rules.json")
    return load_rulebase(path.read_text(encoding="utf-8"), space)


def _parse_bindings(pairs: list[str]) -> Question:
    bindings = {}
    for pair in pairs:
        if "=" not in pair:
            raise FiqhkitError(f"--set expects attr=value, got {pair!r}")
        attr, value = pair.split("=", 1)
        bindings[attr] = value
    return Question(bindings)


def cmd_count(args) -> int:
    space = _load_space(args, args.space)
    print(question_count(space))
    return 0


def cmd_gen(args) -> int:
    space = _load_space(args, args.space)
    stream = enumerate_questions(space)
    if args.limit is not None:
        stream = itertools.islice(stream, args.limit)
    for q in stream:
        if args.json:
            print(json.dumps(dict(q.bindings), sort_keys=True))
        else:
            print(" ".join(f"{a}={v}" for a, v in q.bindings.items()))
    return 0


def query_response(rb, q: Question) -> dict:
    """The shared CLI/service answer shape for a simple question."""
    result = match_question(rb, q)
    return {
        "status": result.status,
        "verdict": result.verdict_label,
        "matched_rules": list(result.matched_rules),
        "explanation": list(result.explanation),
    }


def cmd_ask(args) -> int:
    space = _load_space(args, args.space)
    rb = _load_rules(args, args.rules, space)
    q = _parse_bindings(args.set or [])
    response = query_response(rb, q)
    if args.json:
        print(json.dumps(response, indent=2, sort_keys=True))
    else:
        for line in response["explanation"]:
            print(line)
    return 1 if response["status"] in (EXCLUDED, CONFLICTING) else 0


def cmd_classify(args) -> int:
    space = _load_space(args, args.space)
    rb = _load_rules(args, args.rules, space)
    report = classify_space(
        rb,
        max_questions=args.max_questions,
        sample_limit=args.samples,
        require_primary_rule=args.require_primary_rule,
    )
    if args.json:
        print(json.dumps(report.to_doc(), indent=2, sort_keys=True))
    else:
        print(gap_report(report), end="")
    return 0 if report.complete and report.consistent else 1


def _read_ruleset(args, name: str):
    path = _resolve(args, name, ".rules.json")
    doc = json.loads(path.read_text(encoding="utf-8"))
    variables = tuple(doc.get("vars", ()))
    return [parse_formula(text, variables) for text in doc.get("rules", ())]


def cmd_prove(args) -> int:
    variables = tuple(v for chunk in (args.vars or []) for v in chunk.split(",") if v)
    rules = []
    if args.rules:
        rules.extend(_read_ruleset(args, args.rules))
    for text in args.rule or []:
        rules.append(parse_formula(text, variables))
    query = parse_formula(args.query)
    trace = derive_detailed(rules, query)
    print(f"{trace.status}: {print_formula(query)}")
    for step_record in trace.steps:
        binding = (
            ", ".join(f"{k}:={v}" for k, v in sorted(step_record.substitution.items()))
            or "(as stated)"
        )
        print(f"  from rule {step_record.rule_index + 1} [{step_record.rule}] with {binding}")
        print(f"    gives {print_formula(step_record.intermediate)}")
    if trace.derived:
        print("  entailment of the query from these instances confirmed")
        return 0
    return 1


def cmd_sat(args) -> int:
    formula = parse_formula(args.formula)
    result = sat_bruteforce(formula) if args.brute else sat_dpll(formula)
    if result.satisfiable:
        model = " ".join(f"{k}={str(v).lower()}" for k, v in sorted(result.model.items()))
        print(f"satisfiable: {model}")
        return 0
    print("unsatisfiable")
    return 1


def cmd_qiyas(args) -> int:
    path = _resolve(args, args.case, ".analogy.json")
    doc = load_analogy_doc(path.read_text(encoding="utf-8"))
    candidate = doc.run()
    print(f"{doc.mode} analogy derives: {print_formula(candidate.derived)}")
    if candidate.substitution:
        print(
            "  substitution: "
            + ", ".join(f"{k}:={v}" for k, v in sorted(candidate.substitution.items()))
        )
    print(f"  justification: {candidate.justification.status}")
    validation = validate_analogy(candidate, doc.axioms)
    print(f"  {validation.message}")
    for direction, model in validation.countermodels.items():
        rendered = " ".join(f"{k}={str(v).lower()}" for k, v in sorted(model.items()))
        print(f"  countermodel ({direction}): {rendered}")
    return 0 if validation.valid else 1


def cmd_fsm_replay(args) -> int:
    path = _resolve(args, args.automaton, ".automaton.json")
    automaton = load_automaton(path.read_text(encoding="utf-8"))
    log_text = Path(args.log).read_text(encoding="utf-8")
    state = replay_log(automaton, log_text)
    outcome = session_verdict(state)
    print(outcome["status"])
    if outcome["missing"]:
        print("missing: " + ", ".join(outcome["missing"]))
    for line in outcome["trace"]:
        print(line)
    return 0 if outcome["status"] == "valid" else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_data_dir(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiqhkit",
        description="Rules-engine toolkit: question spaces, rulebases, deduction, analogy, action sequences.",
    )
    parser.add_argument("--data-dir", help="directory of data files (default: FIQHKIT_DATA_DIR or packaged samples)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of questions in a space")
    p.add_argument("--space", required=True)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("gen", help="enumerate questions")
    p.add_argument("--space", required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("ask", help="match one question against a rulebase")
    p.add_argument("--space", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--set", action="append", metavar="ATTR=VALUE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_ask)

    p = sub.add_parser("classify", help="decide completeness/consistency of a rulebase")
    p.add_argument("--space", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--max-questions", type=int, default=10**7)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--require-primary-rule", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("prove", help="derive a detailed query from rules")
    p.add_argument("--rules", help="rule collection file ({vars, rules:[...]})")
    p.add_argument("--rule", action="append", help="inline rule formula (repeatable)")
    p.add_argument("--vars", action="append", help="variable names for inline rules, comma separated")
    p.add_argument("--query", required=True)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("sat", help="satisfiability of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--brute", action="store_true", help="use the enumeration oracle")
    p.set_defaults(fn=cmd_sat)

    p = sub.add_parser("qiyas", help="run an analogy case file")
    p.add_argument("--case", required=True)
    p.set_defaults(fn=cmd_qiyas)

    fsm = sub.add_parser("fsm", help="action-sequence automaton commands")
    fsm_sub = fsm.add_subparsers(dest="fsm_command", required=True)
    p = fsm_sub.add_parser("replay", help="replay an event log")
    p.add_argument("--automaton", required=True)
    p.add_argument("--log", required=True)
    p.set_defaults(fn=cmd_fsm_replay)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default=os.environ.get("FIQHKIT_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("FIQHKIT_PORT", "8000")))
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FiqhkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
