#!/usr/bin/env python3
"""Independent brute-force baseline for the shipped Tahara rulebase.

Deliberately does NOT import the engine: the space and rulebase JSON are
read directly, questions are enumerated with itertools.product, and rule
conditions are evaluated by a tiny conjunction-of-(possibly inverted)-
atoms interpreter that rejects anything fancier.  The tallies and samples
it writes are the committed reference the engine's classifier must
reproduce byte for byte.

Outputs (relative to --out-dir):
    tahara_baseline.json    canonical coverage document
    tahara_gap.golden.txt   gap report text
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

STATUSES = ("ruled", "excluded", "uncovered", "conflicting")
SAMPLE_LIMIT = 10


def load_attributes(space_doc: dict) -> list[tuple[str, list[str]]]:
    attributes = []
    for element in ("subject", "tool", "reason", "method"):
        for entry in space_doc[element]:
            attributes.append(
                (entry["attribute"], [v["id"] for v in entry["values"]])
            )
    return attributes


def compile_condition(text: str):
    """Interpret 'atom & inverse(atom) & ...' over question bindings."""
    tests = []
    for raw in text.split("&"):
        conjunct = raw.strip()
        negated = False
        if conjunct.startswith("inverse(") and conjunct.endswith(")"):
            negated = True
            conjunct = conjunct[len("inverse("):-1].strip()
        if "(" in conjunct or ")" in conjunct or "|" in conjunct or "->" in conjunct:
            raise SystemExit(
                f"oracle only handles conjunctions of atoms, got: {text!r}"
            )
        attr, _, value = conjunct.partition("=")
        if not value:
            raise SystemExit(f"oracle expects attr=value atoms, got: {conjunct!r}")
        tests.append((attr, value, negated))

    def fire(question: dict) -> bool:
        for attr, value, negated in tests:
            hit = question[attr] == value
            if hit == negated:
                return False
        return True

    return fire


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    default_data = Path(__file__).resolve().parents[1] / "src" / "fiqhkit" / "data"
    default_out = Path(__file__).resolve().parents[1] / "tests" / "data"
    parser.add_argument("--data-dir", type=Path, default=default_data)
    parser.add_argument("--out-dir", type=Path, default=default_out)
    args = parser.parse_args()

    space_doc = json.loads((args.data_dir / "taymammum.space.json").read_text())
    rules_doc = json.loads((args.data_dir / "tahara.rules.json").read_text())

    attributes = load_attributes(space_doc)
    names = [name for name, _ in attributes]
    pools = [values for _, values in attributes]

    rules = []
    for entry in rules_doc["rules"]:
        if not entry["reason"].strip():
            raise SystemExit(f"rule {entry['id']} has no reason")
        rules.append(
            (entry["polarity"], entry["verdict"], compile_condition(entry["condition"]))
        )

    total = 1
    for pool in pools:
        total *= len(pool)

    counts = {status: 0 for status in STATUSES}
    uncovered_sample: list[dict] = []
    conflicting_sample: list[dict] = []

    for combo in itertools.product(*pools):
        question = dict(zip(names, combo))
        fired_neg = [v for p, v, fire in rules if p == "negative" and fire(question)]
        fired_pos = [v for p, v, fire in rules if p == "positive" and fire(question)]
        if fired_neg:
            status = "excluded"
        elif fired_pos:
            status = "conflicting" if len(set(fired_pos)) > 1 else "ruled"
        else:
            status = "uncovered"
        counts[status] += 1
        if status == "uncovered" and len(uncovered_sample) < SAMPLE_LIMIT:
            uncovered_sample.append(question)
        if status == "conflicting" and len(conflicting_sample) < SAMPLE_LIMIT:
            conflicting_sample.append(question)

    doc = {
        "total": total,
        "examined": total,
        "counts": counts,
        "complete": counts["uncovered"] == 0,
        "consistent": counts["conflicting"] == 0,
        "undecided_at_budget": False,
        "uncovered_sample": uncovered_sample,
        "conflicting_sample": conflicting_sample,
    }

    gap_lines = [
        f"questions total: {total}",
        "status counts: "
        + ", ".join(f"{status}={counts[status]}" for status in STATUSES),
        f"complete: {'yes' if doc['complete'] else 'no'}",
        f"consistent: {'yes' if doc['consistent'] else 'no'}",
    ]
    if not uncovered_sample and not conflicting_sample:
        if doc["complete"] and doc["consistent"]:
            gap_lines.append("no gaps")
    if uncovered_sample:
        gap_lines.append(f"uncovered sample (first {len(uncovered_sample)}):")
        for q in uncovered_sample:
            gap_lines.append("  - " + " ".join(f"{a}={v}" for a, v in q.items()))
    if conflicting_sample:
        gap_lines.append(f"conflicting sample (first {len(conflicting_sample)}):")
        for q in conflicting_sample:
            gap_lines.append("  - " + " ".join(f"{a}={v}" for a, v in q.items()))

    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "tahara_baseline.json").write_text(
        json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (args.out_dir / "tahara_gap.golden.txt").write_text(
        "\n".join(gap_lines) + "\n", encoding="utf-8"
    )
    print(f"total={total} counts={counts}")


if __name__ == "__main__":
    main()
