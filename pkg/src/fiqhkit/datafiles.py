"""Locating and loading the shipped sample data and user data directories.

A data directory holds ``*.space.json``, ``*.rules.json``,
``*.automaton.json`` and ``*.analogy.json`` files; ids default to the
file stem before the first dot.  The packaged samples live in
``fiqhkit/data`` and are used whenever no directory is given.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Optional

from .errors import LoadError
from .fsm import Automaton, load_automaton
from .questions import QuestionSpace, load_question_space
from .rules import RuleBase, load_rulebase


def packaged_data_dir() -> Path:
    return Path(str(resources.files("fiqhkit") / "data"))


class DataRegistry:
    """All spaces, rulebases, and automata found in one directory."""

    def __init__(self, data_dir: Optional[Path] = None):
        self.data_dir = Path(data_dir) if data_dir else packaged_data_dir()
        self.spaces: dict[str, QuestionSpace] = {}
        self.rulebases: dict[str, RuleBase] = {}
        self.automata: dict[str, Automaton] = {}
        self._load()

    def _load(self) -> None:
        if not self.data_dir.is_dir():
            raise LoadError(f"data directory not found: {self.data_dir}")
        rulebase_docs = []
        for path in sorted(self.data_dir.glob("*.json")):
            doc = json.loads(path.read_text(encoding="utf-8"))
            stem = path.name.split(".")[0]
            if path.name.endswith(".space.json"):
                space = load_question_space(doc, space_id=stem)
                self.spaces[space.id] = space
            elif path.name.endswith(".rules.json"):
                rulebase_docs.append((stem, doc))
            elif path.name.endswith(".automaton.json"):
                automaton = load_automaton(doc)
                self.automata[automaton.id] = automaton
        for stem, doc in rulebase_docs:
            # Sentence collections (plain "rules" string lists) are not
            # rulebases; only documents naming a space are registered.
            space_id = doc.get("space") if isinstance(doc, dict) else None
            if not space_id:
                continue
            space = self.spaces.get(space_id)
            if space is None:
                raise LoadError(
                    f"rulebase {stem!r} targets unknown space {space_id!r}"
                )
            rulebase = load_rulebase(doc, space)
            self.rulebases[rulebase.id] = rulebase

    def rulebase_for_space(self, space_id: str) -> RuleBase:
        matches = [rb for rb in self.rulebases.values() if rb.space.id == space_id]
        if not matches:
            raise LoadError(f"no rulebase covers space {space_id!r}")
        if len(matches) > 1:
            raise LoadError(
                f"multiple rulebases cover space {space_id!r}: "
                + ", ".join(sorted(rb.id for rb in matches))
            )
        return matches[0]
