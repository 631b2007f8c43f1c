"""Terminology trees and combinatorial generation of simple questions.

A question space is loaded from a JSON document whose top-level keys are
the four question elements::

    {
      "subject": [
        {"attribute": "gender",
         "values": [{"id": "man", "label": "man"}, ...]},
        ...
      ],
      "tool": [...], "reason": [...], "method": [...]
    }

Attribute and value ids obey the formula identifier grammar minus "=",
which is reserved as the joiner of the ``attr=value`` atoms produced by
``encode_question``.  Display labels are free text in any script.

Enumeration is a mixed-radix odometer over the attribute declaration
order: the stream never materializes the space, so counts far beyond
desk scale remain traversable.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .errors import LoadError
from .formulas import Assignment

ELEMENTS = ("subject", "tool", "reason", "method")

# Product of all attribute sizes must stay within 128-bit arithmetic.
MAX_COUNT = 2**128

_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_id(kind: str, value: str) -> str:
    if not isinstance(value, str) or not _ID_RE.fullmatch(value):
        raise LoadError(f"invalid {kind} id: {value!r}")
    return value


@dataclass(frozen=True)
class Attribute:
    name: str
    value_ids: tuple[str, ...]
    labels: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_id("attribute", self.name)
        if not self.value_ids:
            raise LoadError(f"attribute {self.name!r} has no values")
        seen: set[str] = set()
        for vid in self.value_ids:
            _check_id("value", vid)
            if vid in seen:
                raise LoadError(f"duplicate value id {vid!r} in attribute {self.name!r}")
            seen.add(vid)

    @property
    def size(self) -> int:
        return len(self.value_ids)


@dataclass(frozen=True)
class TermTree:
    element: str
    attributes: tuple[Attribute, ...]

    def __post_init__(self) -> None:
        if self.element not in ELEMENTS:
            raise LoadError(f"unknown question element: {self.element!r}")
        if not self.attributes:
            raise LoadError(f"element {self.element!r} has no attributes")


@dataclass(frozen=True)
class Question:
    """One fully instantiated leaf combination: attribute name -> value id."""

    bindings: Mapping[str, str]

    def as_atoms(self) -> tuple[str, ...]:
        return tuple(f"{attr}={value}" for attr, value in self.bindings.items())


class QuestionSpace:
    """Validated terminology trees covering all four question elements."""

    def __init__(self, trees: tuple[TermTree, ...], space_id: str = "space"):
        self.id = space_id
        self.trees = trees
        present = [tree.element for tree in trees]
        if len(present) != len(set(present)):
            raise LoadError("duplicate question element")
        missing = [e for e in ELEMENTS if e not in present]
        if missing:
            raise LoadError("missing question element(s): " + ", ".join(missing))

        self.attributes: tuple[Attribute, ...] = tuple(
            attr for element in ELEMENTS
            for tree in trees if tree.element == element
            for attr in tree.attributes
        )
        names = [attr.name for attr in self.attributes]
        duplicates = {n for n in names if names.count(n) > 1}
        if duplicates:
            raise LoadError(
                "duplicate attribute id(s): " + ", ".join(sorted(duplicates))
            )
        self._by_name = {attr.name: attr for attr in self.attributes}

        count = 1
        for attr in self.attributes:
            count *= attr.size
        if count >= MAX_COUNT:
            raise LoadError("question count exceeds 128-bit arithmetic")
        self._count = count

    def attribute(self, name: str) -> Attribute:
        try:
            return self._by_name[name]
        except KeyError:
            raise LoadError(f"unknown attribute: {name!r}") from None

    def atom_names(self) -> list[str]:
        return [
            f"{attr.name}={vid}"
            for attr in self.attributes
            for vid in attr.value_ids
        ]

    def element_of(self, attribute_name: str) -> str:
        for tree in self.trees:
            if any(a.name == attribute_name for a in tree.attributes):
                return tree.element
        raise LoadError(f"unknown attribute: {attribute_name!r}")

    def validate_question(self, q: Question) -> None:
        extra = set(q.bindings) - set(self._by_name)
        if extra:
            raise LoadError("unknown attribute(s): " + ", ".join(sorted(extra)))
        for attr in self.attributes:
            if attr.name not in q.bindings:
                raise LoadError(f"question misses attribute {attr.name!r}")
            value = q.bindings[attr.name]
            if value not in attr.value_ids:
                raise LoadError(
                    f"unknown value {value!r} for attribute {attr.name!r}"
                )


def load_question_space(doc: Union[str, Mapping], space_id: str = "space") -> QuestionSpace:
    """Build a validated QuestionSpace from JSON text or a parsed mapping."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise LoadError(f"malformed question-space document: {exc}") from None
    if not isinstance(doc, Mapping):
        raise LoadError("question-space document must be a JSON object")

    trees = []
    for element, entries in doc.items():
        if element not in ELEMENTS:
            raise LoadError(f"unknown question element: {element!r}")
        if not isinstance(entries, list):
            raise LoadError(f"element {element!r} must hold a list of attributes")
        attributes = []
        for entry in entries:
            if not isinstance(entry, Mapping) or "attribute" not in entry:
                raise LoadError(f"malformed attribute entry under {element!r}")
            values = entry.get("values", [])
            if not isinstance(values, list) or not values:
                raise LoadError(
                    f"attribute {entry.get('attribute')!r} has no values"
                )
            ids, labels = [], {}
            for value in values:
                if not isinstance(value, Mapping) or "id" not in value:
                    raise LoadError(
                        f"malformed value entry in attribute {entry['attribute']!r}"
                    )
                ids.append(value["id"])
                labels[value["id"]] = str(value.get("label", value["id"]))
            attributes.append(
                Attribute(_check_id("attribute", entry["attribute"]), tuple(ids), labels)
            )
        trees.append(TermTree(element, tuple(attributes)))
    return QuestionSpace(tuple(trees), space_id)


def question_count(space: QuestionSpace) -> int:
    """Exact product of all attribute sizes."""
    return space._count


def enumerate_questions(space: QuestionSpace) -> Iterator[Question]:
    """Stream every question in lexicographic declaration order.

    Constant memory per item; two enumerations of one space yield
    identical sequences.
    """
    names = [attr.name for attr in space.attributes]
    pools = [attr.value_ids for attr in space.attributes]
    for combo in itertools.product(*pools):
        yield Question(dict(zip(names, combo)))


def encode_question(space: QuestionSpace, q: Question) -> Assignment:
    """One-hot assignment: atom ``attr=value`` true iff chosen in ``q``."""
    space.validate_question(q)
    assignment: Assignment = {}
    for attr in space.attributes:
        chosen = q.bindings[attr.name]
        for vid in attr.value_ids:
            assignment[f"{attr.name}={vid}"] = vid == chosen
    return assignment


def decode_assignment(space: QuestionSpace, assignment: Mapping[str, bool]) -> Question:
    """Inverse of ``encode_question``; requires exactly one true per attribute."""
    bindings: dict[str, str] = {}
    for attr in space.attributes:
        chosen = [vid for vid in attr.value_ids if assignment.get(f"{attr.name}={vid}")]
        if len(chosen) != 1:
            raise LoadError(f"assignment is not one-hot for attribute {attr.name!r}")
        bindings[attr.name] = chosen[0]
    return Question(bindings)
