import itertools
import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from fiqhkit.errors import LoadError
from fiqhkit.questions import (
    Question,
    decode_assignment,
    encode_question,
    enumerate_questions,
    load_question_space,
    question_count,
)


def make_space_doc(sizes):
    """Distribute one attribute per size over the four elements, round robin."""
    elements = {"subject": [], "tool": [], "reason": [], "method": []}
    order = list(elements)
    for i, size in enumerate(sizes):
        elements[order[i % 4]].append(
            {
                "attribute": f"attr{i}",
                "values": [{"id": f"v{i}_{j}", "label": f"value {j}"} for j in range(size)],
            }
        )
    return elements


space_docs = st.lists(st.integers(min_value=1, max_value=4), min_size=4, max_size=8).map(
    make_space_doc
)


class TestLoad:
    def test_taymammum_sample(self, taymammum):
        assert [a.size for a in taymammum.attributes] == [3, 2, 2, 2, 3, 2, 2, 2, 2, 2, 3]
        assert question_count(taymammum) == 3 * 2 * 2 * 2 * 3 * 2 * 2 * 2 * 2 * 2 * 3

    def test_zero_values_rejected(self):
        doc = make_space_doc([2, 2, 2, 2])
        doc["subject"][0]["values"] = []
        with pytest.raises(LoadError, match="no values"):
            load_question_space(doc)

    def test_duplicate_attribute_rejected(self):
        doc = make_space_doc([2, 2, 2, 2])
        doc["tool"][0]["attribute"] = "attr0"  # collides with subject's attr0
        with pytest.raises(LoadError, match="duplicate attribute"):
            load_question_space(doc)

    def test_duplicate_value_rejected(self):
        doc = make_space_doc([2, 2, 2, 2])
        doc["subject"][0]["values"][1]["id"] = doc["subject"][0]["values"][0]["id"]
        with pytest.raises(LoadError, match="duplicate value"):
            load_question_space(doc)

    def test_missing_element_rejected(self):
        doc = make_space_doc([2, 2, 2, 2])
        del doc["method"]
        with pytest.raises(LoadError, match="missing question element"):
            load_question_space(doc)

    def test_unknown_element_rejected(self):
        doc = make_space_doc([2, 2, 2, 2])
        doc["weather"] = doc["subject"]
        with pytest.raises(LoadError, match="unknown question element"):
            load_question_space(doc)

    def test_id_grammar_enforced(self):
        doc = make_space_doc([2, 2, 2, 2])
        doc["subject"][0]["attribute"] = "has=equals"
        with pytest.raises(LoadError, match="invalid attribute id"):
            load_question_space(doc)

    def test_count_overflow_rejected(self):
        # 2^130 combinations exceed the 128-bit guarantee.
        doc = make_space_doc([2] * 130)
        with pytest.raises(LoadError, match="128-bit"):
            load_question_space(doc)

    def test_json_text_accepted(self):
        space = load_question_space(json.dumps(make_space_doc([1, 1, 1, 1])), "tiny")
        assert question_count(space) == 1
        assert space.id == "tiny"


class TestCount:
    def test_single_value_space(self):
        space = load_question_space(make_space_doc([1, 1, 1, 1]))
        assert question_count(space) == 1

    def test_count_equals_enumeration(self):
        space = load_question_space(make_space_doc([2, 3, 1, 1]))
        assert question_count(space) == 6
        assert len(list(enumerate_questions(space))) == 6


class TestEnumerate:
    def test_two_value_attribute(self):
        space = load_question_space(make_space_doc([2, 1, 1, 1]))
        combos = [q.bindings["attr0"] for q in enumerate_questions(space)]
        assert combos == ["v0_0", "v0_1"]

    def test_four_distinct(self):
        space = load_question_space(make_space_doc([2, 2, 1, 1]))
        qs = list(enumerate_questions(space))
        assert len(qs) == 4
        assert len({tuple(sorted(q.bindings.items())) for q in qs}) == 4

    def test_taymammum_all_distinct(self, taymammum):
        seen = set()
        for q in enumerate_questions(taymammum):
            seen.add(tuple(q.bindings.values()))
        assert len(seen) == 6912

    def test_lexicographic_order(self):
        space = load_question_space(make_space_doc([2, 3, 1, 1]))
        raw = [
            (q.bindings["attr0"], q.bindings["attr1"]) for q in enumerate_questions(space)
        ]
        pools = (["v0_0", "v0_1"], ["v1_0", "v1_1", "v1_2"])
        assert raw == list(itertools.product(*pools))

    @given(space_docs)
    @settings(max_examples=40)
    def test_count_and_distinctness(self, doc):
        space = load_question_space(doc)
        qs = list(enumerate_questions(space))
        assert len(qs) == question_count(space)
        assert len({tuple(q.bindings.items()) for q in qs}) == len(qs)

    @given(space_docs)
    @settings(max_examples=20)
    def test_determinism(self, doc):
        space = load_question_space(doc)
        first = [tuple(q.bindings.items()) for q in enumerate_questions(space)]
        second = [tuple(q.bindings.items()) for q in enumerate_questions(space)]
        assert first == second


class TestEncode:
    def test_one_true_atom_per_attribute(self):
        space = load_question_space(make_space_doc([3, 2, 1, 1]))
        q = next(enumerate_questions(space))
        assignment = encode_question(space, q)
        assert assignment["attr0=v0_0"] is True
        assert assignment["attr0=v0_1"] is False
        assert assignment["attr0=v0_2"] is False

    def test_single_value_attribute_always_true(self):
        space = load_question_space(make_space_doc([1, 1, 1, 1]))
        q = next(enumerate_questions(space))
        assert all(encode_question(space, q).values())

    def test_roundtrip_decode(self, taymammum):
        for q in itertools.islice(enumerate_questions(taymammum), 100):
            assert decode_assignment(taymammum, encode_question(taymammum, q)) == q

    @given(space_docs)
    @settings(max_examples=25)
    def test_one_hot_everywhere(self, doc):
        space = load_question_space(doc)
        for q in itertools.islice(enumerate_questions(space), 50):
            assignment = encode_question(space, q)
            for attr in space.attributes:
                hot = sum(assignment[f"{attr.name}={v}"] for v in attr.value_ids)
                assert hot == 1

    def test_invalid_question_rejected(self, taymammum):
        with pytest.raises(LoadError):
            encode_question(taymammum, Question({"gender": "robot"}))
        with pytest.raises(LoadError):
            encode_question(taymammum, Question({"gender": "man"}))
