"""Terminology trees: every askable simple question, generated not listed."""

import itertools

from fiqhkit import enumerate_questions, encode_question, question_count
from fiqhkit.datafiles import DataRegistry

space = DataRegistry().spaces["taymammum"]

print("attributes:")
for attr in space.attributes:
    print(f"  {space.element_of(attr.name):8s} {attr.name}: {', '.join(attr.value_ids)}")

# The question count is the product of the branch widths.
sizes = [attr.size for attr in space.attributes]
print("sizes:", sizes)
print("questions:", question_count(space))

# Enumeration is a stream; nothing is materialized.
for q in itertools.islice(enumerate_questions(space), 3):
    print("question:", dict(q.bindings))

# Encoding turns a question into one-hot attribute=value atoms, the
# vocabulary rule conditions are written in.
first = next(enumerate_questions(space))
assignment = encode_question(space, first)
true_atoms = [atom for atom, value in assignment.items() if value]
print("true atoms of the first question:")
for atom in true_atoms:
    print(" ", atom)
