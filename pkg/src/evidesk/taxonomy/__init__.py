"""Question-type schema library, composition, and answer structuring."""

from evidesk.taxonomy.library import (
    QuestionType,
    SchemaField,
    SchemaLibrary,
    default_library,
)
from evidesk.taxonomy.composing import CompositeSchema, ComposedField, compose, match_question_types
from evidesk.taxonomy.populating import PopulatedField, StructuredOutput, populate

__all__ = [
    "QuestionType",
    "SchemaField",
    "SchemaLibrary",
    "default_library",
    "CompositeSchema",
    "ComposedField",
    "compose",
    "match_question_types",
    "PopulatedField",
    "StructuredOutput",
    "populate",
]
