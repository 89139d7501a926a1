"""Shared test helpers."""
from pathlib import Path

from successrules import AttributeSchema, TruthTable

DATA = Path(__file__).parent / "data"
CASE_SUCCESSES = (0b1010, 0b1011, 0b1101, 0b1110, 0b1111)


def table_from_bits(k, outcome_bits, names=None):
    """Truth table whose combination c is a success iff bit c of ``outcome_bits`` is set."""
    names = names or [chr(ord("A") + i) for i in range(k)]
    schema = AttributeSchema.from_names(names)
    return TruthTable(schema, tuple(bool(outcome_bits >> c & 1) for c in range(1 << k)))
