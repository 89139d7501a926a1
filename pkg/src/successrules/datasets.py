"""Bundled example data."""
from __future__ import annotations

from .ingest import AttributeSchema, AttributeSpec, FrequencyTable, frequency_table_from_counts

# Successful-outcome counts per personality-type combination, in combination
# order 0000..1111 over (E, S, T, J). Only successes were recorded.
CASE_STUDY_SUCCESSES = (2, 1, 6, 16, 5, 27, 32, 31, 10, 36, 102, 180, 40, 140, 202, 170)


def case_study_schema() -> AttributeSchema:
    return AttributeSchema((
        AttributeSpec("E", label_one="Extravert", label_zero="Introvert"),
        AttributeSpec("S", label_one="Sensing", label_zero="Intuition"),
        AttributeSpec("T", label_one="Thinking", label_zero="Feeling"),
        AttributeSpec("J", label_one="Judging", label_zero="Perceiving"),
    ))


def load_case_study() -> FrequencyTable:
    """The 1000-success personality-type case study (share-mode data)."""
    return frequency_table_from_counts(case_study_schema(), CASE_STUDY_SUCCESSES)
