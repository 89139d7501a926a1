import pytest

from successrules import (
    AttributeSchema,
    EffectCandidate,
    UnavailableError,
    added_error,
    conditional_success_rate,
    enumerate_candidates,
    frequency_table_from_counts,
    minimize,
    overall_error,
    scan_effects,
    suggest_replacements,
    classify,
    ClassifyConfig,
)

E = EffectCandidate(((0, 1),))
EJ = EffectCandidate(((0, 1), (3, 1)))


def test_candidate_counts(case_schema):
    candidates = enumerate_candidates(case_schema)
    singles = [c for c in candidates if len(c.literals) == 1]
    pairs = [c for c in candidates if len(c.literals) == 2]
    assert len(singles) == 8 and len(pairs) == 24


def test_candidate_validation():
    with pytest.raises(ValueError):
        EffectCandidate(((0, 1), (0, 0)))
    with pytest.raises(ValueError):
        EffectCandidate(())
    with pytest.raises(ValueError):
        EffectCandidate(((0, 1), (1, 1), (2, 1)))


def test_main_effect_e(case_table, case_freq):
    report = added_error(E, case_table, case_freq)
    assert report.inconsistent == (0b1000, 0b1001, 0b1100)
    assert report.expected_cases == pytest.approx(187.5)
    assert report.actual_cases == 86
    assert report.added_error == pytest.approx(0.5413, abs=1e-4)
    assert report.overall_error == pytest.approx(0.203, abs=1e-3)
    assert overall_error(report) == pytest.approx(report.overall_error)


def test_pair_effect_ej(case_table, case_freq):
    report = added_error(EJ, case_table, case_freq)
    assert report.inconsistent == (0b1001,)
    assert report.expected_cases == pytest.approx(62.5)
    assert report.actual_cases == 36
    assert report.added_error == pytest.approx(0.424)
    assert report.overall_error == pytest.approx(0.106)


def test_consistent_candidate_has_zero_error(case_table, case_freq):
    report = added_error(EffectCandidate(((0, 1), (2, 1))), case_table, case_freq)
    assert report.inconsistent_count == 0
    assert report.added_error == 0 and report.overall_error == 0


def test_negative_deviation_is_flagged():
    schema = AttributeSchema.from_names("AB")
    freq = frequency_table_from_counts(schema, [0, 0, 10, 90])
    table = classify(freq, ClassifyConfig("share", 50))
    report = added_error(EffectCandidate(((0, 1),)), table, freq)
    # 10 successes where a uniform spread expects 25: still positive
    assert not report.negative_deviation
    freq = frequency_table_from_counts(schema, [0, 0, 40, 60])
    table = classify(freq, ClassifyConfig("share", 50))
    report = added_error(EffectCandidate(((0, 1),)), table, freq)
    assert report.negative_deviation and report.added_error == pytest.approx(-0.6)


def test_replacements(case_table, case_schema):
    rules = minimize(case_table)
    from successrules import format_rule
    assert [format_rule(r, case_schema) for r in suggest_replacements(E, rules)] == ["ET", "ESJ"]
    assert [format_rule(r, case_schema) for r in suggest_replacements(EJ, rules)] == ["ESJ"]


def test_scan_sorted_and_complete(case_table, case_freq):
    reports = scan_effects(case_table, case_freq, minimize(case_table))
    assert len(reports) == 32
    errors = [r.overall_error for r in reports]
    assert errors == sorted(errors)
    by_label = {r.label: r for r in reports}
    assert by_label["E"].overall_error == pytest.approx(0.203, abs=1e-3)
    assert by_label["EJ"].overall_error == pytest.approx(0.106)


def test_conditional_success_rate():
    schema = AttributeSchema.from_names("AB")
    freq = frequency_table_from_counts(schema, [0, 1, 19, 0], [5, 5, 1, 0])
    assert conditional_success_rate(0, 1, freq) == pytest.approx(95.0)
    assert conditional_success_rate(0, 0, freq) == pytest.approx(100 / 11)
    empty = frequency_table_from_counts(schema, [0, 1, 0, 0], [0, 0, 0, 0])
    with pytest.raises(UnavailableError):
        conditional_success_rate(0, 1, empty)


def test_conditional_rate_unavailable_for_share_data(case_freq, case_table):
    with pytest.raises(UnavailableError):
        conditional_success_rate(0, 1, case_freq)
    assert added_error(E, case_table, case_freq).conditional_success_rate is None
