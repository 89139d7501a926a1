"""Main and pairwise effect scan.

Every single-attribute and attribute-pair rule is scored against the truth
table: the combinations it covers that the table marks as failures are its
inconsistencies, and the successes actually observed there are compared with
what a uniform spread of all observations would put there.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations, product
from typing import List, Optional, Tuple

from .ingest import AttributeSchema, FrequencyTable, TruthTable
from .minimize import Implicant, RuleSet, format_rule


class UnavailableError(ValueError):
    """A conditional success rate cannot be computed from the data."""


@dataclass(frozen=True)
class EffectCandidate:
    literals: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        literals = tuple((int(a), int(b)) for a, b in self.literals)
        if len(literals) not in (1, 2):
            raise ValueError("an effect candidate has one or two literals")
        if len({a for a, _ in literals}) != len(literals):
            raise ValueError("candidate attributes must be distinct")
        if any(b not in (0, 1) for _, b in literals):
            raise ValueError("literal bits must be 0 or 1")
        object.__setattr__(self, "literals", tuple(sorted(literals)))

    def implicant(self, k: int) -> Implicant:
        return Implicant.from_literals(self.literals, k)

    def label(self, schema: AttributeSchema) -> str:
        return format_rule(self.implicant(schema.k), schema)


@dataclass(frozen=True)
class EffectReport:
    candidate: EffectCandidate
    label: str
    covered_count: int
    inconsistent: Tuple[int, ...]
    expected_cases: float
    actual_cases: int
    added_error: float
    overall_error: float
    conditional_success_rate: Optional[float]
    replaceable_rules: Tuple[Implicant, ...]

    @property
    def inconsistent_count(self) -> int:
        return len(self.inconsistent)

    @property
    def negative_deviation(self) -> bool:
        """More successes in the inconsistent cells than a uniform spread predicts."""
        return self.added_error < 0


def enumerate_candidates(schema: AttributeSchema) -> List[EffectCandidate]:
    """All 2k single-literal and 4·k(k-1)/2 two-literal candidates."""
    k = schema.k
    out = [EffectCandidate(((a, bit),)) for a in range(k) for bit in (1, 0)]
    for a, b in combinations(range(k), 2):
        for bit_a, bit_b in product((1, 0), repeat=2):
            out.append(EffectCandidate(((a, bit_a), (b, bit_b))))
    return out


def added_error(candidate: EffectCandidate, table: TruthTable, freq: FrequencyTable) -> EffectReport:
    """Score one candidate; ``replaceable_rules`` is left empty."""
    if table.schema != freq.schema:
        raise ValueError("truth table and frequency table use different schemas")
    total = freq.total_observations
    if total == 0:
        raise ValueError("frequency table has no observations")
    k = table.schema.k
    cube = candidate.implicant(k)
    covered = cube.covered(k)
    inconsistent = tuple(c for c in covered if not table[c])
    expected = len(inconsistent) * total / (1 << k)
    actual = sum(freq.successes[c] for c in inconsistent)
    error = (expected - actual) / expected if inconsistent else 0.0
    weight = len(inconsistent) / len(covered)
    rate = None
    if freq.failures_recorded:
        seen = sum(freq.observations(c) for c in covered)
        if seen:
            rate = 100.0 * sum(freq.successes[c] for c in covered) / seen
    return EffectReport(
        candidate=candidate,
        label=format_rule(cube, table.schema),
        covered_count=len(covered),
        inconsistent=inconsistent,
        expected_cases=expected,
        actual_cases=actual,
        added_error=error,
        overall_error=weight * error,
        conditional_success_rate=rate,
        replaceable_rules=(),
    )


def overall_error(report: EffectReport) -> float:
    """Added error weighted by the fraction of covered cells that are inconsistent."""
    return report.inconsistent_count / report.covered_count * report.added_error


def conditional_success_rate(attribute: int, value: int, freq: FrequencyTable) -> float:
    """Percent successes among all observations with ``attribute == value``."""
    if not freq.failures_recorded:
        raise UnavailableError("failures were not recorded; success rates are unavailable")
    mask = freq.schema.bit(attribute)
    want = mask if value else 0
    succ = seen = 0
    for c in range(freq.schema.size):
        if (c & mask) == want:
            succ += freq.successes[c]
            seen += freq.observations(c)
    if seen == 0:
        raise UnavailableError(
            f"no observations with {freq.schema.names[attribute]}={value}"
        )
    return 100.0 * succ / seen


def suggest_replacements(candidate: EffectCandidate, rules: RuleSet) -> List[Implicant]:
    """Rules the candidate would subsume (their literals include the candidate's)."""
    cube = candidate.implicant(rules.schema.k)
    return [r for r in rules if cube.contains(r)]


def scan_effects(table: TruthTable, freq: FrequencyTable, rules: RuleSet) -> List[EffectReport]:
    """Reports for every candidate, smallest overall error first."""
    reports = []
    for candidate in enumerate_candidates(table.schema):
        report = added_error(candidate, table, freq)
        replaceable = tuple(suggest_replacements(candidate, rules))
        reports.append(replace(report, replaceable_rules=replaceable))
    # stable: candidates with equal error keep enumeration order
    reports.sort(key=lambda r: r.overall_error)
    return reports

