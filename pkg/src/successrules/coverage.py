"""Rule filtering by the share of observed successes each rule describes.

All masses are percentages of the frequency table's total successes and are
computed from exact counts over explicit sets of covered combinations, so
overlapping rules are never double counted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from .ingest import FrequencyTable
from .minimize import Implicant, RuleSet


@dataclass(frozen=True)
class RuleCoverage:
    rule: Implicant
    success_mass: float
    normalized_share: float


@dataclass(frozen=True)
class SelectedRule:
    rule: Implicant
    marginal_contribution: float
    cumulative_coverage: float


@dataclass(frozen=True)
class FilterResult:
    selected: Tuple[SelectedRule, ...]
    rejected: Tuple[Implicant, ...]
    target_met: bool
    coverage_target: float

    @property
    def rules(self) -> Tuple[Implicant, ...]:
        return tuple(s.rule for s in self.selected)

    @property
    def coverage(self) -> float:
        return self.selected[-1].cumulative_coverage if self.selected else 0.0


def _total(freq: FrequencyTable) -> int:
    total = freq.total_successes
    if total == 0:
        raise ValueError("frequency table has no successes")
    return total


def _count(combinations: Iterable[int], freq: FrequencyTable) -> int:
    return sum(freq.successes[c] for c in combinations)


def _union(rules: Iterable[Implicant], k: int) -> set:
    out = set()
    for r in rules:
        out.update(r.covered(k))
    return out


def rule_success_mass(rule: Implicant, freq: FrequencyTable) -> float:
    total = _total(freq)
    return 100.0 * _count(rule.covered(freq.schema.k), freq) / total


def total_success_mass(rules: Iterable[Implicant], freq: FrequencyTable) -> float:
    """Mass of the union of the rules' covered combinations."""
    total = _total(freq)
    return 100.0 * _count(_union(rules, freq.schema.k), freq) / total


def normalized_share(rule: Implicant, rules: RuleSet, freq: FrequencyTable) -> float:
    """A rule's mass as a percentage of the whole rule set's union mass."""
    if rule not in rules:
        raise ValueError("rule is not a member of the rule set")
    k = freq.schema.k
    denominator = _count(_union(rules, k), freq)
    if denominator == 0:
        raise ValueError("rule set covers no observed successes")
    return 100.0 * _count(rule.covered(k), freq) / denominator


def coverage_table(rules: RuleSet, freq: FrequencyTable) -> List[RuleCoverage]:
    """Mass and normalized share of every rule, largest mass first."""
    k = freq.schema.k
    total = _total(freq)
    union = _count(_union(rules, k), freq)
    out = []
    for r in rules:
        mass = _count(r.covered(k), freq)
        out.append(RuleCoverage(r, 100.0 * mass / total, 100.0 * mass / union if union else 0.0))
    out.sort(key=lambda rc: (-rc.success_mass, rc.rule.literal_count, rc.rule))
    return out


def acceptance_filter(rules: RuleSet, freq: FrequencyTable, min_pct: float) -> RuleSet:
    """Keep the rules describing at least ``min_pct`` percent of all successes."""
    k = freq.schema.k
    total = _total(freq)
    # compare on counts: mass >= min_pct  <=>  100 * count >= min_pct * total
    kept = [r for r in rules if 100 * _count(r.covered(k), freq) >= min_pct * total]
    return RuleSet(rules.schema, kept)


def greedy_filter(rules: RuleSet, freq: FrequencyTable, coverage_target: float,
                  reference: Optional[RuleSet] = None) -> FilterResult:
    """Pick rules by largest marginal share until the coverage target is met.

    Shares are relative to the union mass of ``reference`` (default: ``rules``
    itself), which stays fixed while rules are picked. Ties go to fewer
    literals, then to the smaller cube.
    """
    if not 0 < coverage_target <= 100:
        raise ValueError("coverage_target must lie in (0, 100]")
    k = freq.schema.k
    reference = rules if reference is None else reference
    denominator = _count(_union(reference, k), freq)
    if denominator == 0:
        raise ValueError("rule set covers no observed successes")

    covered_sets = {r: set(r.covered(k)) for r in rules}
    remaining = list(rules)
    union: set = set()
    union_count = 0
    selected = []
    while remaining and 100 * union_count < coverage_target * denominator:
        gains = {r: _count(covered_sets[r] - union, freq) for r in remaining}
        best = min(remaining, key=lambda r: (-gains[r], r.literal_count, r))
        remaining.remove(best)
        union |= covered_sets[best]
        union_count += gains[best]
        selected.append(SelectedRule(best, 100.0 * gains[best] / denominator,
                                     100.0 * union_count / denominator))
    return FilterResult(
        selected=tuple(selected),
        rejected=tuple(remaining),
        target_met=100 * union_count >= coverage_target * denominator,
        coverage_target=coverage_target,
    )
