"""Exact two-level minimization of a truth table into success rules.

Prime implicants come from Quine's iterative merging of cubes that differ in
one fixed attribute. The cover is chosen exactly: essential primes and
dominance reductions first, then branch and bound over the cyclic core.
Among minimum covers the one with fewest literals wins; remaining ties go to
the first cover the (deterministic) search reaches.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

from ._cover import min_cost_cover
from .ingest import AttributeSchema, TruthTable

TAUTOLOGY = "TRUE"
CONTRADICTION = "FALSE"


class CoverError(RuntimeError):
    """The supplied primes do not cover every success."""


@dataclass(frozen=True, order=True)
class Implicant:
    """A cube: combination ``c`` is covered iff ``(c & care_mask) == values``."""

    care_mask: int
    values: int

    def __post_init__(self):
        if self.care_mask < 0 or self.values < 0:
            raise ValueError("masks must be non-negative")
        if self.values & ~self.care_mask:
            raise ValueError("values must be zero outside care_mask")

    @classmethod
    def from_literals(cls, literals: Iterable[Tuple[int, int]], k: int) -> "Implicant":
        """Cube from ``(attribute index, required bit)`` pairs."""
        care = values = 0
        for attribute, bit in literals:
            if not 0 <= attribute < k:
                raise ValueError(f"attribute index {attribute} out of range for k={k}")
            mask = 1 << (k - 1 - attribute)
            if care & mask and bool(values & mask) != bool(bit):
                raise ValueError(f"attribute {attribute} required to be both 0 and 1")
            care |= mask
            if bit:
                values |= mask
        return cls(care, values)

    @classmethod
    def minterm(cls, combination: int, k: int) -> "Implicant":
        return cls((1 << k) - 1, combination)

    @property
    def literal_count(self) -> int:
        return self.care_mask.bit_count()

    def covers(self, combination: int) -> bool:
        return (combination & self.care_mask) == self.values

    def literals(self, k: int) -> List[Tuple[int, int]]:
        out = []
        for attribute in range(k):
            mask = 1 << (k - 1 - attribute)
            if self.care_mask & mask:
                out.append((attribute, int(bool(self.values & mask))))
        return out

    def covered(self, k: int) -> List[int]:
        """All combinations the cube covers, ascending."""
        free = ((1 << k) - 1) & ~self.care_mask
        out = []
        sub = free
        # enumerate subsets of the free bits
        while True:
            out.append(self.values | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
        out.reverse()
        return out

    def n_covered(self, k: int) -> int:
        return 1 << (k - self.literal_count)

    def contains(self, other: "Implicant") -> bool:
        """True if every combination covered by ``other`` is covered by self."""
        return (self.care_mask & ~other.care_mask) == 0 and (other.values & self.care_mask) == self.values

    def intersect(self, other: "Implicant") -> Optional["Implicant"]:
        shared = self.care_mask & other.care_mask
        if (self.values ^ other.values) & shared:
            return None
        return Implicant(self.care_mask | other.care_mask, self.values | other.values)

    def drop(self, mask: int) -> "Implicant":
        """The cube with the attribute at bit ``mask`` relaxed to don't-care."""
        return Implicant(self.care_mask & ~mask, self.values & ~mask)


class RuleSet:
    """An OR of implicants over a schema. Immutable; iterates in sorted order."""

    __slots__ = ("_schema", "_rules")

    def __init__(self, schema: AttributeSchema, rules: Iterable[Implicant] = ()):
        rules = tuple(sorted(set(rules)))
        full = (1 << schema.k) - 1
        for r in rules:
            if r.care_mask & ~full:
                raise ValueError(f"rule {r} does not fit k={schema.k}")
        for a in rules:
            for b in rules:
                if a != b and b.contains(a):
                    raise ValueError(
                        f"rule {format_rule(a, schema)} is subsumed by {format_rule(b, schema)}"
                    )
        self._schema = schema
        self._rules = rules

    @property
    def schema(self) -> AttributeSchema:
        return self._schema

    @property
    def rules(self) -> Tuple[Implicant, ...]:
        return self._rules

    def __iter__(self) -> Iterator[Implicant]:
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, rule) -> bool:
        return rule in self._rules

    def __eq__(self, other) -> bool:
        if not isinstance(other, RuleSet):
            return NotImplemented
        return self._schema == other._schema and self._rules == other._rules

    def __hash__(self) -> int:
        return hash((self._schema, self._rules))

    def __repr__(self) -> str:
        return f"RuleSet({format_rules(self)!r})"

    @property
    def literal_count(self) -> int:
        return sum(r.literal_count for r in self._rules)

    def covered(self) -> FrozenSet[int]:
        k = self._schema.k
        return frozenset(c for r in self._rules for c in r.covered(k))


def generate_prime_implicants(table: TruthTable) -> FrozenSet[Implicant]:
    k = table.schema.k
    full = (1 << k) - 1
    current = {(full, c) for c in table.success_combinations}
    primes = set()
    while current:
        merged = set()
        following = set()
        for care, values in current:
            rest = care
            while rest:
                bit = rest & -rest
                rest ^= bit
                partner = (care, values ^ bit)
                if partner in current:
                    following.add((care & ~bit, values & ~bit))
                    merged.add((care, values))
                    merged.add(partner)
        primes.update(current - merged)
        current = following
    return frozenset(Implicant(care, values) for care, values in primes)


def select_cover(primes: Iterable[Implicant], table: TruthTable) -> RuleSet:
    """Pick a minimum cover of the successes from ``primes``.

    Ties on size break on total literal count. Raises CoverError when the
    primes miss a success or cover a failure.
    """
    schema = table.schema
    columns = sorted(set(primes), key=lambda p: (p.literal_count, p))
    rows = list(table.success_combinations)
    n_rows = len(rows)
    if n_rows == 0:
        return RuleSet(schema)

    row_index = {c: i for i, c in enumerate(rows)}
    col_rows = [0] * len(columns)
    row_cols = [0] * n_rows
    for j, p in enumerate(columns):
        for c in p.covered(schema.k):
            i = row_index.get(c)
            if i is None:
                raise CoverError(f"implicant {format_rule(p, schema)} covers a failure")
            col_rows[j] |= 1 << i
            row_cols[i] |= 1 << j
    for i, cols in enumerate(row_cols):
        if not cols:
            raise CoverError(f"no prime covers success {schema.format_combination(rows[i])}")

    # every cover has fewer than `weight` literals, so size dominates the cost
    weight = len(columns) * schema.k + 1
    cost = [weight + p.literal_count for p in columns]
    picked = min_cost_cover(row_cols, col_rows, cost)
    return RuleSet(schema, (columns[j] for j in picked))


def minimize(table: TruthTable) -> RuleSet:
    """Minimal sum-of-products rule set that reproduces ``table`` exactly."""
    if not any(table.outcomes):
        return RuleSet(table.schema)
    return select_cover(generate_prime_implicants(table), table)


def evaluate(rules: RuleSet, combination: int) -> bool:
    combination = rules.schema.check_combination(combination)
    return any(r.covers(combination) for r in rules)


def format_rule(rule: Implicant, schema: AttributeSchema) -> str:
    if rule.care_mask == 0:
        return TAUTOLOGY
    parts = []
    for attribute, bit in rule.literals(schema.k):
        letter = schema.attributes[attribute].letter
        parts.append(letter if bit else letter + "'")
    return "".join(parts)


def format_rules(rules: RuleSet) -> str:
    """Terms joined by `` + ``; the empty set renders as ``FALSE``."""
    if not len(rules):
        return CONTRADICTION
    ordered = sorted(rules, key=lambda r: _display_key(r, rules.schema.k))
    return " + ".join(format_rule(r, rules.schema) for r in ordered)


def _display_key(rule: Implicant, k: int):
    # fewer literals first, then attribute order with 1-literals before 0-literals
    return rule.literal_count, [(a, 1 - b) for a, b in rule.literals(k)]


def parse_rule(text: str, schema: AttributeSchema) -> Implicant:
    text = text.strip()
    if text == TAUTOLOGY:
        return Implicant(0, 0)
    letters = sorted(((a.letter, i) for i, a in enumerate(schema.attributes)),
                     key=lambda item: -len(item[0]))
    pattern = re.compile("|".join(re.escape(letter) for letter, _ in letters))
    index = dict(letters)
    literals = []
    pos = 0
    while pos < len(text):
        match = pattern.match(text, pos)
        if match is None:
            raise ValueError(f"cannot parse rule {text!r} at position {pos}")
        pos = match.end()
        negated = pos < len(text) and text[pos] == "'"
        if negated:
            pos += 1
        literals.append((index[match.group()], 0 if negated else 1))
    return Implicant.from_literals(literals, schema.k)


def parse_rules(text: str, schema: AttributeSchema) -> RuleSet:
    text = text.strip()
    if text == CONTRADICTION or not text:
        return RuleSet(schema)
    return RuleSet(schema, (parse_rule(term, schema) for term in text.split("+")))
