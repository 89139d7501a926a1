"""Brute-force references for checking the minimizer on small tables.

Nothing here shares code with the prime-implicant or cover search: cubes are
enumerated as ternary strings and covers are found by trying every subset in
increasing size.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .ingest import TruthTable
from .minimize import Implicant, RuleSet, evaluate

MAX_ORACLE_ATTRIBUTES = 4


@dataclass(frozen=True)
class OracleResult:
    min_cover_size: int
    one_minimum_cover: RuleSet
    all_cube_count: int
    n_minimum_covers: int


def _cube(pattern, k):
    # pattern entries: 0, 1, or None (don't care); attribute 0 first
    care = values = 0
    for i, p in enumerate(pattern):
        if p is None:
            continue
        bit = 1 << (k - 1 - i)
        care |= bit
        if p:
            values |= bit
    return care, values


def brute_force_minimize(table: TruthTable) -> OracleResult:
    k = table.schema.k
    if k > MAX_ORACLE_ATTRIBUTES:
        raise ValueError(f"oracle refuses k={k} (limit {MAX_ORACLE_ATTRIBUTES})")
    successes = 0
    for c in range(table.schema.size):
        if table[c]:
            successes |= 1 << c

    patterns = list(product((0, 1, None), repeat=k))
    usable = []
    for pattern in patterns:
        care, values = _cube(pattern, k)
        covered = 0
        for c in range(table.schema.size):
            if (c & care) == values:
                covered |= 1 << c
        if (covered & ~successes) == 0:
            usable.append((care, values, covered))

    if successes == 0:
        return OracleResult(0, RuleSet(table.schema), len(patterns), 1)

    for size in range(1, len(usable) + 1):
        best = None
        count = 0
        for combo in combinations(usable, size):
            union = 0
            for _, _, covered in combo:
                union |= covered
            if union != successes:
                continue
            count += 1
            key = (sum(bin(care).count("1") for care, _, _ in combo),
                   sorted((care, values) for care, values, _ in combo))
            if best is None or key < best[0]:
                best = (key, combo)
        if best is not None:
            cover = RuleSet(table.schema, (Implicant(care, values) for care, values, _ in best[1]))
            return OracleResult(size, cover, len(patterns), count)
    raise AssertionError("unreachable: the minterms themselves always cover")


def exhaustive_equivalence(rules: RuleSet, table: TruthTable) -> bool:
    if rules.schema != table.schema:
        raise ValueError("rules and table use different schemas")
    return all(evaluate(rules, c) == table[c] for c in range(table.schema.size))
