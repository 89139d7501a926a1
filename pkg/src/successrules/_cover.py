"""Exact minimum-cost unate covering by branch and bound.

Rows and columns are small integers; ``row_cols[i]`` is the bitmask of
columns covering row ``i`` and ``col_rows[j]`` the bitmask of rows covered by
column ``j``. Column costs must be non-decreasing in the column index, so a lower
index is never dearer; dominance ties keep the lower index.
"""
from __future__ import annotations

import math
import sys
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _Solver:
    def __init__(self, row_cols: Sequence[int], col_rows: Sequence[int], cost: Sequence[int]):
        self.row_cols = row_cols
        self.col_rows = col_rows
        self.cost = cost

    def reduce(self, rows: int, cols: int) -> Optional[Tuple[int, int, List[int]]]:
        """Apply essential columns, row dominance and column dominance until
        nothing changes. Returns None when some row cannot be covered."""
        row_cols, col_rows = self.row_cols, self.col_rows
        forced: List[int] = []
        while True:
            changed = False
            for i in bits(rows):
                if not rows >> i & 1:
                    continue
                avail = row_cols[i] & cols
                if not avail:
                    return None
                if (avail & (avail - 1)) == 0:
                    j = avail.bit_length() - 1
                    forced.append(j)
                    rows &= ~col_rows[j]
                    cols &= ~avail
                    changed = True
            if not rows:
                return rows, cols, forced

            # A row whose columns include all of another row's is implied by it.
            for i in bits(rows):
                if not rows >> i & 1:
                    continue
                mine = row_cols[i] & cols
                for other in bits(col_rows[_lowest(mine)] & rows & ~(1 << i)):
                    theirs = row_cols[other] & cols
                    if (mine & ~theirs) == 0 and (mine != theirs or other > i):
                        rows &= ~(1 << other)
                        changed = True

            # A column is useless if a cheaper one covers all its rows.
            for j in bits(cols):
                mine = col_rows[j] & rows
                if not mine:
                    cols &= ~(1 << j)
                    changed = True
                    continue
                cheaper = row_cols[_lowest(mine)] & cols & ((1 << j) - 1)
                for other in bits(cheaper):
                    if (mine & ~col_rows[other]) == 0:
                        cols &= ~(1 << j)
                        changed = True
                        break
            if not changed:
                return rows, cols, forced

    def components(self, rows: int, cols: int) -> List[Tuple[int, int]]:
        row_cols, col_rows = self.row_cols, self.col_rows
        parts = []
        left = rows
        while left:
            seed = left & -left
            part_rows = seed
            frontier = seed
            part_cols = 0
            while frontier:
                new_cols = 0
                for i in bits(frontier):
                    new_cols |= row_cols[i]
                new_cols &= cols & ~part_cols
                part_cols |= new_cols
                reached = 0
                for j in bits(new_cols):
                    reached |= col_rows[j]
                frontier = reached & rows & ~part_rows
                part_rows |= frontier
            parts.append((part_rows, part_cols))
            left &= ~part_rows
        return parts

    def lower_bound(self, rows: int, cols: int) -> int:
        """Rows pairwise sharing no column need distinct columns."""
        row_cols, cost = self.row_cols, self.cost
        order = sorted(bits(rows), key=lambda i: (row_cols[i] & cols).bit_count())
        used = 0
        total = 0
        for i in order:
            avail = row_cols[i] & cols
            if avail & used:
                continue
            used |= avail
            total += cost[_lowest(avail)]
        return total

    def relax(self, rows: int, cols: int):
        """Solve the LP relaxation at a node.

        Returns ``(bound, values, reduced)`` with ``bound`` an integer lower
        bound on any cover, ``values`` the LP column values and ``reduced``
        the reduced costs, both keyed by column. None if the LP failed.
        """
        row_list = list(bits(rows))
        col_list = list(bits(cols))
        where = {j: n for n, j in enumerate(col_list)}
        a = np.zeros((len(row_list), len(col_list)))
        for r, i in enumerate(row_list):
            for j in bits(self.row_cols[i] & cols):
                a[r, where[j]] = 1.0
        costs = np.array([self.cost[j] for j in col_list], dtype=float)
        res = linprog(costs, A_ub=-a, b_ub=-np.ones(len(row_list)), bounds=(0, 1), method="highs")
        if res.status != 0:
            return None
        duals = -res.ineqlin.marginals
        reduced = costs - a.T @ duals
        # integer costs: the cover count and the total both round up
        tol = 1e-7 * max(1.0, abs(res.fun))
        n_cols = math.ceil(res.fun / costs.max() - 1e-7)
        bound = max(math.ceil(res.fun - tol), n_cols * int(costs.min()))
        return bound, res.fun, dict(zip(col_list, res.x)), dict(zip(col_list, reduced))

    def greedy(self, rows: int, cols: int) -> Tuple[int, List[int]]:
        col_rows, cost = self.col_rows, self.cost
        chosen = []
        while rows:
            best_j, best_gain = -1, 0
            for j in bits(cols):
                gain = (col_rows[j] & rows).bit_count()
                if gain > best_gain:
                    best_j, best_gain = j, gain
            chosen.append(best_j)
            rows &= ~col_rows[best_j]
            cols &= ~(1 << best_j)
        return sum(cost[j] for j in chosen), chosen

    def solve(self, rows: int, cols: int, bound: int) -> Optional[Tuple[int, List[int]]]:
        """Cheapest cover of ``rows`` using ``cols`` costing strictly less
        than ``bound``, or None."""
        reduced = self.reduce(rows, cols)
        if reduced is None:
            return None
        rows, cols, forced = reduced
        base = sum(self.cost[j] for j in forced)
        if base >= bound:
            return None
        if not rows:
            return base, forced

        parts = self.components(rows, cols)
        if len(parts) > 1:
            bounds = [self.lower_bound(r, c) for r, c in parts]
            total = base + sum(bounds)
            if total >= bound:
                return None
            picked = list(forced)
            for (r, c), lb in zip(parts, bounds):
                slack = bound - (total - lb)
                found = self.solve(r, c, slack)
                if found is None:
                    return None
                total += found[0] - lb
                picked.extend(found[1])
            return total, picked

        if base + self.lower_bound(rows, cols) >= bound:
            return None
        relaxed = self.relax(rows, cols)
        values: dict = {}
        if relaxed is not None:
            lp_bound, lp_value, values, reduced = relaxed
            if base + lp_bound >= bound:
                return None
            picked = [j for j, x in values.items() if x > 1 - 1e-9]
            if len(picked) == sum(1 for x in values.values() if x > 1e-9):
                # integral optimum of the relaxation solves the node
                total = base + sum(self.cost[j] for j in picked)
                if total < bound and self._covers(rows, picked):
                    return total, forced + picked
            # a column whose reduced cost closes the gap cannot improve on bound
            target = bound - base
            for j, d in reduced.items():
                if math.ceil(lp_value + d - 1e-7 * max(1.0, abs(lp_value))) >= target:
                    cols &= ~(1 << j)

        # branch on the row with fewest candidate columns, likeliest first
        row = min(bits(rows), key=lambda i: ((self.row_cols[i] & cols).bit_count(), i))
        if not self.row_cols[row] & cols:
            return None
        order = sorted(bits(self.row_cols[row] & cols), key=lambda j: (-values.get(j, 0.0), j))
        best: Optional[Tuple[int, List[int]]] = None
        for j in order:
            remaining_bound = bound - base - self.cost[j]
            if remaining_bound > 0:
                found = self.solve(rows & ~self.col_rows[j], cols & ~(1 << j), remaining_bound)
                if found is not None:
                    bound = base + self.cost[j] + found[0]
                    best = (bound, forced + [j] + found[1])
            # later siblings need not consider j again
            cols &= ~(1 << j)
        return best

    def _covers(self, rows: int, picked: List[int]) -> bool:
        for j in picked:
            rows &= ~self.col_rows[j]
        return rows == 0


def min_cost_cover(row_cols: Sequence[int], col_rows: Sequence[int],
                   cost: Sequence[int]) -> List[int]:
    """Column indices of a cheapest cover of every row.

    Costs must be positive integers, non-decreasing in the column index.
    Among equally cheap covers the first one reached by the search is
    returned; the search order depends only on the inputs.
    """
    solver = _Solver(row_cols, col_rows, cost)
    depth = sys.getrecursionlimit()
    sys.setrecursionlimit(max(depth, 4 * len(row_cols) + 200))
    try:
        return _run(solver, row_cols, col_rows)
    finally:
        sys.setrecursionlimit(depth)


def _run(solver: _Solver, row_cols: Sequence[int], col_rows: Sequence[int]) -> List[int]:
    rows = (1 << len(row_cols)) - 1
    cols = (1 << len(col_rows)) - 1
    if not rows:
        return []
    if any(rc == 0 for rc in row_cols):
        raise ValueError("some row has no covering column")
    greedy_cost, greedy_cols = solver.greedy(rows, cols)
    found = solver.solve(rows, cols, greedy_cost)
    return sorted(found[1] if found is not None else greedy_cols)
