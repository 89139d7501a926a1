"""Plain-text Karnaugh maps for two to four attributes."""
from __future__ import annotations

from typing import List, Optional

from .ingest import TruthTable
from .minimize import RuleSet, format_rule, minimize


class UnsupportedRendering(ValueError):
    pass


def gray_code(n: int) -> List[int]:
    """Reflected Gray sequence of ``n``-bit values (00, 01, 11, 10 for n=2)."""
    return [i ^ (i >> 1) for i in range(1 << n)]


def layout(k: int):
    """Split k attributes into column bits (the first ceil(k/2)) and row bits."""
    if not 2 <= k <= 4:
        raise UnsupportedRendering(f"Karnaugh maps are rendered for 2 to 4 attributes, not {k}")
    col_bits = (k + 1) // 2
    return col_bits, k - col_bits


def grid(table: TruthTable) -> List[List[int]]:
    """Cell values indexed ``[row][column]`` in Gray order."""
    col_bits, row_bits = layout(table.schema.k)
    return [[int(table[(col << row_bits) | row]) for col in gray_code(col_bits)]
            for row in gray_code(row_bits)]


def render_karnaugh(table: TruthTable, rules: Optional[RuleSet] = None) -> str:
    schema = table.schema
    col_bits, row_bits = layout(schema.k)
    if rules is None:
        rules = minimize(table)
    letters = [a.letter for a in schema.attributes]
    col_title = "".join(letters[:col_bits])
    row_title = "".join(letters[col_bits:])
    corner = f"{row_title}\\{col_title}"
    width = max(col_bits, 1)
    cols = [format(c, f"0{col_bits}b") for c in gray_code(col_bits)]
    rows = [format(r, f"0{row_bits}b") for r in gray_code(row_bits)]
    lead = max(len(corner), row_bits)

    lines = [corner.ljust(lead) + " | " + " ".join(c.rjust(width) for c in cols)]
    lines.append("-" * lead + "-+-" + "-".join("-" * width for _ in cols))
    for label, values in zip(rows, grid(table)):
        lines.append(label.ljust(lead) + " | " + " ".join(str(v).rjust(width) for v in values))

    if len(rules):
        lines.append("")
        lines.append("Groups:")
        for rule in rules:
            cells = " ".join(schema.format_combination(c) for c in rule.covered(schema.k))
            lines.append(f"  {format_rule(rule, schema)}: {cells}")
    return "\n".join(lines)
