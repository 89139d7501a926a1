import pytest

from successrules import AttributeSchema, TruthTable, UnsupportedRendering, render_karnaugh
from successrules.karnaugh import gray_code, grid, layout

from helpers import CASE_SUCCESSES, table_from_bits


def one_bit_apart(a, b):
    return bin(a ^ b).count("1") == 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_headers_change_one_bit(k):
    col_bits, row_bits = layout(k)
    for n in (col_bits, row_bits):
        seq = gray_code(n)
        assert sorted(seq) == list(range(1 << n))
        assert all(one_bit_apart(a, b) for a, b in zip(seq, seq[1:]))
    text = render_karnaugh(table_from_bits(k, 1))
    header = text.splitlines()[0].split("|")[1].split()
    assert all(one_bit_apart(int(a, 2), int(b, 2)) for a, b in zip(header, header[1:]))


def test_gray_order_two_bits():
    assert gray_code(2) == [0b00, 0b01, 0b11, 0b10]


def test_case_table_grid(case_table):
    cells = grid(case_table)
    order = gray_code(2)
    ones = {(order[c] << 2) | order[r] for r, row in enumerate(cells) for c, v in enumerate(row) if v}
    assert ones == set(CASE_SUCCESSES)
    # column ES=10, row TJ=10 holds combination 1010
    assert cells[order.index(0b10)][order.index(0b10)] == 1


def test_case_table_text(case_table):
    text = render_karnaugh(case_table)
    lines = text.splitlines()
    assert lines[0].startswith("TJ\\ES")
    assert "ET: 1010 1011 1110 1111" in text
    assert "ESJ: 1101 1111" in text


def test_single_success_table():
    table = TruthTable.from_successes(AttributeSchema.from_names("XY"), [0])
    assert grid(table) == [[1, 0], [0, 0]]


@pytest.mark.parametrize("k", [1, 5])
def test_unsupported(k):
    with pytest.raises(UnsupportedRendering):
        render_karnaugh(table_from_bits(k, 1))
