import pytest

from mageto.rule30 import FIGURE_ROW, rule30_column_stream, rule30_evolve, rule30_rows, to_str

# rule 30: new bit for neighbourhoods 111 110 101 100 011 010 001 000
TRUTH = {(1, 1, 1): 0, (1, 1, 0): 0, (1, 0, 1): 0, (1, 0, 0): 1,
         (0, 1, 1): 1, (0, 1, 0): 1, (0, 0, 1): 1, (0, 0, 0): 0}


def test_single_bit_spreads():
    row = rule30_evolve(FIGURE_ROW)
    assert [i + 1 for i, b in enumerate(row) if b] == [15, 16, 17]


def test_quiescent():
    assert rule30_evolve([0] * 31) == [0] * 31


def test_matches_truth_table_with_wrap():
    row = [1, 0, 0, 1, 1, 0, 1]
    n = len(row)
    expected = [TRUTH[row[i - 1], row[i], row[(i + 1) % n]] for i in range(n)]
    assert rule30_evolve(row) == expected


def test_row_16():
    assert to_str(rule30_rows(FIGURE_ROW, 16)[-1]) == "1101111001101001011111001111111"


def test_column_16():
    col = rule30_column_stream(FIGURE_ROW, 16, 16)
    assert to_str(col) == "1101110011000101"
    assert to_str(rule30_column_stream(FIGURE_ROW, 16, 1)) == "1"
    assert to_str(col[::2]) == "10101000"


def test_bad_inputs():
    with pytest.raises(ValueError):
        rule30_evolve([1, 0])
    with pytest.raises(IndexError):
        rule30_column_stream(FIGURE_ROW, 0, 4)
    with pytest.raises(IndexError):
        rule30_column_stream(FIGURE_ROW, 32, 4)
