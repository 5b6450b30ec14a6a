"""Elementary rule-30 automaton on a wrapped row of bits.

Used as a known-answer scaffold: the single-seed-bit row of width 31 has a
published 16th row and centre-column stream.
"""

RULE = 30
FIGURE_ROW = "0000000000000001000000000000000"


def _bits(row):
    if isinstance(row, str):
        return [int(ch) for ch in row]
    return [int(b) for b in row]


def rule30_evolve(row):
    """Next row; the edges wrap around."""
    bits = _bits(row)
    n = len(bits)
    if n < 3:
        raise ValueError("row needs at least 3 cells")
    return [(RULE >> (bits[i - 1] << 2 | bits[i] << 1 | bits[(i + 1) % n])) & 1
            for i in range(n)]


def rule30_rows(row, count):
    """`count` rows, starting with `row` itself."""
    rows = [_bits(row)]
    while len(rows) < count:
        rows.append(rule30_evolve(rows[-1]))
    return rows


def rule30_column_stream(row, col, n):
    """Bit of column `col` (1-indexed) over rows 1..n, the initial row included."""
    bits = _bits(row)
    if not 1 <= col <= len(bits):
        raise IndexError(f"column {col} outside 1..{len(bits)}")
    return [r[col - 1] for r in rule30_rows(bits, n)]


def to_str(bits):
    return "".join(str(b) for b in bits)
