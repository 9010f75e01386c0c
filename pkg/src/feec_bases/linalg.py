"""Exact rank computations over the rationals.

Two fraction-free eliminations live here.  ``rank_exact`` runs Bareiss
elimination on a dense ``RationalMatrix``.  ``Echelon`` keeps a sparse
integer echelon form that rows can be streamed into, which is what the
basis verification uses on the larger coefficient matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, Mapping, Sequence


class RationalMatrix:
    """Dense matrix of Fractions."""

    def __init__(self, rows: Iterable[Sequence], cols: int | None = None):
        data = [[Fraction(x) for x in row] for row in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self.entries = data

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.rows and other.rows and self.cols != other.cols:
            raise ValueError("column counts differ")
        return RationalMatrix(self.entries + other.entries, self.cols or other.cols)

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [int(x * den) for x in row]


def rank_exact(M: RationalMatrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination.

    Rows are first scaled to integers; the pivot is the first nonzero entry
    in the current column.  Every division below is exact.
    """
    A = [_integer_row(row) for row in M.entries]
    rows, cols = M.rows, M.cols
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        pivot_row = A[r]
        for i in range(r + 1, rows):
            row = A[i]
            a = row[c]
            for j in range(c + 1, cols):
                row[j] = (piv * row[j] - a * pivot_row[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r


SparseRow = Dict[Hashable, int]


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def integer_row(row: Mapping[Hashable, Fraction | int]) -> SparseRow:
    """Clear denominators and drop zeros; the result spans the same line."""
    vals = [Fraction(v) for v in row.values()]
    den = lcm(*(v.denominator for v in vals)) if vals else 1
    return _primitive({c: int(Fraction(v) * den) for c, v in row.items() if v})


class Echelon:
    """Incremental sparse echelon form over the integers.

    Column keys must be mutually comparable.  Stored rows have pairwise
    distinct leading (smallest) columns.  Reduction always clears the
    smallest column that carries a pivot, so it terminates.
    """

    def __init__(self):
        self.pivots: Dict[Hashable, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "Echelon":
        e = Echelon()
        e.pivots = dict(self.pivots)
        return e

    def reduce(self, row: Mapping[Hashable, Fraction | int]) -> SparseRow:
        """Residual of ``row`` after elimination; empty iff the row lies in the span."""
        cur = integer_row(row)
        pivots = self.pivots
        while cur:
            hits = [c for c in cur if c in pivots]
            if not hits:
                break
            lead = min(hits)
            piv = pivots[lead]
            a, b = piv[lead], cur[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: v * a for c, v in cur.items()} if a != 1 else dict(cur)
            for c, v in piv.items():
                t = new.get(c, 0) - b * v
                if t:
                    new[c] = t
                else:
                    new.pop(c, None)
            cur = _primitive(new)
        return cur

    def insert(self, row: Mapping[Hashable, Fraction | int]) -> bool:
        residual = self.reduce(row)
        if not residual:
            return False
        self.pivots[min(residual)] = residual
        return True


def sparse_rank(rows: Iterable[Mapping[Hashable, Fraction | int]]) -> int:
    e = Echelon()
    for row in rows:
        e.insert(row)
    return e.rank
