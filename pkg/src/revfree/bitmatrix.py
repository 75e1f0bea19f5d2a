"""Dense 0/1 matrices with pattern containment, S-counting and permanents.

The S pattern is the 2x2 all-ones matrix; an occurrence of S in a matrix is
a pair of rows and a pair of columns whose four intersections are all 1
(a K_{2,2} in the bipartite adjacency reading).  Everything here treats
matrices as immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, PreconditionError

PERMANENT_MAX_SIDE = 30


class BinaryMatrix:
    """Immutable 0/1 matrix stored as one integer bitmask per row.

    Bit ``c`` of ``row_mask(r)`` is the entry at row ``r``, column ``c``
    (both 0-based).  Column masks are derived lazily.  JSON I/O uses
    1-based coordinates.
    """

    __slots__ = ("rows", "cols", "_row_bits", "_col_bits")

    def __init__(self, rows: int, cols: int, row_bits):
        if rows < 1 or cols < 1:
            raise PreconditionError("matrix must have at least one row and one column")
        row_bits = tuple(row_bits)
        if len(row_bits) != rows:
            raise PreconditionError(f"expected {rows} row masks, got {len(row_bits)}")
        limit = 1 << cols
        for r, bits in enumerate(row_bits):
            if not 0 <= bits < limit:
                raise PreconditionError(f"row {r} mask out of range for {cols} columns")
        self.rows = rows
        self.cols = cols
        self._row_bits = row_bits
        self._col_bits = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "BinaryMatrix":
        """Build from an iterable of 0/1 row sequences."""
        rows = [list(r) for r in rows]
        if not rows:
            raise PreconditionError("matrix must have at least one row and one column")
        ncols = len(rows[0])
        masks = []
        for r in rows:
            if len(r) != ncols:
                raise PreconditionError("ragged rows")
            mask = 0
            for c, v in enumerate(r):
                if v not in (0, 1):
                    raise PreconditionError(f"entry {v!r} is not 0 or 1")
                mask |= v << c
            masks.append(mask)
        return cls(len(rows), ncols, masks)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols, [0] * rows)

    @classmethod
    def all_ones(cls, rows: int, cols: int) -> "BinaryMatrix":
        full = (1 << cols) - 1
        return cls(rows, cols, [full] * rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_ones(cls, rows: int, cols: int, ones) -> "BinaryMatrix":
        """Build from 1-based (row, col) coordinates of the 1-entries."""
        masks = [0] * rows
        for r, c in ones:
            if not (1 <= r <= rows and 1 <= c <= cols):
                raise PreconditionError(f"coordinate ({r},{c}) outside {rows}x{cols}")
            masks[r - 1] |= 1 << (c - 1)
        return cls(rows, cols, masks)

    # -- accessors ---------------------------------------------------------

    def get(self, r: int, c: int) -> int:
        return (self._row_bits[r] >> c) & 1

    def row_mask(self, r: int) -> int:
        return self._row_bits[r]

    def row_masks(self):
        return self._row_bits

    def col_masks(self):
        if self._col_bits is None:
            cols = [0] * self.cols
            for r, bits in enumerate(self._row_bits):
                while bits:
                    low = bits & -bits
                    cols[low.bit_length() - 1] |= 1 << r
                    bits ^= low
            self._col_bits = tuple(cols)
        return self._col_bits

    def weight(self) -> int:
        return sum(bits.bit_count() for bits in self._row_bits)

    def row_weight(self, r: int) -> int:
        return self._row_bits[r].bit_count()

    def ones(self):
        """All 1-positions as 0-based (row, col) pairs in lexicographic order."""
        out = []
        for r, bits in enumerate(self._row_bits):
            while bits:
                low = bits & -bits
                out.append((r, low.bit_length() - 1))
                bits ^= low
        return out

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.cols, self.rows, self.col_masks())

    # -- JSON --------------------------------------------------------------

    def to_json_dict(self) -> dict:
        """``{"rows":, "cols":, "ones": [[r,c],...]}`` with 1-based, sorted ones."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "ones": [[r + 1, c + 1] for r, c in self.ones()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BinaryMatrix":
        try:
            rows = data["rows"]
            cols = data["cols"]
            ones = data["ones"]
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed matrix document: missing {exc}") from exc
        if not (isinstance(rows, int) and isinstance(cols, int)):
            raise PreconditionError("matrix rows/cols must be integers")
        pairs = []
        try:
            for entry in ones:
                if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
                    raise PreconditionError(f"malformed 1-entry {entry!r}")
                if not (isinstance(entry[0], int) and isinstance(entry[1], int)):
                    raise PreconditionError(f"non-integer 1-entry {entry!r}")
                pairs.append((entry[0], entry[1]))
        except TypeError as exc:
            raise PreconditionError(f"malformed matrix document: {exc}") from exc
        return cls.from_ones(rows, cols, pairs)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._row_bits) == (
            other.rows,
            other.cols,
            other._row_bits,
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._row_bits))

    def __repr__(self):
        return f"BinaryMatrix({self.rows}x{self.cols}, weight={self.weight()})"


S_PATTERN = BinaryMatrix.all_ones(2, 2)


# -- pattern containment ----------------------------------------------------


def contains(haystack: BinaryMatrix, pattern: BinaryMatrix):
    """Search for a submatrix of ``haystack`` dominating ``pattern`` entrywise.

    Returns the lexicographically smallest witness ``(row_indices,
    col_indices)`` (0-based, each strictly increasing) or ``None``.  Cost is
    exponential in the pattern dimensions; intended for tiny patterns.
    """
    if pattern.rows > haystack.rows or pattern.cols > haystack.cols:
        raise PreconditionError(
            f"pattern {pattern.rows}x{pattern.cols} larger than "
            f"matrix {haystack.rows}x{haystack.cols}"
        )
    full = (1 << haystack.cols) - 1
    pat_cols = pattern.col_masks()
    for rowsel in combinations(range(haystack.rows), pattern.rows):
        # allowed[t] = haystack columns usable at pattern column t: the AND of
        # the selected rows where the pattern has a 1 in column t.
        allowed = []
        for t in range(pattern.cols):
            mask = full
            need = pat_cols[t]
            while need:
                low = need & -need
                mask &= haystack.row_mask(rowsel[low.bit_length() - 1])
                need ^= low
            allowed.append(mask)
        colsel = _smallest_increasing_transversal(allowed)
        if colsel is not None:
            return rowsel, colsel
    return None


def _smallest_increasing_transversal(allowed):
    """Lexicographically smallest strictly increasing pick from the masks."""
    choice = []

    def rec(t, lo):
        if t == len(allowed):
            return True
        mask = (allowed[t] >> lo) << lo
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            choice.append(c)
            if rec(t + 1, c + 1):
                return True
            choice.pop()
            mask ^= low
        return False

    return tuple(choice) if rec(0, 0) else None


# -- S-occurrence counting ---------------------------------------------------


@dataclass(frozen=True)
class SCountReport:
    """Exact S statistics of a matrix plus the analytic lower bound.

    ``exact_count`` sums C(r_ij, 2) over unordered column pairs, where r_ij
    is the number of rows covering both columns; ``row_pair_count`` sums
    C(d_i, 2) over rows.  ``analytic_bound`` evaluates
    ``s_lower_bound(cols, rows, density_m)``; ``premise_ok`` records whether
    that bound's hypotheses held (cols >= rows >= 1 and 1 <= m <= sqrt(rows)).
    """

    exact_count: int
    row_pair_count: int
    density_m: float
    analytic_bound: float
    premise_ok: bool


def count_s(matrix: BinaryMatrix) -> SCountReport:
    """Count S occurrences exactly and evaluate the analytic bound."""
    cols = matrix.col_masks()
    exact = 0
    for i, j in combinations(range(matrix.cols), 2):
        r_ij = (cols[i] & cols[j]).bit_count()
        exact += r_ij * (r_ij - 1) // 2
    row_pairs = 0
    for r in range(matrix.rows):
        d = matrix.row_weight(r)
        row_pairs += d * (d - 1) // 2
    n, k = matrix.cols, matrix.rows
    m = matrix.weight() / (n * math.sqrt(k))
    return SCountReport(
        exact_count=exact,
        row_pair_count=row_pairs,
        density_m=m,
        analytic_bound=s_lower_bound(n, k, m),
        premise_ok=s_bound_premise_ok(n, k, m),
    )


def s_lower_bound(n: int, k: int, m: float) -> float:
    """Analytic lower bound n^2 (m^2-1)^2 / 4 - m^3 n sqrt(k) on the S count.

    Valid as a guarantee only when ``s_bound_premise_ok(n, k, m)`` holds and
    the matrix has at least ``m * n * sqrt(k)`` ones; evaluated
    unconditionally so callers can still report the number.
    """
    return n * n * (m * m - 1.0) ** 2 / 4.0 - m ** 3 * n * math.sqrt(k)


def s_bound_premise_ok(n: int, k: int, m: float) -> bool:
    """Whether (n, k, m) satisfies the bound's hypotheses."""
    return n >= k >= 1 and 1.0 <= m <= math.sqrt(k)


# -- permanents ---------------------------------------------------------------


def permanent(matrix: BinaryMatrix) -> int:
    """Exact permanent of a square 0/1 matrix.

    Ryser's inclusion-exclusion over column subsets with Gray-code row-sum
    updates; exact arbitrary-precision arithmetic.  For a 0/1 matrix this is
    the number of permutation matrices dominated entrywise by the input.
    """
    if matrix.rows != matrix.cols:
        raise PreconditionError(
            f"permanent requires a square matrix, got {matrix.rows}x{matrix.cols}"
        )
    n = matrix.rows
    if n > PERMANENT_MAX_SIDE:
        raise CapacityError(f"side {n} exceeds permanent limit {PERMANENT_MAX_SIDE}")
    row_bits = matrix.row_masks()
    rowsums = [0] * n
    total = 0
    size = 0
    n_parity = n & 1
    prev_gray = 0
    for g in range(1, 1 << n):
        gray = g ^ (g >> 1)
        diff = gray ^ prev_gray
        prev_gray = gray
        col = diff.bit_length() - 1
        if gray & diff:
            size += 1
            delta = 1
        else:
            size -= 1
            delta = -1
        for r in range(n):
            if (row_bits[r] >> col) & 1:
                rowsums[r] += delta
        prod = 1
        for v in rowsums:
            if v == 0:
                prod = 0
                break
            prod *= v
        if prod:
            if (size & 1) == n_parity:
                total += prod
            else:
                total -= prod
    return total


def regular_permanent_lower_bound(n: int, d: int) -> float:
    """The value (d/n)^n * n!, a permanent lower bound for d-regular matrices.

    Computed in log space to avoid overflow.
    """
    if not 1 <= d <= n:
        raise PreconditionError(f"need 1 <= d <= n, got d={d}, n={n}")
    return math.exp(n * (math.log(d) - math.log(n)) + math.lgamma(n + 1))
