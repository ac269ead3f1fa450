"""Exact integer and rational linear algebra.

Smith normal form with unimodular transforms, exact determinants and
affine rational solving. Everything runs on Python ints and
``fractions.Fraction``; no float ever enters a computation. Matrices in
this domain are small (a special fiber has a handful of components), so
the algorithms favour exactness and clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class IntMatrix:
    """Immutable integer matrix with arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        data = tuple(tuple(row) for row in entries)
        if not data or not data[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(data[0])
        for row in data:
            if len(row) != width:
                raise ValueError("matrix rows have inconsistent lengths")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError(f"matrix entries must be int, got {type(x).__name__}")
        self.rows = len(data)
        self.cols = width
        self.entries = data

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(zip(*self.entries))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("matrix shapes do not compose")
        cols = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def apply(self, vector):
        """Matrix-vector product; works for int and Fraction vectors."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_lists()!r})"


@dataclass(frozen=True)
class SnfResult:
    """Unimodular U, V and diagonal D with U @ M @ V == D."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))


def _min_nonzero(a, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Smith normal form of an arbitrary integer matrix.

    Returns ``SnfResult(U, D, V)`` with ``U @ M @ V == D`` exactly,
    ``|det U| == |det V| == 1``, the diagonal of ``D`` nonnegative and
    each entry dividing the next. Reduction pivots on the entry of
    smallest absolute value, which keeps intermediate growth tame.
    """
    m, n = M.rows, M.cols
    a = [list(row) for row in M.entries]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_sub(i, t, q):
        # row i -= q * row t
        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
        u[i] = [x - q * y for x, y in zip(u[i], u[t])]

    def col_sub(j, t, q):
        # col j -= q * col t
        for row in a:
            row[j] -= q * row[t]
        for row in v:
            row[j] -= q * row[t]

    t = 0
    limit = min(m, n)
    while t < limit:
        if _min_nonzero(a, t, m, n) is None:
            break
        while True:
            i0, j0 = _min_nonzero(a, t, m, n)
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            d = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_sub(i, t, a[i][t] // d)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // d)
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
        # pivot is alone in its row and column; enforce divisibility of the block
        d = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is None:
            t += 1
        else:
            # merge the offending row into the pivot row and re-reduce
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            u[t] = [x + y for x, y in zip(u[t], u[offender])]

    for i in range(limit):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]

    return SnfResult(IntMatrix(u), IntMatrix(a), IntMatrix(v))


def det(M: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant requires a square matrix")
    n = M.rows
    a = [list(row) for row in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _eliminate(aug: list[list[Fraction]], ncols: int):
    """In-place reduced row echelon form of the first ncols columns.

    Returns the list of pivot columns. Columns beyond ncols ride along
    as right-hand sides.
    """
    m = len(aug)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(M: IntMatrix) -> int:
    """Rank over the rationals."""
    aug = [[Fraction(x) for x in row] for row in M.entries]
    return len(_eliminate(aug, M.cols))


def solve_affine_rational(M: IntMatrix, b):
    """Solve ``M @ q == -b`` exactly over the rationals.

    Returns ``(particular, kernel_basis)`` where ``particular`` is one
    solution and ``kernel_basis`` spans ``{v : M v = 0}``, all entries
    Fractions; returns None when no rational solution exists.
    """
    if len(b) != M.rows:
        raise ValueError("right-hand side length does not match row count")
    n = M.cols
    aug = [
        [Fraction(x) for x in row] + [Fraction(-bi)]
        for row, bi in zip(M.entries, b)
    ]
    pivots = _eliminate(aug, n)
    for i in range(len(pivots), M.rows):
        if aug[i][n] != 0:
            return None
    particular = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        particular[c] = aug[r][n]
    free = [c for c in range(n) if c not in pivots]
    kernel = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -aug[r][f]
        kernel.append(tuple(vec))
    return tuple(particular), kernel


def int_inverse(M: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix whose inverse is integral.

    Intended for the unimodular transforms coming out of
    smith_normal_form; raises ValueError if the inverse has a
    non-integer entry or the matrix is singular.
    """
    if M.rows != M.cols:
        raise ValueError("inverse requires a square matrix")
    n = M.rows
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(M.entries)
    ]
    pivots = _eliminate(aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    inv = [[None] * n for _ in range(n)]
    for r, c in enumerate(pivots):
        for j in range(n):
            val = aug[r][n + j]
            if val.denominator != 1:
                raise ValueError("matrix inverse is not integral")
            inv[c][j] = int(val)
    return IntMatrix(inv)
