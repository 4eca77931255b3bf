"""Exact integer matrix algebra: Smith normal form, kernels, signatures.

Everything here runs on Python ints (arbitrary precision) or Fractions.
No floating point: these matrices certify homology computations, so an
overflow or rounding bug would silently poison every downstream number.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple


class IntegerMatrix:
    """Immutable integer matrix."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        else:
            width = cols
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegerMatrix)
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.entries, self.cols))

    def __repr__(self) -> str:
        return f"IntegerMatrix({list(map(list, self.entries))!r})"

    def __getitem__(self, idx: Tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        ot = other.entries
        out = []
        for r in self.entries:
            out.append(
                [sum(r[k] * ot[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        return IntegerMatrix(out, cols=other.cols)

    def mat_vec(self, v: Sequence[int]) -> Tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(r[j] * v[j] for j in range(self.cols)) for r in self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def block_diag(*blocks: IntegerMatrix) -> IntegerMatrix:
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    out = [[0] * total_c for _ in range(total_r)]
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[ro + i][co + j] = b.entries[i][j]
        ro += b.rows
        co += b.cols
    return IntegerMatrix(out, cols=total_c)


def hyperbolic_form(n_blocks: int) -> IntegerMatrix:
    """Direct sum of n copies of the rank-2 form [[0,1],[1,0]]."""
    h = IntegerMatrix([[0, 1], [1, 0]])
    if n_blocks == 0:
        return IntegerMatrix([], cols=0)
    return block_diag(*([h] * n_blocks))


def det(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: IntegerMatrix) -> bool:
    return m.rows == m.cols and det(m) in (1, -1)


# -- Smith normal form ------------------------------------------------------


def _pivot(a: List[List[int]], t: int, rows: int, cols: int) -> Tuple[int, int] | None:
    """Smallest nonzero |entry| in the trailing block; ties favor earlier rows,
    then earlier columns."""
    best = None
    for i in range(t, rows):
        for j in range(t, cols):
            v = a[i][j]
            if v != 0:
                key = (abs(v), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
    if best is None:
        return None
    return best[1], best[2]


def smith_normal_form(m: IntegerMatrix) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return (D, U, V) with U*m*V = D diagonal, d_i >= 0 and d_i | d_{i+1}.

    U and V are unimodular.  Pivoting picks the entry of least nonzero
    magnitude, and clearing works on rows before columns, so the reduction is
    deterministic for a fixed input.
    """
    rows, cols = m.rows, m.cols
    a = [list(r) for r in m.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i: int, k: int, q: int) -> None:  # row_i -= q * row_k
        ai, ak = a[i], a[k]
        for j in range(cols):
            ai[j] -= q * ak[j]
        ui, uk = u[i], u[k]
        for j in range(rows):
            ui[j] -= q * uk[j]

    def col_op(j: int, k: int, q: int) -> None:  # col_j -= q * col_k
        for r in a:
            r[j] -= q * r[k]
        for r in v:
            r[j] -= q * r[k]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        p = _pivot(a, t, rows, cols)
        if p is None:
            break
        pi, pj = p
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            # rows first: clear the pivot column
            moved = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:
                        # remainder is strictly smaller: promote it
                        swap_rows(i, t)
                        moved = True
            if moved:
                continue
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(j, t)
                        moved = True
            if moved:
                continue
            # pivot must divide the rest of the block
            offender = None
            d = a[t][t]
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % d != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # fold the offending row into the pivot row
        if a[t][t] < 0:
            for j in range(cols):
                a[t][j] = -a[t][j]
            for j in range(rows):
                u[t][j] = -u[t][j]
        t += 1

    return IntegerMatrix(a, cols=cols), IntegerMatrix(u, cols=rows), IntegerMatrix(v, cols=cols)


def rank(m: IntegerMatrix) -> int:
    d, _, _ = smith_normal_form(m)
    return sum(1 for x in d.diagonal() if x != 0)


def cokernel_invariants(m: IntegerMatrix) -> Tuple[int, Tuple[int, ...]]:
    """Invariants of Z^rows / column-span... no: Z^cols is the ambient here.

    Interprets m as a relation matrix whose rows span a sublattice of Z^cols
    and returns (free_rank, torsion divisors > 1) of the quotient.
    """
    d, _, _ = smith_normal_form(m)
    diag = [x for x in d.diagonal() if x != 0]
    free = m.cols - len(diag)
    torsion = tuple(x for x in diag if x > 1)
    return free, torsion


def right_kernel_basis(m: IntegerMatrix) -> List[Tuple[int, ...]]:
    """Basis of the saturated lattice {x in Z^cols : m x = 0}."""
    d, _, v = smith_normal_form(m)
    nz = sum(1 for x in d.diagonal() if x != 0)
    return [v.column(j) for j in range(nz, m.cols)]


# -- rational elimination ---------------------------------------------------


def solve_rational(a_rows: Sequence[Sequence[int]], b: Sequence[int]) -> List[Fraction] | None:
    """One exact solution x of A x = b over Q, or None if inconsistent.

    Free variables are set to zero; A need not be square.
    """
    rows = [[Fraction(x) for x in r] + [Fraction(bv)] for r, bv in zip(a_rows, b)]
    ncols = len(a_rows[0]) if a_rows else 0
    pivots: List[Tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for pr, pc in pivots:
        x[pc] = rows[pr][ncols]
    return x


def rational_rank(a_rows: Sequence[Sequence[int]]) -> int:
    rows = [[Fraction(x) for x in r] for r in a_rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def signature_symmetric(q: IntegerMatrix) -> int:
    """Signature (#positive - #negative eigenvalues) of a symmetric matrix,
    by exact congruence diagonalization over Q."""
    if not q.is_symmetric():
        raise ValueError("signature of a non-symmetric matrix")
    n = q.rows
    a = [[Fraction(x) for x in row] for row in q.entries]
    sig = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
            else:
                off = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if off is None:
                    continue  # zero row: null direction
                # congruence: add row/col `off` into k; diagonal becomes 2*a[k][off]
                for j in range(n):
                    a[k][j] += a[off][j]
                for row in a:
                    row[k] += row[off]
        pk = a[k][k]
        sig += 1 if pk > 0 else -1
        # One row pass is the whole symmetric update: subtracting
        # (a[i][k]/pk) * row_k from row_i already leaves the Schur
        # complement in the trailing block.  Then mirror the zeros into
        # row k so the invariant "leading block diagonal" holds.
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / pk
                for j in range(n):
                    a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
    return sig


def is_even_form(q: IntegerMatrix) -> bool:
    """A symmetric integral form is even iff every diagonal entry is even."""
    if not q.is_symmetric():
        raise ValueError("evenness of a non-symmetric matrix")
    return all(x % 2 == 0 for x in q.diagonal())
