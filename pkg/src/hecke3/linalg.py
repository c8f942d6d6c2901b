"""Exact matrix helpers over CycloNum (and duck-typed over LaurentExpr).

Matrices are lists of row lists.  The generic helpers only use +, -, * on
entries, so they work for any ring element here; kernel/rref require exact
division and are CycloNum-only.
"""

from __future__ import annotations

from .cyclo import CycloNum


def mat_mul(x, y):
    n, k, m = len(x), len(y), len(y[0])
    out = []
    for i in range(n):
        row = []
        xi = x[i]
        for j in range(m):
            acc = xi[0] * y[0][j]
            for l in range(1, k):
                acc = acc + xi[l] * y[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_sub(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def mat_add(x, y):
    return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def scalar_mat(n: int, value, zero):
    return [[value if i == j else zero for j in range(n)] for i in range(n)]


def mat_equal(x, y) -> bool:
    return all(a == b for rx, ry in zip(x, y) for a, b in zip(rx, ry))


def is_zero_mat(x) -> bool:
    return all(e.is_zero() for row in x for e in row)


def trace(x):
    acc = x[0][0]
    for i in range(1, len(x)):
        acc = acc + x[i][i]
    return acc


def is_scalar_mat(x) -> bool:
    n = len(x)
    d = x[0][0]
    for i in range(n):
        for j in range(n):
            if i == j:
                if not (x[i][j] - d).is_zero():
                    return False
            elif not x[i][j].is_zero():
                return False
    return True


def mat_pow(x, k: int):
    n = len(x)
    out = scalar_mat(n, _one_like(x[0][0]), _zero_like(x[0][0]))
    base = x
    while k:
        if k & 1:
            out = mat_mul(out, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return out


def _zero_like(e):
    if isinstance(e, CycloNum):
        return CycloNum.zero()
    return e - e


def _one_like(e):
    if isinstance(e, CycloNum):
        return CycloNum.one()
    raise TypeError("mat_pow over non-CycloNum needs an explicit identity")


# -- exact Gaussian elimination over the cyclotomic field ---------------------


def rref(rows: list[list[CycloNum]]) -> tuple[list[list[CycloNum]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].invert()
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: list[list[CycloNum]]) -> int:
    return len(rref(rows)[0])


def kernel_basis(mat: list[list[CycloNum]]) -> list[list[CycloNum]]:
    """Basis of the right kernel of mat."""
    if not mat:
        return []
    ncols = len(mat[0])
    reduced, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    zero, one = CycloNum.zero(), CycloNum.one()
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for r, c in enumerate(pivots):
            vec[c] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve_exact(mat: list[list[CycloNum]], rhs: list[CycloNum]) -> list[CycloNum] | None:
    """One solution x of mat @ x = rhs, or None if inconsistent.

    When the system is underdetermined an arbitrary solution is returned;
    callers that need uniqueness must check the rank themselves.
    """
    aug = [row + [b] for row, b in zip(mat, rhs)]
    reduced, pivots = rref(aug)
    ncols = len(mat[0])
    if ncols in pivots:
        return None
    zero = CycloNum.zero()
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][-1]
    return x


class RowSpan:
    """Incrementally maintained row space over the cyclotomic field."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[list[CycloNum]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def add(self, vec: list[CycloNum]) -> bool:
        """Reduce vec against the span; add if independent.  True if added."""
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if not vec[p].is_zero():
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, row)]
        for c in range(self.ncols):
            if not vec[c].is_zero():
                inv = vec[c].invert()
                vec = [e * inv for e in vec]
                self.rows.append(vec)
                self.pivots.append(c)
                return True
        return False
