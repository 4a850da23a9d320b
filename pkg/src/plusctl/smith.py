"""Smith normal form over the integers, with unimodular transforms.

Matrices are plain lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass

IntMatrix = list[list[int]]


@dataclass
class SmithForm:
    diagonal: list[int]
    left: IntMatrix | None
    right: IntMatrix | None

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: int | None = None) -> IntMatrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum(x * bt[j][k] for k, x in nz) for j in range(cols)])
    return out


def shape(m: IntMatrix, cols: int | None = None) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else (cols or 0))


def smith_normal_form(matrix: IntMatrix, transforms: bool = True, cols: int | None = None) -> SmithForm:
    """Return ``d`` with ``L * M * R = diag(d)``, ``d_1 | d_2 | ...``, all ``d_i >= 0``.

    Pivot rule: nonzero entry of least absolute value, ties broken by lowest
    row then lowest column.  ``cols`` gives the width of a matrix with no rows.
    ``diagonal`` has length ``min(rows, cols)``.
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = len(a[0]) if a else (cols or 0)
    left = identity(m) if transforms else None
    right = identity(n) if transforms else None

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            if left is not None:
                left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            if right is not None:
                for row in right:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q, start):
        # row_dst += q * row_src
        rs, rd = a[src], a[dst]
        for k in range(start, n):
            if rs[k]:
                rd[k] += q * rs[k]
        if left is not None:
            ls, ld = left[src], left[dst]
            for k in range(m):
                if ls[k]:
                    ld[k] += q * ls[k]

    def add_col(dst, src, q, start):
        for k in range(start, m):
            row = a[k]
            if row[src]:
                row[dst] += q * row[src]
        if right is not None:
            for row in right:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    add_row(i, t, -(v // p), t)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    add_col(j, t, -(v // p), t)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot is left in row/column t
                # ties go to the lower row, so row t is scanned first
                best = None
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                for i in range(t + 1, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            bad = None
            if abs(p) != 1:
                for i in range(t + 1, m):
                    row = a[i]
                    for j in range(t + 1, n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            add_row(t, bad, 1, t)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if left is not None:
                left[t] = [-x for x in left[t]]
        t += 1
    diag = [a[i][i] for i in range(limit)]
    return SmithForm(diag, left, right)


def invariant_factors(matrix: IntMatrix, cols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    return [d for d in smith_normal_form(matrix, transforms=False, cols=cols).diagonal if d]


def rank(matrix: IntMatrix) -> int:
    return len(invariant_factors(matrix))


class NoIntegerSolution(ValueError):
    pass


def solve_many(matrix: IntMatrix, rhs: list[list[int]], cols: int | None = None) -> list[list[int]]:
    """Particular integer solutions ``x`` of ``M x = b`` for each vector ``b``.

    Raises :class:`NoIntegerSolution` naming the first unsolvable index.
    """
    m, n = shape(matrix, cols)
    snf = smith_normal_form(matrix, transforms=True, cols=n)
    L, R, d = snf.left, snf.right, snf.diagonal
    out = []
    for idx, b in enumerate(rhs):
        if len(b) != m:
            raise ValueError("right-hand side has the wrong length")
        lb = [sum(x * y for x, y in zip(row, b) if x) for row in L]
        y = [0] * n
        for i in range(m):
            di = d[i] if i < len(d) else 0
            if di == 0:
                if lb[i]:
                    raise NoIntegerSolution(idx)
            else:
                if lb[i] % di:
                    raise NoIntegerSolution(idx)
                y[i] = lb[i] // di
        out.append([sum(R[k][i] * y[i] for i in range(n) if y[i]) for k in range(n)])
    return out


def solve(matrix: IntMatrix, b: list[int], cols: int | None = None) -> list[int]:
    return solve_many(matrix, [b], cols)[0]
