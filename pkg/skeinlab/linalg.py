"""Dense exact matrices over the scalar field.

Matrices are sympy ``DomainMatrix`` objects over ``ring.DOMAIN``; rank,
nullspace and inverse come from sympy.  Helpers here only build, reshape and
compare them.  All constructors go through :func:`matrix` so every instance
uses the dense list representation.
"""

from __future__ import annotations

from typing import Sequence

from sympy.polys.matrices import DomainMatrix

from .errors import DimensionError
from .ring import DOMAIN, ONE, ZERO, Scalar, scalar

Matrix = DomainMatrix


def matrix(rows: Sequence[Sequence[object]], ncols: int | None = None) -> DomainMatrix:
    converted = [[scalar(v) for v in row] for row in rows]
    if ncols is None:
        ncols = len(converted[0]) if converted else 0
    for row in converted:
        if len(row) != ncols:
            raise DimensionError(f"ragged matrix: expected {ncols} columns, got {len(row)}")
    return DomainMatrix(converted, (len(converted), ncols), DOMAIN)


def zeros(nrows: int, ncols: int) -> DomainMatrix:
    return matrix([[ZERO] * ncols for _ in range(nrows)], ncols)


def identity(n: int) -> DomainMatrix:
    return matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)


def diagonal(values: Sequence[Scalar]) -> DomainMatrix:
    n = len(values)
    return matrix([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)], n)


def rows(a: DomainMatrix) -> list[list[Scalar]]:
    return [list(r) for r in a.to_list()]


def shape(a: DomainMatrix) -> tuple[int, int]:
    return a.shape


def scale(a: DomainMatrix, c: Scalar) -> DomainMatrix:
    nrows, ncols = a.shape
    return matrix([[c * v for v in r] for r in rows(a)], ncols)


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    ra, rb = rows(a), rows(b)
    (n1, m1), (n2, m2) = a.shape, b.shape
    out = [[ZERO] * (m1 * m2) for _ in range(n1 * n2)]
    for i in range(n1):
        for j in range(m1):
            x = ra[i][j]
            if not x:
                continue
            for k in range(n2):
                for l in range(m2):
                    y = rb[k][l]
                    if y:
                        out[i * n2 + k][j * m2 + l] = x * y
    return matrix(out, m1 * m2)


def kron_all(factors: Sequence[DomainMatrix]) -> DomainMatrix:
    out = identity(1)
    for f in factors:
        out = kron(out, f)
    return out


def submatrix(a: DomainMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> DomainMatrix:
    r = rows(a)
    return matrix([[r[i][j] for j in col_idx] for i in row_idx], len(col_idx))


def column(a: DomainMatrix, j: int) -> list[Scalar]:
    return [r[j] for r in rows(a)]


def from_columns(columns: Sequence[Sequence[Scalar]], nrows: int) -> DomainMatrix:
    return matrix([[col[i] for col in columns] for i in range(nrows)], len(columns))


def apply(a: DomainMatrix, v: Sequence[Scalar]) -> list[Scalar]:
    if a.shape[1] != len(v):
        raise DimensionError(f"vector of length {len(v)} for a {a.shape} matrix")
    return [sum((x * y for x, y in zip(r, v) if x and y), ZERO) for r in rows(a)]


def equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    return a.shape == b.shape and rows(a) == rows(b)


def is_zero(a: DomainMatrix) -> bool:
    return all(not v for r in rows(a) for v in r)


def rank(a: DomainMatrix) -> int:
    if 0 in a.shape:
        return 0
    return int(a.rank())


def nullspace(a: DomainMatrix) -> list[list[Scalar]]:
    """Basis of {x : a x = 0}, one list per basis vector."""
    nrows, ncols = a.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    return [list(r) for r in a.nullspace().to_list() if any(r)]


def inverse(a: DomainMatrix) -> DomainMatrix:
    n, m = a.shape
    if n != m:
        raise DimensionError(f"cannot invert a {n}x{m} matrix")
    if n == 0:
        return a
    return a.inv()
