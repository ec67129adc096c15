"""Small exact integer linear algebra helpers.

Everything here works on plain Python ints and Fractions; matrices are
lists of row tuples.  Sizes in this package stay in the single digits, so
the classic elimination algorithms are more than fast enough and keep
every result provably exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    """Nonzero integer vector whose coordinates have gcd 1."""
    return vector_gcd(v) == 1


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def integer_diagonalize(
    a: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Diagonalize an integer matrix by unimodular row and column moves.

    Returns (d, u, v) with ``u @ a @ v == d`` diagonal and u, v unimodular.
    This is Smith reduction without the final divisor-chain normalization,
    which no caller here needs: kernels and saturations only require the
    unimodular transforms.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(map(int, row)) for row in a]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        d[dst] = [x + factor * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, factor):
        for row in d:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    k = 0
    while k < rows and k < cols:
        pivot = None
        for i in range(k, rows):
            for j in range(k, cols):
                if d[i][j] and (
                    pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])
                ):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, rows):
                if d[i][k]:
                    add_row(k, i, -(d[i][k] // d[k][k]))
                    if d[i][k]:
                        # Remainder became the smaller pivot candidate.
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, cols):
                if d[k][j]:
                    add_col(k, j, -(d[k][j] // d[k][k]))
                    if d[k][j]:
                        swap_cols(k, j)
                        dirty = True
        if d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
        k += 1
    return d, u, v


def kernel_basis(rows: Sequence[Sequence[int]], dim: int) -> list[IntVector]:
    """Basis of the saturated lattice {x in Z^dim : row . x == 0 for all rows}.

    The rows may be empty, in which case the standard basis is returned.
    The result is a genuine lattice basis: the kernel of an integer matrix
    is automatically saturated in Z^dim.
    """
    if not rows:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    if any(len(r) != dim for r in rows):
        raise ValueError("row length does not match the ambient dimension")
    d, _, v = integer_diagonalize(rows)
    rank = sum(1 for i in range(min(len(rows), dim)) if d[i][i])
    return [tuple(v[i][j] for i in range(dim)) for j in range(rank, dim)]


def express_in_basis(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> IntVector:
    """Integer coordinates of ``vec`` in the given independent row basis.

    Raises ValueError when ``vec`` is outside the rational span or the
    coordinates are not integral.
    """
    if not basis:
        if any(vec):
            raise ValueError("nonzero vector in the span of an empty basis")
        return ()
    dim = len(basis[0])
    # Solve x . basis == vec by elimination on the transposed system.
    mat = [[Fraction(basis[i][j]) for i in range(len(basis))] for j in range(dim)]
    rhs = [Fraction(x) for x in vec]
    coords: list[Fraction | None] = [None] * len(basis)
    row = 0
    for col in range(len(basis)):
        pivot = next((r for r in range(row, dim) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        rhs[row], rhs[pivot] = rhs[pivot], rhs[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        rhs[row] *= inv
        for r in range(dim):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[row])]
                rhs[r] -= factor * rhs[row]
        coords[col] = rhs[row]
        row += 1
    for r in range(row, dim):
        if rhs[r]:
            raise ValueError("vector lies outside the span of the basis")
    out = []
    for c in coords:
        if c is None:
            raise ValueError("basis rows are not linearly independent")
        if c.denominator != 1:
            raise ValueError("vector has non-integral coordinates in the basis")
        out.append(int(c))
    return tuple(out)
