"""Exact integer matrix algebra: Smith and Hermite normal forms, kernels, spans.

Matrices are plain nested sequences of Python ints (row-major).  Everything is
exact; nothing here ever touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]

INFINITE = math.inf


class DimensionError(ValueError):
    """Raised for empty matrices or inconsistent vector lengths."""


def as_matrix(A: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [list(map(int, r)) for r in A]
    if not rows or not rows[0]:
        raise DimensionError("matrix must be nonempty")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionError("ragged matrix")
    return rows


def freeze(A) -> Matrix:
    return tuple(tuple(r) for r in A)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B) -> Matrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def transpose(A) -> Matrix:
    return tuple(zip(*A))


def det(A) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    M = as_matrix(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    D: Matrix
    U: Matrix
    V: Matrix
    of: tuple[int, int]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(self.of)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


def _smallest_nonzero(D, t):
    best = None
    for i in range(t, len(D)):
        row = D[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return best[1:]
    return None if best is None else best[1:]


def snf(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivots are chosen smallest-absolute-value first, so the output is a
    deterministic function of ``A``.
    """
    D = as_matrix(A)
    m, n = len(D), len(D[0])
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            piv = _smallest_nonzero(D, t)
            if piv is None:
                return SmithDecomposition(freeze(D), freeze(U), freeze(V), (m, n))
            i, j = piv
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    if q:
                        Dt, Di, Ut, Ui = D[t], D[i], U[t], U[i]
                        for k in range(t, n):
                            Di[k] -= q * Dt[k]
                        for k in range(m):
                            Ui[k] -= q * Ut[k]
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    if q:
                        for M in (D, V):
                            for row in M:
                                row[j] -= q * row[t]
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is not None:
                for k in range(n):
                    D[t][k] += D[bad][k]
                for k in range(m):
                    U[t][k] += U[bad][k]
                continue
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(freeze(D), freeze(U), freeze(V), (m, n))


def hnf(A: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of the lattice spanned by the rows of ``A``.

    Zero rows are dropped; pivots are positive and the entries above each pivot
    are reduced into ``[0, pivot)``.  The result is the canonical basis of the
    row lattice.
    """
    M = as_matrix(A)
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if M[i][c]]
            if not rows:
                break
            k = min(rows, key=lambda i: abs(M[i][c]))
            M[r], M[k] = M[k], M[r]
            p = M[r][c]
            done = True
            for i in range(r + 1, m):
                if M[i][c]:
                    q = M[i][c] // p
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if M[r][c]:
            if M[r][c] < 0:
                M[r] = [-a for a in M[r]]
            p = M[r][c]
            for i in range(r):
                q = M[i][c] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[r])]
            r += 1
    return freeze(row for row in M[:r])


def kernel_basis(A: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Saturated basis of ``{v in Z^n : A v = 0}``, in Hermite normal form."""
    dec = snf(A)
    n = dec.of[1]
    r = dec.rank
    cols = [tuple(dec.V[i][j] for i in range(n)) for j in range(r, n)]
    if not cols:
        return []
    return list(hnf(cols))


def _vector_matrix(vectors, ambient_rank):
    vectors = [tuple(map(int, v)) for v in vectors]
    if any(len(v) != ambient_rank for v in vectors):
        raise DimensionError(f"all vectors must have length {ambient_rank}")
    return vectors


def generates_full_lattice(vectors, ambient_rank: int) -> bool:
    """True iff the vectors generate all of ``Z^ambient_rank``."""
    vectors = _vector_matrix(vectors, ambient_rank)
    if ambient_rank == 0:
        return True
    if not vectors:
        return False
    dec = snf(vectors)
    return dec.rank == ambient_rank and all(d == 1 for d in dec.invariant_factors)


def cokernel_order(vectors, ambient_rank: int):
    """Index of the span in ``Z^ambient_rank``; ``INFINITE`` if not full rank."""
    vectors = _vector_matrix(vectors, ambient_rank)
    if ambient_rank == 0:
        return 1
    if not vectors:
        return INFINITE
    dec = snf(vectors)
    if dec.rank < ambient_rank:
        return INFINITE
    return math.prod(dec.invariant_factors)


def solve_left(B, v) -> tuple[Fraction, ...]:
    """Rational ``x`` with ``x @ B == v`` for square invertible ``B``."""
    n = len(B)
    # augmented system on B^T
    M = [[Fraction(B[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise DimensionError("singular basis")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [a * inv for a in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


def integral_coordinates(B, v) -> tuple[int, ...] | None:
    """Integer coordinates of ``v`` in the row basis ``B``, or None."""
    x = solve_left(B, v)
    if any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


def inverse_rational(A) -> tuple[tuple[Fraction, ...], ...]:
    n = len(A)
    cols = [solve_left(transpose(A), [int(i == j) for i in range(n)]) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
