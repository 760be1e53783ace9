"""Exact integer determinants and adjugates.

Entries of the matrices built for matching extraction are powers of two
with exponents in the tens of thousands, so all arithmetic is done on
arbitrary-precision integers (``gmpy2.mpz`` when available).
"""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _big = int

Matrix = Sequence[Sequence[int]]


def _square(A: Matrix) -> list[list]:
    m = len(A)
    rows = [[_big(x) for x in row] for row in A]
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")
    return rows


def bareiss_det(A: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    M = _square(A)
    m = len(M)
    if m == 0:
        return 1
    sign, prev = 1, _big(1)
    for k in range(m - 1):
        if M[k][k] == 0:
            for i in range(k + 1, m):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        p = M[k][k]
        rk = M[k]
        for i in range(k + 1, m):
            ri = M[i]
            f = ri[k]
            for j in range(k + 1, m):
                ri[j] = (p * ri[j] - f * rk[j]) // prev
        prev = p
    return int(sign * M[m - 1][m - 1])


def cofactor_det(A: Matrix) -> int:
    """Determinant by the Leibniz expansion; only sensible for tiny matrices."""
    m = len(A)
    total = 0
    for perm in permutations(range(m)):
        inversions = sum(1 for i in range(m) for j in range(i + 1, m) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= A[i][j]
            if not prod:
                break
        total += -prod if inversions % 2 else prod
    return total


def det_and_adjugate(A: Matrix) -> tuple[int, list[list[int]] | None]:
    """Return ``(det(A), adj(A))``, or ``(0, None)`` for a singular matrix.

    Fraction-free Gauss-Jordan on ``[A | I]``: every row operation keeps
    the entries integral, and the right half ends as ``d * A^-1`` where
    ``d`` is the final common pivot.  ``adj(A)[j][i]`` is
    ``(-1)**(i+j)`` times the minor with row ``i`` and column ``j``
    deleted.
    """
    M = _square(A)
    m = len(M)
    if m == 0:
        return 1, []
    for i in range(m):
        M[i].extend(_big(1) if j == i else _big(0) for j in range(m))
    width = 2 * m
    sign, prev = 1, _big(1)
    for k in range(m):
        if M[k][k] == 0:
            for i in range(k + 1, m):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0, None
        p = M[k][k]
        rk = M[k]
        for i in range(m):
            if i == k:
                continue
            ri = M[i]
            f = ri[k]
            for j in range(width):
                if j != k:
                    ri[j] = (p * ri[j] - f * rk[j]) // prev
            ri[k] = _big(0)
        prev = p
    d = M[0][0]
    # Row swaps change d by the permutation's sign; d * A^-1 then equals
    # sign * det(A) * A^-1 = sign * adj(A).
    det = int(sign * d)
    adj = [[int(sign * x) for x in M[i][m:]] for i in range(m)]
    return det, adj


def two_adic_valuation(x: int) -> int:
    """Exponent of the largest power of two dividing ``x`` (``x != 0``)."""
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    x = abs(x)
    return (x & -x).bit_length() - 1
