"""Dense exact linear algebra over a :class:`~symtilt.fields.Field`.

Vectors are lists (or tuples) of field scalars; a "matrix" is a list of
row vectors.  Most routines work with *row spaces*: a list of vectors is
interpreted as the subspace they span.
"""
from __future__ import annotations

from typing import Sequence

from .fields import Field

Vector = list


def zeros(n: int, F: Field) -> list:
    z = F.zero
    return [z] * n


def is_zero(v: Sequence) -> bool:
    return not any(v)


def rref(rows: Sequence[Sequence], F: Field, ncols: int | None = None):
    """Reduced row echelon form of the span of ``rows``.

    Returns ``(basis, pivots)``; each basis row has a 1 in its pivot column
    and zeros in every other pivot column.  Zero rows are dropped.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        for k in range(r, len(m)):
            if m[k][c]:
                break
        else:
            continue
        m[r], m[k] = m[k], m[r]
        piv = m[r]
        inv = F.inv(piv[c])
        if inv != 1:
            m[r] = piv = [F.norm(x * inv) for x in piv]
        for k in range(len(m)):
            if k != r and m[k][c]:
                fac = m[k][c]
                row = m[k]
                m[k] = [F.norm(a - fac * b) if b else a for a, b in zip(row, piv)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def reduce(v: Sequence, basis: Sequence[Sequence], pivots: Sequence[int], F: Field) -> list:
    """Residual of ``v`` after eliminating the pivot columns of an RREF basis."""
    out = list(v)
    for row, c in zip(basis, pivots):
        fac = out[c]
        if fac:
            out = [F.norm(a - fac * b) if b else a for a, b in zip(out, row)]
    return out


def coordinates(v: Sequence, basis: Sequence[Sequence], pivots: Sequence[int], F: Field):
    """Coefficients of ``v`` in an RREF basis, or ``None`` if ``v`` is not in the span."""
    coeffs = [v[c] for c in pivots]
    if any(reduce(v, basis, pivots, F)):
        return None
    return coeffs


def rank(rows: Sequence[Sequence], F: Field, ncols: int | None = None) -> int:
    return len(rref(rows, F, ncols)[1])


def transpose(rows: Sequence[Sequence], ncols: int) -> list:
    return [[r[j] for r in rows] for j in range(ncols)]


def nullspace(matrix: Sequence[Sequence], ncols: int, F: Field) -> list:
    """Basis of ``{x : matrix @ x = 0}`` (right kernel), in RREF."""
    basis, pivots = rref(matrix, F, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for fc in free:
        x = zeros(ncols, F)
        x[fc] = F.one
        for row, pc in zip(basis, pivots):
            if row[fc]:
                x[pc] = F.norm(-row[fc])
        out.append(x)
    return rref(out, F, ncols)[0] if out else []


def left_kernel(images: Sequence[Sequence], target_dim: int, F: Field) -> list:
    """Basis of ``{c : sum_k c[k] * images[k] = 0}``; ``images`` has one row per source basis vector."""
    n = len(images)
    if n == 0:
        return []
    if target_dim == 0:
        return rref([[F.one if j == k else F.zero for j in range(n)] for k in range(n)], F, n)[0]
    return nullspace(transpose(images, target_dim), n, F)


def solve_combination(images: Sequence[Sequence], target: Sequence, F: Field):
    """Some ``c`` with ``sum_k c[k] * images[k] == target``, or ``None``."""
    n = len(images)
    dim = len(target)
    if not any(target):
        return zeros(n, F)
    if n == 0:
        return None
    # augmented system (images^T | target)
    aug = [[images[k][j] for k in range(n)] + [target[j]] for j in range(dim)]
    basis, pivots = rref(aug, F, n + 1)
    if n in pivots:
        return None
    sol = zeros(n, F)
    for row, pc in zip(basis, pivots):
        sol[pc] = row[n]
    return sol


def det(matrix: Sequence[Sequence], F: Field):
    """Determinant by Gaussian elimination."""
    n = len(matrix)
    m = [list(r) for r in matrix]
    d = F.one
    for c in range(n):
        for k in range(c, n):
            if m[k][c]:
                break
        else:
            return F.zero
        if k != c:
            m[c], m[k] = m[k], m[c]
            d = F.norm(-d)
        piv = m[c][c]
        d = F.norm(d * piv)
        inv = F.inv(piv)
        for k in range(c + 1, n):
            if m[k][c]:
                fac = F.norm(m[k][c] * inv)
                m[k] = [F.norm(a - fac * b) for a, b in zip(m[k], m[c])]
    return d


def integer_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in matrix]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if m[c][c] == 0:
            for k in range(c + 1, n):
                if m[k][c]:
                    m[c], m[k] = m[k], m[c]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[n - 1][n - 1]
