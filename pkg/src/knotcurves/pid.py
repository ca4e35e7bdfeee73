"""Smith normal form over F2[U].

Polynomials are encoded as Python ints: bit ``i`` is the coefficient of
``U**i``.  So ``0b101`` is ``1 + U**2`` and ``1 << n`` is ``U**n``.
"""

from __future__ import annotations


def pdeg(a: int) -> int:
    return a.bit_length() - 1


def pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = pdeg(b)
    while a and pdeg(a) >= db:
        shift = pdeg(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pdivmod(a, b)[1]
    return a


def monomial_exponent(a: int) -> int | None:
    """Return n if ``a == U**n``, else None."""
    if a and a & (a - 1) == 0:
        return pdeg(a)
    return None


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of ``matrix`` over F2[U], sorted by divisibility.

    Pivots are chosen by minimal degree, ties broken by (row, column) order.
    Mostly-monomial input (the graded case) keeps the elimination cheap.
    """
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    diag: list[int] = []
    top = 0
    while top < min(nrows, ncols):
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (pivot is None or pdeg(m[i][j]) < pdeg(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]

        while True:
            p = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                if m[i][top]:
                    q, r = pdivmod(m[i][top], p)
                    for j in range(top, ncols):
                        m[i][j] ^= pmul(q, m[top][j])
                    if r:
                        dirty = True
            for j in range(top + 1, ncols):
                if m[top][j]:
                    q, r = pdivmod(m[top][j], p)
                    for i in range(top, nrows):
                        m[i][j] ^= pmul(q, m[i][top])
                    if r:
                        dirty = True
            if not dirty:
                # the pivot must also divide the rest of the block
                bad = next(
                    ((i, j) for i in range(top + 1, nrows) for j in range(top + 1, ncols)
                     if pdivmod(m[i][j], p)[1]),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                for j in range(top, ncols):
                    m[top][j] ^= m[i][j]
                continue
            # a smaller remainder appeared in the pivot row/column: re-pivot there
            best = (top, top)
            for i in range(top, nrows):
                if m[i][top] and pdeg(m[i][top]) < pdeg(m[best[0]][best[1]]):
                    best = (i, top)
            for j in range(top, ncols):
                if m[top][j] and pdeg(m[top][j]) < pdeg(m[best[0]][best[1]]):
                    best = (top, j)
            bi, bj = best
            m[top], m[bi] = m[bi], m[top]
            for row in m:
                row[top], row[bj] = row[bj], row[top]
        diag.append(m[top][top])
        top += 1
    return sorted(diag, key=pdeg)
