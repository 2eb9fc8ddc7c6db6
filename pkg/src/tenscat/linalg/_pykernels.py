"""Pure-Python elimination kernels.

These mirror the compiled versions in ``_ckernels.pyx`` function for
function and must return identical results; the dispatcher in
:mod:`tenscat.linalg.kernels` picks one at import time.
"""
from __future__ import annotations


def rref_int(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free Gauss-Jordan elimination of an integer matrix.

    Returns ``(R, pivots, d)`` where ``R / d`` is the reduced row echelon
    form.  Every pivot entry of ``R`` equals ``d``.  The divisions by the
    previous pivot are exact (Bareiss).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            a = row[c]
            if a == 0:
                if piv != prev:
                    for j in range(ncols):
                        if row[j]:
                            row[j] = row[j] * piv // prev
            else:
                for j in range(ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    if prev < 0:
        m = [[-x for x in row] for row in m]
        prev = -prev
    return m, pivots, prev


def rref_modp(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p); entries in ``range(p)``."""
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        q = r
        while q < nrows and m[q][c] == 0:
            q += 1
        if q == nrows:
            continue
        if q != r:
            m[q], m[r] = m[r], m[q]
        inv = pow(m[r][c], -1, p)
        prow = [x * inv % p for x in m[r]]
        m[r] = prow
        for i in range(nrows):
            if i != r:
                a = m[i][c]
                if a:
                    row = m[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] = (row[j] - a * prow[j]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def smith_normal_form(a: list[list[int]], nrows: int, ncols: int):
    """Smith normal form ``U A V = D`` with unimodular ``U``, ``V``.

    Pivoting uses the smallest nonzero absolute value of the remaining
    block.  Returns ``(U, D, V)`` as lists of lists.
    """
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        rd, rs = d[dst], d[src]
        for j in range(ncols):
            if rs[j]:
                rd[j] += k * rs[j]
        ud, us = u[dst], u[src]
        for j in range(nrows):
            if us[j]:
                ud[j] += k * us[j]

    def add_col(dst, src, k):
        for row in d:
            if row[src]:
                row[dst] += k * row[src]
        for row in v:
            if row[src]:
                row[dst] += k * row[src]

    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, nrows):
            row = d[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = d[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                x = d[i][t]
                if x:
                    add_row(i, t, -(x // piv))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = d[t][j]
                if x:
                    add_col(j, t, -(x // piv))
                    if d[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = None
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if d[i][j] % piv:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(t, bad, 1)
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(piv), t, t)
            for i in range(t + 1, nrows):
                x = d[i][t]
                if x and abs(x) < best[0]:
                    best = (abs(x), i, t)
            for j in range(t + 1, ncols):
                x = d[t][j]
                if x and abs(x) < best[0]:
                    best = (abs(x), t, j)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v
