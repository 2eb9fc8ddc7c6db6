# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernels; see ``_pykernels`` for the reference
semantics.  Results must match the pure-Python versions exactly."""

from libc.stdlib cimport malloc, free


def rref_int(rows, Py_ssize_t ncols):
    cdef list m = [list(rw) for rw in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef object prev = 1
    cdef object piv, a, x
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list prow, row
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = <list>m[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>m[i]
            a = row[c]
            if a == 0:
                if piv != prev:
                    for j in range(ncols):
                        x = row[j]
                        if x:
                            row[j] = x * piv // prev
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


def rref_modp(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *a = <long long *> malloc(max(nrows * ncols, 1) * sizeof(long long))
    cdef Py_ssize_t i, j, c, q, r = 0
    cdef long long inv, f, v
    cdef list pivots = []
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = row[j] % p
                a[i * ncols + j] = v
        for c in range(ncols):
            if r == nrows:
                break
            q = r
            while q < nrows and a[q * ncols + c] == 0:
                q += 1
            if q == nrows:
                continue
            if q != r:
                for j in range(ncols):
                    v = a[q * ncols + j]
                    a[q * ncols + j] = a[r * ncols + j]
                    a[r * ncols + j] = v
            inv = _inv_mod(a[r * ncols + c], p)
            for j in range(c, ncols):
                a[r * ncols + j] = a[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = a[i * ncols + c]
                    if f:
                        for j in range(c, ncols):
                            v = a[r * ncols + j]
                            if v:
                                a[i * ncols + j] = (a[i * ncols + j] - f * v) % p
                                if a[i * ncols + j] < 0:
                                    a[i * ncols + j] += p
            pivots.append(c)
            r += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
    finally:
        free(a)
    return out, pivots


cdef long long _inv_mod(long long x, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = x % p, q, tmp
    while newr:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def smith_normal_form(a, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef list d = [list(r) for r in a]
    cdef list u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    cdef list v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cdef Py_ssize_t t = 0, i, j, bi, bj, bad
    cdef object x, piv, k, best
    cdef bint dirty
    cdef list row, rd, rs

    while t < min(nrows, ncols):
        best = None
        bi = bj = -1
        for i in range(t, nrows):
            row = <list>d[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    bi = i
                    bj = j
        if best is None:
            break
        _swap_rows(d, u, t, bi)
        _swap_cols(d, v, t, bj)
        while True:
            piv = (<list>d[t])[t]
            dirty = False
            for i in range(t + 1, nrows):
                x = (<list>d[i])[t]
                if x:
                    _add_row(d, u, i, t, -(x // piv), nrows, ncols)
                    if (<list>d[i])[t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = (<list>d[t])[j]
                if x:
                    _add_col(d, v, j, t, -(x // piv))
                    if (<list>d[t])[j]:
                        dirty = True
            if not dirty:
                bad = -1
                for i in range(t + 1, nrows):
                    row = <list>d[i]
                    for j in range(t + 1, ncols):
                        if row[j] % piv:
                            bad = i
                            break
                    if bad >= 0:
                        break
                if bad < 0:
                    break
                _add_row(d, u, t, bad, 1, nrows, ncols)
                continue
            best = abs(piv)
            bi = bj = t
            for i in range(t + 1, nrows):
                x = (<list>d[i])[t]
                if x and abs(x) < best:
                    best = abs(x)
                    bi = i
                    bj = t
            for j in range(t + 1, ncols):
                x = (<list>d[t])[j]
                if x and abs(x) < best:
                    best = abs(x)
                    bi = t
                    bj = j
            if bi != t:
                _swap_rows(d, u, t, bi)
            if bj != t:
                _swap_cols(d, v, t, bj)
        if (<list>d[t])[t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


cdef inline void _swap_rows(list d, list u, Py_ssize_t i, Py_ssize_t j):
    d[i], d[j] = d[j], d[i]
    u[i], u[j] = u[j], u[i]


cdef inline void _swap_cols(list d, list v, Py_ssize_t i, Py_ssize_t j):
    cdef list row
    for row in d:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


cdef inline void _add_row(list d, list u, Py_ssize_t dst, Py_ssize_t src, object k,
                          Py_ssize_t nrows, Py_ssize_t ncols):
    cdef list rd = <list>d[dst]
    cdef list rs = <list>d[src]
    cdef Py_ssize_t j
    for j in range(ncols):
        if rs[j]:
            rd[j] = rd[j] + k * rs[j]
    rd = <list>u[dst]
    rs = <list>u[src]
    for j in range(nrows):
        if rs[j]:
            rd[j] = rd[j] + k * rs[j]


cdef inline void _add_col(list d, list v, Py_ssize_t dst, Py_ssize_t src, object k):
    cdef list row
    for row in d:
        if row[src]:
            row[dst] = row[dst] + k * row[src]
    for row in v:
        if row[src]:
            row[dst] = row[dst] + k * row[src]
