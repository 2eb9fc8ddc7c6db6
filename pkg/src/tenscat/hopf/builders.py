"""Built-in Hopf algebras: group algebras, Sweedler, Taft."""
from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Optional, Sequence

from ..linalg.fields import QQ, Field, is_primitive_root, primitive_root_of_unity
from ..linalg.matrix import ExactMatrix
from .algebra import FiniteDimAlgebra, HopfAlgebra


class NotAGroupError(ValueError):
    pass


def _check_group(table: Sequence[Sequence[int]]) -> int:
    """Validate a multiplication table; return the identity index."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise NotAGroupError("table must be square and nonempty")
    if any(not (0 <= x < n) for r in table for x in r):
        raise NotAGroupError("table entries out of range")
    ident = None
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroupError("no identity element")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroupError(f"not associative at {(a, b, c)}")
    for a in range(n):
        if not any(table[a][b] == ident for b in range(n)):
            raise NotAGroupError(f"element {a} has no inverse")
    return ident


def group_algebra(table: Sequence[Sequence[int]], field: Field = QQ, *, name: str = "",
                  generators: Optional[Sequence[int]] = None) -> HopfAlgebra:
    """kG with Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1."""
    n = len(table)
    ident = _check_group(table)
    F = field
    one, zero = F.one(), F.zero()
    mult = [[[one if table[i][j] == k else zero for k in range(n)] for j in range(n)] for i in range(n)]
    unit = [one if k == ident else zero for k in range(n)]
    alg = FiniteDimAlgebra(F, n, mult, unit)
    comult = [[one if (r == i * n + i) else zero for i in range(n)] for r in range(n * n)]
    inv = [next(b for b in range(n) if table[a][b] == ident) for a in range(n)]
    antipode = [[one if inv[i] == k else zero for i in range(n)] for k in range(n)]
    if generators is None:
        generators = _group_generators(table, ident)
    return HopfAlgebra(alg, comult, [one] * n, antipode, antipode, generators=generators, name=name or f"k[G{n}]")


def _group_generators(table, ident) -> list[int]:
    n = len(table)
    gens: list[int] = []
    span = {ident}
    for g in range(n):
        if g in span:
            continue
        gens.append(g)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = table[a][s]
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        if len(span) == n:
            break
    return gens or [ident]


def _table_from_elements(elems: list, op: Callable) -> list[list[int]]:
    index = {e: i for i, e in enumerate(elems)}
    return [[index[op(a, b)] for b in elems] for a in elems]


def _closure(gens: list, op: Callable, ident) -> list:
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = op(a, g)
                if b not in seen:
                    seen.add(b)
                    elems.append(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def abelian_group_table(orders: Sequence[int]) -> list[list[int]]:
    """Multiplication table of C_{o1} x C_{o2} x ...; index 0 is the identity."""
    elems = list(product(*[range(o) for o in orders])) if orders else [()]

    def op(a, b):
        return tuple((x + y) % o for x, y, o in zip(a, b, orders))

    return _table_from_elements(elems, op)


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def _perm_op(a, b):
    # apply a then b  (right action, matching right modules)
    return tuple(b[a[i]] for i in range(len(a)))


def symmetric_group_table(k: int = 3) -> list[list[int]]:
    elems = sorted(permutations(range(k)))
    return _table_from_elements(elems, _perm_op)


def dihedral_group_table(n: int = 4) -> list[list[int]]:
    """Symmetries of the n-gon (order 2n)."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    ident = tuple(range(n))
    elems = _closure([r, s], _perm_op, ident)
    return _table_from_elements(elems, _perm_op)


def quaternion_group_table() -> list[list[int]]:
    # units (sign, letter) with letters 1, i, j, k
    mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def op(a, b):
        s, l = mul[(a[1], b[1])]
        return (a[0] * b[0] * s, l)

    elems = [(s, l) for s in (1, -1) for l in "1ijk"]
    return _table_from_elements(elems, op)


def builtin_group_tables() -> dict[str, list[list[int]]]:
    """All groups of order <= 8 up to isomorphism."""
    groups = {f"C{n}": cyclic_group_table(n) for n in range(1, 9)}
    groups["C2xC2"] = abelian_group_table([2, 2])
    groups["C2xC4"] = abelian_group_table([2, 4])
    groups["C2xC2xC2"] = abelian_group_table([2, 2, 2])
    groups["S3"] = symmetric_group_table(3)
    groups["D4"] = dihedral_group_table(4)
    groups["Q8"] = quaternion_group_table()
    return groups


def sweedler_algebra(field: Field = QQ) -> HopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra, basis (1, g, x, gx)."""
    if field.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic != 2")
    H = taft_algebra(2, field, q=field.from_int(-1))
    H.name = "sweedler"
    return H


def taft_algebra(n: int, field: Optional[Field] = None, q=None) -> HopfAlgebra:
    """Taft algebra H_n(q) of dimension n^2.

    Basis ``g^a x^b`` sits at index ``b * n + a``, so n = 2 gives the
    Sweedler ordering (1, g, x, gx).  Relations g^n = 1, x^n = 0,
    xg = q gx; g grouplike, Delta(x) = x (x) 1 + g (x) x.
    """
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    if field is None:
        from ..linalg.fields import Cyclotomic

        field = QQ if n == 2 else Cyclotomic(n)
    F = field
    if q is None:
        q = primitive_root_of_unity(F, n)
    q = F.coerce(q)
    if not is_primitive_root(F, q, n):
        raise ValueError(f"q = {F.to_str(q)} is not a primitive {n}-th root of unity")
    d = n * n
    zero, one = F.zero(), F.one()

    def idx(a, b):
        return b * n + a

    qpow = [F.power(q, k) for k in range(n)]
    mult = [[[zero] * d for _ in range(d)] for _ in range(d)]
    for a, b, c, e in product(range(n), repeat=4):
        # (g^a x^b)(g^c x^e) = q^(bc) g^(a+c) x^(b+e)
        if b + e < n:
            mult[idx(a, b)][idx(c, e)][idx((a + c) % n, b + e)] = qpow[(b * c) % n]
    unit = [one if i == 0 else zero for i in range(d)]
    alg = FiniteDimAlgebra(F, d, mult, unit)

    def tmul(u, v):
        # product in H (x) H on sparse dicts {(i, j): c}
        out = {}
        for (i1, i2), c1 in u.items():
            for (j1, j2), c2 in v.items():
                for k1, x1 in alg._table[i1][j1].items():
                    for k2, x2 in alg._table[i2][j2].items():
                        key = (k1, k2)
                        out[key] = F.add(out.get(key, zero), F.mul(F.mul(c1, c2), F.mul(x1, x2)))
        return {k: v for k, v in out.items() if not F.is_zero(v)}

    g, x = idx(1, 0), idx(0, 1)
    delta_g = {(g, g): one}
    delta_x = {(x, 0): one, (g, x): one}
    one_one = {(0, 0): one}
    comult = [[zero] * d for _ in range(d * d)]
    for a in range(n):
        da = one_one
        for _ in range(a):
            da = tmul(da, delta_g)
        db = da
        for b in range(n):
            for (i, j), c in db.items():
                comult[i * d + j][idx(a, b)] = c
            db = tmul(db, delta_x)
    counit = [one if b == 0 else zero for b in range(n) for a in range(n)]

    # S(g) = g^(n-1), S(x) = -g^(n-1) x; S anti-multiplicative
    def elem(a, b):
        return alg.basis(idx(a % n, b))

    s_g = elem(n - 1, 0)
    s_x = tuple(F.neg(c) for c in elem(n - 1, 1))
    cols = [None] * d
    for a, b in product(range(n), repeat=2):
        v = alg.unit
        for _ in range(b):
            v = alg.multiply(v, s_x)
        for _ in range(a):
            v = alg.multiply(v, s_g)
        cols[idx(a, b)] = v
    antipode = ExactMatrix.from_columns(F, cols, d)
    # S^-1(g) = g^-1, S^-1(x) = -x g^-1
    s_inv_x = alg.multiply(tuple(F.neg(c) for c in elem(0, 1)), elem(n - 1, 0))
    icols = [None] * d
    for a, b in product(range(n), repeat=2):
        v = alg.unit
        for _ in range(b):
            v = alg.multiply(v, s_inv_x)
        for _ in range(a):
            v = alg.multiply(v, s_g)
        icols[idx(a, b)] = v
    antipode_inv = ExactMatrix.from_columns(F, icols, d)
    H = HopfAlgebra(alg, comult, counit, antipode, antipode_inv, generators=[g, x], name=f"taft{n}")
    H.taft_q = q
    H.taft_n = n
    return H


def builtin_hopf_algebras(field: Field = QQ) -> dict[str, HopfAlgebra]:
    """Every built-in over its natural field: groups of order <= 8 (over
    ``field``), Sweedler, Taft n = 2, 3, 4."""
    out = {f"k[{name}]": group_algebra(t, field, name=f"k[{name}]") for name, t in builtin_group_tables().items()}
    out["sweedler"] = sweedler_algebra(field if field.characteristic != 2 else QQ)
    for n in (2, 3, 4):
        out[f"taft{n}"] = taft_algebra(n)
    return out
