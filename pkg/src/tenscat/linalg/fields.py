"""Exact scalar fields: the rationals, prime fields and cyclotomic fields.

Elements are plain values rather than wrapper objects so the elimination
kernels can work on them directly:

* ``QQ``            -> :class:`fractions.Fraction`
* ``GF(p)``         -> ``int`` in ``range(p)``
* ``Cyclotomic(n)`` -> :class:`CycloElement` (coefficients modulo Phi_n)

All arithmetic goes through the owning :class:`Field`, which keeps the
prime-field case honest (Python ints do not reduce themselves).
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Sequence


class FieldMismatchError(ValueError):
    """Raised when values from two different fields meet."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# --- integer polynomials (coefficient lists, lowest degree first) ----------

def _poly_trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    """Long division by a monic polynomial."""
    a = list(a)
    b = list(b)
    assert b and b[-1] == 1, "divisor must be monic"
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _poly_trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _poly_trim(q), _poly_trim(a[:db])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, lowest degree first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(num)


# --- fields -----------------------------------------------------------------

class Field:
    """Base class for exact fields.  Instances compare equal by parameters."""

    kind: str = ""
    characteristic: int = 0

    # the arithmetic interface used by every matrix routine
    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def coerce(self, x: Any) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def dot(self, xs: Iterable, ys: Iterable):
        s = self.zero()
        for x, y in zip(xs, ys):
            if x and y:
                s = s + x * y
        return s

    def power(self, a, k: int):
        if k < 0:
            return self.power(self.inv(a), -k)
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def random_element(self, rng: random.Random, bound: int = 3):
        return self.from_int(rng.randint(-bound, bound))

    # serialization
    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, s: Any):
        raise NotImplementedError

    def to_json(self, a):
        return self.to_str(a)

    @property
    def spec(self) -> dict:
        raise NotImplementedError

    @property
    def tag(self) -> str:
        """Short selector string, as accepted by :func:`field_from_tag`."""
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.spec == other.spec

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.spec.items()))))

    def __repr__(self):
        return self.tag


class Rationals(Field):
    kind = "rationals"
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, CycloElement):
            raise FieldMismatchError(f"{x!r} is not a rational")
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return a / b

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        if isinstance(s, int):
            return Fraction(s)
        return Fraction(str(s).strip())

    def random_element(self, rng, bound=3):
        num = rng.randint(-bound, bound)
        den = rng.choice((1, 1, 1, 2, 3))
        return Fraction(num, den)

    @property
    def spec(self):
        return {"kind": "rationals"}

    @property
    def tag(self):
        return "q"


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatchError(f"cannot coerce {x!r} into GF({self.p})")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def dot(self, xs, ys):
        return sum(x * y for x, y in zip(xs, ys)) % self.p

    def random_element(self, rng, bound=3):
        return rng.randrange(self.p)

    def to_str(self, a):
        return f"{a} mod {self.p}"

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        text = str(s).strip()
        m = re.fullmatch(r"(-?\d+)\s*(?:mod\s*(\d+))?", text)
        if m is None:
            return self.coerce(Fraction(text))
        if m.group(2) is not None and int(m.group(2)) != self.p:
            raise FieldMismatchError(f"{text!r} is not in GF({self.p})")
        return int(m.group(1)) % self.p

    def primitive_root_of_unity(self, n: int) -> int:
        if (self.p - 1) % n:
            raise ValueError(f"GF({self.p}) has no primitive {n}-th root of unity")
        for a in range(1, self.p):
            if pow(a, n, self.p) == 1 and all(pow(a, k, self.p) != 1 for k in range(1, n)):
                return a
        raise AssertionError("unreachable")

    @property
    def spec(self):
        return {"kind": "prime", "p": self.p}

    @property
    def tag(self):
        return f"fp:{self.p}"


class CycloElement:
    """An element of Q(zeta_n), stored as rational coefficients of
    1, zeta, ..., zeta^(d-1) with d = deg Phi_n."""

    __slots__ = ("field", "c")

    def __init__(self, field: "CyclotomicField", coeffs: Sequence):
        self.field = field
        self.c = tuple(coeffs)

    def _other(self, other):
        if isinstance(other, CycloElement):
            if other.field.n != self.field.n:
                raise FieldMismatchError(
                    f"Q(zeta_{self.field.n}) and Q(zeta_{other.field.n}) mixed"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if not any(o.c):
            return self
        if not any(self.c):
            return o
        return CycloElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if not any(o.c):
            return self
        return CycloElement(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycloElement(self.field, [-a for a in self.c])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.field, [a * other for a in self.c])
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * self.field.inv(o)

    def __rtruediv__(self, other):
        return self.field.inv(self) * other

    def __pow__(self, k: int):
        return self.field.power(self, k)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            return self.field.n == other.field.n and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.field.n, self.c))

    def __repr__(self):
        return self.field.to_str(self)


class CyclotomicField(Field):
    """Q(zeta_n) modulo the n-th cyclotomic polynomial."""

    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("cyclotomic order must be >= 1")
        self.n = n
        self.modulus = cyclotomic_polynomial(n)
        self.degree = len(self.modulus) - 1
        self._zero = CycloElement(self, [Fraction(0)] * self.degree)
        self._one = CycloElement(self, [Fraction(1)] + [Fraction(0)] * (self.degree - 1))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def from_int(self, n):
        return CycloElement(self, [Fraction(n)] + [Fraction(0)] * (self.degree - 1))

    def from_poly(self, coeffs: Sequence) -> CycloElement:
        """Reduce an arbitrary polynomial in zeta modulo Phi_n."""
        coeffs = [Fraction(c) for c in coeffs]
        d = self.degree
        mod = self.modulus
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d + 1):
                    coeffs[i - d + j] -= c * mod[j]
        coeffs = coeffs[:d] + [Fraction(0)] * max(0, d - len(coeffs))
        return CycloElement(self, coeffs)

    def zeta(self) -> CycloElement:
        return self.from_poly([0, 1])

    def coerce(self, x):
        if isinstance(x, CycloElement):
            if x.field.n != self.n:
                raise FieldMismatchError(f"element of Q(zeta_{x.field.n}) used in Q(zeta_{self.n})")
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_int(x)
        if isinstance(x, (list, tuple)):
            return self.from_poly(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} into Q(zeta_{self.n})")

    def _mul(self, a: CycloElement, b: CycloElement) -> CycloElement:
        ac, bc = a.c, b.c
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        prod[i + j] += x * y
        mod = self.modulus
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                for j in range(d):
                    prod[i - d + j] -= c * mod[j]
        return CycloElement(self, prod[:d])

    def mul(self, a, b):
        return self._mul(a, b)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        d = self.degree
        if not any(a.c[1:]):
            return self.from_int(1 / a.c[0])
        # solve (multiplication-by-a) x = 1 over Q
        cols = []
        basis = [CycloElement(self, [Fraction(int(i == j)) for i in range(d)]) for j in range(d)]
        for e in basis:
            cols.append(self._mul(a, e).c)
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return CycloElement(self, [aug[i][d] for i in range(d)])

    def dot(self, xs, ys):
        d = self.degree
        acc = [Fraction(0)] * (2 * d - 1)
        for x, y in zip(xs, ys):
            if x and y:
                for i, a in enumerate(x.c):
                    if a:
                        for j, b in enumerate(y.c):
                            if b:
                                acc[i + j] += a * b
        mod = self.modulus
        for i in range(2 * d - 2, d - 1, -1):
            c = acc[i]
            if c:
                for j in range(d):
                    acc[i - d + j] -= c * mod[j]
        return CycloElement(self, acc[:d])

    def random_element(self, rng, bound=3):
        return CycloElement(self, [Fraction(rng.randint(-bound, bound)) for _ in range(self.degree)])

    def to_str(self, a):
        terms = []
        for i, c in enumerate(a.c):
            if c:
                mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mon:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append("-" + mon)
                else:
                    terms.append(f"{c}*{mon}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def to_json(self, a):
        return [str(c) for c in a.c]

    def parse(self, s):
        if isinstance(s, (list, tuple)):
            return self.from_poly([Fraction(str(c)) for c in s])
        if isinstance(s, int):
            return self.from_int(s)
        text = str(s).strip()
        try:
            return self.from_int(Fraction(text))
        except ValueError:
            pass
        raise ValueError(f"cyclotomic scalars are serialized as coefficient lists, got {text!r}")

    @property
    def spec(self):
        return {"kind": "cyclotomic", "n": self.n}

    @property
    def tag(self):
        return f"cyc:{self.n}"


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


@lru_cache(maxsize=None)
def Cyclotomic(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def field_from_tag(tag: str) -> Field:
    """Parse the CLI selector ``q``, ``fp:P`` or ``cyc:N``."""
    tag = tag.strip().lower()
    if tag in ("q", "qq", "rationals"):
        return QQ
    kind, _, param = tag.partition(":")
    if kind == "fp" and param.isdigit():
        return GF(int(param))
    if kind == "cyc" and param.isdigit():
        return Cyclotomic(int(param))
    raise ValueError(f"unknown field selector {tag!r} (expected q, fp:P or cyc:N)")


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return GF(int(spec["p"]))
    if kind == "cyclotomic":
        return Cyclotomic(int(spec["n"]))
    raise ValueError(f"unknown field kind {kind!r}")


def cyclotomic_primitive_root(n: int) -> CycloElement:
    """A primitive n-th root of unity in Q(zeta_n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Cyclotomic(n).zeta()


def primitive_root_of_unity(field: Field, n: int):
    """Some primitive n-th root of unity in ``field`` (ValueError if none)."""
    if isinstance(field, CyclotomicField):
        if field.n % n:
            raise ValueError(f"Q(zeta_{field.n}) has no primitive {n}-th root of unity")
        return field.power(field.zeta(), field.n // n)
    if isinstance(field, PrimeField):
        return field.primitive_root_of_unity(n)
    if n in (1, 2):
        return field.from_int(1 if n == 1 else -1)
    raise ValueError(f"{field!r} has no primitive {n}-th root of unity")


def is_primitive_root(field: Field, q, n: int) -> bool:
    if field.power(q, n) != field.one():
        return False
    return all(field.power(q, k) != field.one() for k in range(1, n))


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0
