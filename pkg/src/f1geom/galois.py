"""Exact arithmetic in F_{p^k} = F_p[X]/(f).

Elements are plain ints 0 .. p^k - 1; the base-p digits of an element are its
coefficients, constant term first.  ``FieldElement`` wraps an int for operator
syntax, but the hot paths (counting kernels, Singer logs) use the int API on
``GF`` directly.
"""
from __future__ import annotations

from functools import cached_property
from math import gcd

import numpy as np

from .errors import BoundExceeded, DivisionByZero, NotASubfield, UnsupportedQ

DESK_BOUND = 10 ** 7
TABLE_BOUND = 1024


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(q):
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def prime_powers(start=2):
    q = start
    while True:
        if prime_power(q):
            yield q
        q += 1


# -- polynomials over F_p as coefficient lists, constant term first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _monic(code, k, p):
    c = []
    for _ in range(k):
        c.append(code % p)
        code //= p
    return c + [1]


def is_irreducible(f, p):
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    f = _trim(f)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for code in range(p ** d):
            if not poly_mod(f, _monic(code, d, p), p):
                return False
    return True


def find_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over F_p.

    Order is lexicographic on the coefficients read from the leading term down,
    so X^3+X+1 precedes X^3+X^2+1.  Degree 1 gives X.
    """
    if not is_prime(p) or k < 1:
        raise UnsupportedQ(f"need p prime and k >= 1, got p={p}, k={k}")
    if p ** k > DESK_BOUND:
        raise BoundExceeded(f"p^k = {p}^{k} exceeds {DESK_BOUND}")
    for code in range(p ** k):
        f = _monic(code, k, p)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def parse_poly(text):
    """'1,1,0,1' -> [1, 1, 0, 1] (constant term first)."""
    return [int(t) for t in text.replace(" ", "").split(",") if t]


class GF:
    """The field F_p[X]/(modulus) with elements encoded as ints."""

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise UnsupportedQ(f"{p} is not prime")
        if p ** k > DESK_BOUND:
            raise BoundExceeded(f"field of size {p}^{k} exceeds {DESK_BOUND}")
        if modulus is None:
            modulus = find_irreducible(p, k)
        modulus = [c % p for c in modulus]
        if len(_trim(modulus)) != k + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)

    @classmethod
    def of_order(cls, q):
        pk = prime_power(q)
        if pk is None:
            raise UnsupportedQ(f"{q} is not a prime power")
        return cls(*pk)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # -- encoding
    def coeffs(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def encode(self, coeffs):
        coeffs = poly_mod(coeffs, self.modulus, self.p) if len(coeffs) > self.k else list(coeffs)
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c % self.p
        return v

    # -- arithmetic on ints
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a):
        return self.encode([-x for x in self.coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_slow(self, a, b):
        if self.k == 1:
            return a * b % self.p
        x, y = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        return self.encode(poly_mod([c % self.p for c in prod], self.modulus, self.p))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.q <= 1 << 16:
            return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])
        return self._mul_slow(a, b)

    def pow(self, a, e):
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 has no inverse")
            return 1 if e == 0 else 0
        if self.q <= 1 << 16:
            return int(self._exp[(self._log[a] * e) % (self.q - 1)])
        result, base = 1, a
        e %= self.q - 1
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse")
        return self.pow(a, self.q - 2)

    def frobenius(self, a, times=1):
        return self.pow(a, self.p ** times)

    def order(self, a):
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        for r in factorize(self.q - 1):
            while n % r == 0 and self._pow_slow(a, n // r) == 1:
                n //= r
        return n

    def _pow_slow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    @cached_property
    def generator(self):
        """Least element (in int order) of multiplicative order q - 1."""
        for a in range(1, self.q):
            if self.order(a) == self.q - 1:
                return a
        raise AssertionError("no generator")  # pragma: no cover

    @cached_property
    def _exp(self):
        g = self.generator
        out = np.empty(self.q - 1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            out[i] = x
            x = self._mul_slow(x, g)
        return out

    @cached_property
    def _log(self):
        out = np.zeros(self.q, dtype=np.int64)
        out[self._exp] = np.arange(self.q - 1)
        return out

    def log(self, a):
        """Discrete log to the base ``generator``."""
        if a == 0:
            raise DivisionByZero("log of 0")
        return int(self._log[a])

    def elements(self):
        return range(self.q)

    def element(self, value):
        return FieldElement(self, value)

    # -- tables for the kernels
    @cached_property
    def add_table(self):
        if self.q > TABLE_BOUND:
            raise BoundExceeded(f"add table for q={self.q} exceeds {TABLE_BOUND}")
        d = np.array([self.coeffs(a) for a in range(self.q)], dtype=np.int64).reshape(self.q, self.k)
        s = (d[:, None, :] + d[None, :, :]) % self.p
        w = self.p ** np.arange(self.k, dtype=np.int64)
        return (s * w).sum(axis=2)

    @cached_property
    def mul_table(self):
        if self.q > TABLE_BOUND:
            raise BoundExceeded(f"mul table for q={self.q} exceeds {TABLE_BOUND}")
        t = np.zeros((self.q, self.q), dtype=np.int64)
        lg = self._log[1:]
        t[1:, 1:] = self._exp[(lg[:, None] + lg[None, :]) % (self.q - 1)]
        return t

    def pow_table(self, max_exp):
        t = np.zeros((self.q, max_exp + 1), dtype=np.int64)
        t[:, 0] = 1
        lg = self._log[1:]
        for e in range(1, max_exp + 1):
            t[1:, e] = self._exp[(lg * e) % (self.q - 1)]
        return t

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def roots_of_unity(self, n):
        """Elements with x^n = 1."""
        return [a for a in range(1, self.q) if self.pow(a, n) == 1]

    def subfield(self, d):
        """Elements of the degree-d subfield {x : x^(p^d) = x}."""
        if d < 1 or self.k % d:
            raise NotASubfield(f"degree {d} does not divide {self.k}")
        return [a for a in range(self.q) if self.frobenius(a, d) == a]


def subgroup_cosets(field, d):
    """Partition of the field into {0} and the cosets of F_{p^d}^x."""
    sub = [a for a in field.subfield(d) if a]
    seen = set()
    out = [(0,)]
    for a in range(1, field.q):
        if a in seen:
            continue
        coset = tuple(sorted(field.mul(a, g) for g in sub))
        seen.update(coset)
        out.append(coset)
    return out


class FieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value if isinstance(value, int) else field.encode(value)

    @property
    def coeffs(self):
        return self.field.coeffs(self.value)

    def _wrap(self, other):
        if isinstance(other, FieldElement):
            return other.value
        return self.field.from_int(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._wrap(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._wrap(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._wrap(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(self._wrap(other))))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"FieldElement({self.field!r}, {self.coeffs})"


def gcd_ok(q, e):
    return gcd(q - 1, e) == 1
