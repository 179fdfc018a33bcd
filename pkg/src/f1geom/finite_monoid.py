"""Explicit multiplication tables for small commutative pointed monoids.

These are the brute-force oracle for the presentation code: every property
here is checked by exhaustion over the table.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .monoid import FREE, TOR, MonoidPresentation, Monomial, PrimeIdeal, format_monomial

TABLE_LIMIT = 4096


@dataclass(frozen=True)
class FiniteMonoidTable:
    elements: tuple
    mul: tuple  # mul[a][b] -> index
    zero: int
    one: int

    def __len__(self):
        return len(self.elements)

    def axiom_violations(self):
        n = len(self.elements)
        m = self.mul
        bad = []
        for a in range(n):
            if m[a][self.one] != a:
                bad.append(("identity", a))
            if m[a][self.zero] != self.zero:
                bad.append(("zero", a))
            for b in range(n):
                if m[a][b] != m[b][a]:
                    bad.append(("commutative", a, b))
                for c in range(n):
                    if m[m[a][b]][c] != m[a][m[b][c]]:
                        bad.append(("associative", a, b, c))
        return bad

    def is_ideal(self, s):
        s = set(s)
        return self.zero in s and all(self.mul[a][r] in s for a in s for r in range(len(self)))

    def ideal_closure(self, gens):
        return frozenset({self.zero} | {self.mul[g][r] for g in gens for r in range(len(self))})

    def ideals(self):
        """All ideals, by closure over the ideal lattice (exhaustive)."""
        start = frozenset({self.zero})
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for I in frontier:
                for x in range(len(self)):
                    if x not in I:
                        J = I | self.ideal_closure([x])
                        if J not in seen:
                            seen.add(J)
                            nxt.append(J)
            frontier = nxt
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def is_prime_ideal(self, s):
        s = set(s)
        if self.one in s or not self.is_ideal(s):
            return False
        comp = [a for a in range(len(self)) if a not in s]
        return all(self.mul[a][b] not in s for a in comp for b in comp)

    def prime_ideals(self):
        return [I for I in self.ideals() if self.is_prime_ideal(I)]

    def units(self):
        return [a for a in range(len(self)) if self.one in self.mul[a]]

    def is_cancellative(self):
        """a*x = a*y with a != 0 forces x = y."""
        n = len(self)
        for a in range(n):
            if a == self.zero:
                continue
            row = self.mul[a]
            if len(set(row)) != n:
                return False
        return True


def table_from_presentation(m: MonoidPresentation):
    """Enumerate the finite monoid m as a table (needs every free generator nilpotent)."""
    if not m.is_finite():
        raise ValueError("presentation is infinite")
    bounds = []
    for i, g in enumerate(m.generators):
        if g.kind == TOR:
            bounds.append(range(g.order))
        else:
            k = min(r[i] for r, s in zip(m.ideal, m.ideal_supports) if s == {i})
            bounds.append(range(k))
    elems = []
    for exps in product(*bounds):
        mono = m.normalize(Monomial(tuple(exps)))
        if not mono.is_zero:
            elems.append(mono)
    if len(elems) + 1 > TABLE_LIMIT:
        raise ValueError("table too large")
    elems.append(Monomial.zero())
    index = {e: i for i, e in enumerate(elems)}
    mul = tuple(tuple(index[m.mul(a, b)] for b in elems) for a in elems)
    names = tuple("0" if e.is_zero else format_monomial(m, e.exponents) for e in elems)
    return FiniteMonoidTable(names, mul, index[Monomial.zero()], index[m.one()]), elems


def prime_element_set(m, p: PrimeIdeal, elems):
    """Indices (w.r.t. ``elems``) of the elements lying in p_I."""
    return frozenset(i for i, e in enumerate(elems) if p.contains(m, e))


def cyclic_group_table(n, with_zero=True):
    """F1[C_n] as a table: elements 1, g, ..., g^{n-1}, 0."""
    elems = tuple(f"g^{i}" for i in range(n)) + ("0",)
    z = n
    mul = tuple(tuple(z if (a == z or b == z) else (a + b) % n for b in range(n + 1))
                for a in range(n + 1))
    return FiniteMonoidTable(elems, mul, z, 0)


def truncated_polynomial_table(k):
    """F1[X]/(X^k): elements 1, X, ..., X^{k-1}, 0."""
    elems = tuple(f"X^{i}" for i in range(k)) + ("0",)
    z = k
    mul = tuple(tuple(z if (a == z or b == z or a + b >= k) else a + b for b in range(k + 1))
                for a in range(k + 1))
    return FiniteMonoidTable(elems, mul, z, 0)


def is_hom(src, tgt, f):
    if f[src.one] != tgt.one or f[src.zero] != tgt.zero:
        return False
    n = len(src)
    return all(f[src.mul[a][b]] == tgt.mul[f[a]][f[b]] for a in range(n) for b in range(n))


def first_isomorphism_check(src, tgt, f):
    """Verify M/ker(f) ~ f(M) by building the quotient table explicitly.

    Returns (ok, witness) where witness records the kernel classes, the image
    and the first failing condition if any.
    """
    witness = {}
    if not is_hom(src, tgt, f):
        witness["failure"] = "not a homomorphism"
        return False, witness
    classes = {}
    for a in range(len(src)):
        classes.setdefault(f[a], []).append(a)
    cls_list = sorted(classes.values())
    cls_of = {a: i for i, c in enumerate(cls_list) for a in c}
    witness["kernel_classes"] = [[src.elements[a] for a in c] for c in cls_list]
    # quotient multiplication must be well defined on classes
    qmul = []
    for i, ci in enumerate(cls_list):
        row = []
        for j, cj in enumerate(cls_list):
            prods = {cls_of[src.mul[a][b]] for a in ci for b in cj}
            if len(prods) != 1:
                witness["failure"] = f"congruence not compatible at classes {i},{j}"
                return False, witness
            row.append(prods.pop())
        qmul.append(tuple(row))
    image = sorted(classes)
    witness["image"] = [tgt.elements[x] for x in image]
    phi = [f[c[0]] for c in cls_list]
    if len(set(phi)) != len(phi) or sorted(phi) != image:
        witness["failure"] = "induced map not a bijection onto the image"
        return False, witness
    for i in range(len(cls_list)):
        for j in range(len(cls_list)):
            if phi[qmul[i][j]] != tgt.mul[phi[i]][phi[j]]:
                witness["failure"] = f"induced map not multiplicative at {i},{j}"
                return False, witness
    witness["quotient_size"] = len(cls_list)
    return True, witness
