"""Finite commutative rings given by full addition and multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BoundExceeded
from .galois import GF

RING_BOUND = 512


@dataclass(frozen=True, eq=False)
class FiniteRing:
    names: tuple
    add: np.ndarray
    mul: np.ndarray
    zero: int = 0
    one: int = 1

    def __len__(self):
        return len(self.names)

    def units(self):
        return [a for a in range(len(self)) if (self.mul[a] == self.one).any()]

    def ideal_closure(self, gens):
        """Smallest ideal containing gens, as the sum of the principal ideals Rg."""
        I = np.array([self.zero])
        for g in gens:
            I = np.unique(self.add[np.ix_(I, np.unique(self.mul[g]))])
        return frozenset(int(x) for x in I)

    def ideals(self):
        """Every ideal, found by exhaustive closure over the ideal lattice."""
        start = frozenset({self.zero})
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for I in frontier:
                for x in range(len(self)):
                    if x not in I:
                        Ia = np.fromiter(I, dtype=np.int64)
                        J = frozenset(int(v) for v in np.unique(self.add[np.ix_(Ia, np.unique(self.mul[x]))]))
                        if J not in seen:
                            seen.add(J)
                            nxt.append(J)
            frontier = nxt
        return sorted(seen, key=lambda s: (len(s), sorted(s)))

    def maximal_ideals(self):
        proper = [I for I in self.ideals() if len(I) < len(self)]
        return [I for I in proper if not any(I < J for J in proper)]


def integers_mod(n):
    if n > RING_BOUND:
        raise BoundExceeded(f"|R| = {n} exceeds {RING_BOUND}")
    a = np.arange(n)
    return FiniteRing(tuple(str(i) for i in range(n)), (a[:, None] + a[None, :]) % n,
                      (a[:, None] * a[None, :]) % n, 0, 1 % n)


def field_ring(field: GF):
    if field.q > RING_BOUND:
        raise BoundExceeded(f"|R| = {field.q} exceeds {RING_BOUND}")
    return FiniteRing(tuple(str(a) for a in range(field.q)), field.add_table, field.mul_table, 0, 1)


def product_ring(*rings):
    size = 1
    for r in rings:
        size *= len(r)
    if size > RING_BOUND:
        raise BoundExceeded(f"|R| = {size} exceeds {RING_BOUND}")
    elems = list(product(*[range(len(r)) for r in rings]))
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    add = np.zeros((n, n), dtype=np.int64)
    mul = np.zeros((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            add[i, j] = idx[tuple(int(r.add[a, b]) for r, a, b in zip(rings, x, y))]
            mul[i, j] = idx[tuple(int(r.mul[a, b]) for r, a, b in zip(rings, x, y))]
    names = tuple("(" + ",".join(r.names[a] for r, a in zip(rings, e)) + ")" for e in elems)
    return FiniteRing(names, add, mul, idx[tuple(r.zero for r in rings)], idx[tuple(r.one for r in rings)])
