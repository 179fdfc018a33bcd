"""Finite hypergroups, hyperrings and hyperfields.

Tables are explicit: ``add[x][y]`` is a frozenset of element indices and
``mul[x][y]`` an index.  Index 0 is always the additive zero.  Audits are
exhaustive and report the first violation of each axiom, scanning triples in
lexicographic order.

Axiom ids:
  K1 x+y nonempty and x+y = y+x        R1 (R, +) passes K1-K5
  K2 (x+y)+z = x+(y+z)                 R2 (R, *) commutative monoid with 1
  K3 x+0 = {x}                         R3 u(v+w) = uv + uw
  K4 unique y with 0 in x+y            R4 u*0 = 0
  K5 x in y+z  =>  z in x+(-y)         R5 0 != 1
  HF nonzero elements form a group under *
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations, product
from math import gcd

from .errors import (LineTooShort, NotExtension, NotKVector, NotSubgroup)
from .galois import GF, prime_power
from .incidence import IncidenceGeometry
from .rings import FiniteRing, field_ring

AUDIT_BOUND = 64


@dataclass(frozen=True)
class HyperStructureTable:
    elements: tuple
    add: tuple  # tuple of tuples of frozensets
    mul: tuple | None = None
    one: int = 1
    zero: int = 0

    def __len__(self):
        return len(self.elements)

    def sum_set(self, xs, ys):
        out = set()
        for x in xs:
            for y in ys:
                out |= self.add[x][y]
        return frozenset(out)

    def negative(self, x):
        ys = [y for y in range(len(self)) if self.zero in self.add[x][y]]
        return ys[0] if len(ys) == 1 else None

    def nonzero(self):
        return [x for x in range(len(self)) if x != self.zero]

    def to_dict(self):
        d = {"elements": list(self.elements), "zero": self.zero, "one": self.one,
             "add": [[sorted(s) for s in row] for row in self.add]}
        d["mul"] = None if self.mul is None else [list(r) for r in self.mul]
        return d

    @classmethod
    def from_dict(cls, d):
        add = tuple(tuple(frozenset(s) for s in row) for row in d["add"])
        mul = None if d.get("mul") is None else tuple(tuple(r) for r in d["mul"])
        return cls(tuple(d["elements"]), add, mul, d.get("one", 1), d.get("zero", 0))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def relabel(self, perm):
        """Isomorphic copy with element i renamed perm[i] (perm must fix 0)."""
        n = len(self)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        add = tuple(tuple(frozenset(perm[z] for z in self.add[inv[a]][inv[b]]) for b in range(n))
                    for a in range(n))
        mul = None
        if self.mul is not None:
            mul = tuple(tuple(perm[self.mul[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        elems = tuple(self.elements[inv[a]] for a in range(n))
        return HyperStructureTable(elems, add, mul, perm[self.one], perm[self.zero])


def _report(violations, checked):
    return {"verdict": "PASS" if not violations else "FAIL",
            "checked": checked, "violations": violations}


def check_hypergroup(t):
    n = len(t)
    if n > AUDIT_BOUND:
        raise ValueError(f"audit limited to {AUDIT_BOUND} elements")
    A, z = t.add, t.zero
    viol = []

    def first(axiom, it):
        for w in it:
            viol.append({"axiom": axiom, "witness": list(w)})
            return

    first("K1", ((x, y) for x in range(n) for y in range(n)
                 if not A[x][y] or A[x][y] != A[y][x]))
    first("K2", ((x, y, w) for x in range(n) for y in range(n) for w in range(n)
                 if t.sum_set([x], A[y][w]) != t.sum_set(A[x][y], [w])))
    first("K3", ((x,) for x in range(n) if A[x][z] != frozenset({x})))
    first("K4", ((x,) for x in range(n)
                 if sum(1 for y in range(n) if z in A[x][y]) != 1))
    negs = [t.negative(y) for y in range(n)]
    first("K5", ((x, y, w) for x in range(n) for y in range(n) for w in range(n)
                 if x in A[y][w] and (negs[y] is None or w not in A[x][negs[y]])))
    return _report(viol, ["K1", "K2", "K3", "K4", "K5"])


def check_hyperring(t):
    base = check_hypergroup(t)
    viol = []
    if base["verdict"] != "PASS":
        viol.append({"axiom": "R1", "witness": [v["axiom"] for v in base["violations"]]})
    n = len(t)
    M, z, one = t.mul, t.zero, t.one
    if M is None:
        viol.append({"axiom": "R2", "witness": ["no multiplication"]})
        return _report(base["violations"] + viol, base["checked"] + ["R1", "R2", "R3", "R4", "R5"])

    def first(axiom, it):
        for w in it:
            viol.append({"axiom": axiom, "witness": list(w)})
            return

    first("R2", ((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                 if M[a][b] != M[b][a] or M[M[a][b]][c] != M[a][M[b][c]] or M[a][one] != a))
    first("R3", ((u, v, w) for u in range(n) for v in range(n) for w in range(n)
                 if frozenset(M[u][x] for x in t.add[v][w]) != t.add[M[u][v]][M[u][w]]))
    first("R4", ((u,) for u in range(n) if M[u][z] != z or M[z][u] != z))
    if z == one:
        viol.append({"axiom": "R5", "witness": [z]})
    return _report(base["violations"] + viol, base["checked"] + ["R1", "R2", "R3", "R4", "R5"])


def check_hyperfield(t):
    rep = check_hyperring(t)
    if t.mul is not None:
        nz = t.nonzero()
        for x in nz:
            row = [t.mul[x][y] for y in nz]
            if t.zero in row or t.one not in row:
                rep["violations"].append({"axiom": "HF", "witness": [x]})
                break
    rep["checked"] = rep["checked"] + ["HF"]
    rep["verdict"] = "PASS" if not rep["violations"] else "FAIL"
    return rep


def krasner():
    add = ((frozenset({0}), frozenset({1})), (frozenset({1}), frozenset({0, 1})))
    mul = ((0, 0), (0, 1))
    return HyperStructureTable(("0", "1"), add, mul, 1, 0)


# -- quotients R/G -----------------------------------------------------------

def quotient_hyperring(R, G):
    """R/G for a finite ring R (FiniteRing or GF) and a subgroup G of its units."""
    if isinstance(R, GF):
        R = field_ring(R)
    G = sorted(set(G))
    units = set(R.units())
    if not G or not set(G) <= units:
        raise NotSubgroup("G must be a nonempty set of units")
    if any(int(R.mul[a, b]) not in G for a in G for b in G):
        raise NotSubgroup("G is not closed under multiplication")
    orbit_of = {}
    orbits = []
    order = [R.zero, R.one] + [x for x in range(len(R)) if x not in (R.zero, R.one)]
    for x in order:
        if x in orbit_of:
            continue
        orb = sorted({int(R.mul[x, g]) for g in G})
        for y in orb:
            orbit_of[y] = len(orbits)
        orbits.append(orb)
    n = len(orbits)
    add = []
    for i in range(n):
        row = []
        a = orbits[i][0]
        for j in range(n):
            b = orbits[j][0]
            s = {orbit_of[int(R.add[R.mul[a, g], R.mul[b, h]])] for g in G for h in G}
            row.append(frozenset(s))
        add.append(tuple(row))
    mul = tuple(tuple(orbit_of[int(R.mul[orbits[i][0], orbits[j][0]])] for j in range(n))
                for i in range(n))
    names = tuple("{" + ",".join(R.names[x] for x in o) + "}" for o in orbits)
    one = orbit_of[R.one]
    return HyperStructureTable(names, tuple(add), mul, one, 0)


def field_quotient(p, m, d=1):
    """F_{p^m} / F_{p^d}^x."""
    F = GF(p, m)
    G = [a for a in F.subfield(d) if a]
    return quotient_hyperring(F, G)


def krasner_embedding(R, G):
    """Both sides of 'R/G contains K  iff  {0} u G is a subfield'."""
    if isinstance(R, GF):
        R = field_ring(R)
    t = quotient_hyperring(R, G)
    contains = t.add[t.one][t.one] == frozenset({t.zero, t.one})
    S = set(G) | {R.zero}
    subfield = all(int(R.add[a, b]) in S for a in S for b in S)
    return {"contains_K": contains, "subfield": subfield}


# -- K-vector spaces and projective geometry --------------------------------

def is_k_vector_space(t):
    return all(t.add[x][x] == frozenset({t.zero, x}) for x in t.nonzero())


def geometry_from_hypergroup(t):
    if not is_k_vector_space(t):
        raise NotKVector("x + x != {0, x} for some x")
    pts = t.nonzero()
    lines = [t.add[x][y] | {x, y} for x in pts for y in pts if x < y]
    return IncidenceGeometry.build(pts, lines)


def hypergroup_from_geometry(g):
    if any(len(l) < 4 for l in g.lines):
        raise LineTooShort("every line needs at least 4 points")
    pts = list(g.points)
    idx = {p: i + 1 for i, p in enumerate(pts)}
    n = len(pts) + 1
    line_of = {}
    for l in g.lines:
        for a in l:
            for b in l:
                if a != b:
                    line_of[(a, b)] = l
    add = [[frozenset() for _ in range(n)] for _ in range(n)]
    for x in range(n):
        add[x][0] = add[0][x] = frozenset({x})
    for a in pts:
        ia = idx[a]
        add[ia][ia] = frozenset({0, ia})
        for b in pts:
            if a != b:
                add[ia][idx[b]] = frozenset(idx[c] for c in line_of[(a, b)] if c not in (a, b))
    names = ("0",) + tuple(str(p) for p in pts)
    return HyperStructureTable(names, tuple(tuple(r) for r in add), None, 1, 0)


# -- K[G] -----------------------------------------------------------------------

def abelian_elements(factors):
    return list(product(*[range(n) for n in factors]))


def kG_hyperfield(factors):
    """K[G] = G u {0} with the single-line hyperaddition."""
    factors = [n for n in factors if n > 1]
    elems = abelian_elements(factors)
    idx = {e: i + 1 for i, e in enumerate(elems)}
    n = len(elems) + 1
    H = set(range(n))
    add = [[frozenset() for _ in range(n)] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x == 0 or y == 0:
                add[x][y] = frozenset({x + y})
            elif x == y:
                add[x][y] = frozenset({0, x})
            else:
                add[x][y] = frozenset(H - {0, x, y})
    mul = [[0] * n for _ in range(n)]
    for a in elems:
        for b in elems:
            mul[idx[a]][idx[b]] = idx[tuple((u + v) % m for u, v, m in zip(a, b, factors))]
    names = ("0",) + tuple("e" if not any(e) else "g" + "".join(map(str, e)) for e in elems)
    t = HyperStructureTable(names, tuple(tuple(r) for r in add), tuple(tuple(r) for r in mul), 1, 0)
    return t, check_hyperfield(t)


def abelian_groups_up_to(order):
    """Invariant-factor lists n1 | n2 | ... of every abelian group of order <= ``order``."""
    out = []

    def rec(n, prev, acc):
        if n == 1:
            out.append(tuple(reversed(acc)))
            return
        for d in range(2, n + 1):
            if n % d == 0 and (prev is None or prev % d == 0):
                rec(n // d, d, acc + [d])

    for n in range(1, order + 1):
        rec(n, None, [])
    return [tuple(sorted(g)) for g in out]


def kg_survey(max_order=12):
    rows = []
    for g in sorted(set(abelian_groups_up_to(max_order)), key=lambda g: (_prod(g), g)):
        _, rep = kG_hyperfield(g)
        rows.append({"group": "x".join(f"Z{n}" for n in g) or "1",
                     "order": _prod(g), "verdict": rep["verdict"],
                     "violations": sorted({v["axiom"] for v in rep["violations"]})})
    return rows


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


# -- isomorphisms and classification -----------------------------------------

def _cyclic_generator(t):
    nz = t.nonzero()
    N = len(nz)
    for a in nz:
        x, k = a, 1
        while x != t.one:
            x = t.mul[x][a]
            k += 1
            if k > N:
                break
        if k == N:
            return a
    return None


def _powers(t, a):
    out = [t.one]
    for _ in range(len(t) - 2):
        out.append(t.mul[out[-1]][a])
    return out


def _preserves(t1, t2, f):
    n = len(t1)
    for x in range(n):
        for y in range(n):
            if frozenset(f[z] for z in t1.add[x][y]) != t2.add[f[x]][f[y]]:
                return False
            if t1.mul is not None and f[t1.mul[x][y]] != t2.mul[f[x]][f[y]]:
                return False
    return True


def find_isomorphism(t1, t2):
    """An explicit isomorphism of hyperfields (list f with f[i] in t2), or None."""
    if len(t1) != len(t2):
        return None
    n = len(t1)
    g1, g2 = _cyclic_generator(t1), _cyclic_generator(t2)
    if g1 is not None and g2 is not None:
        N = n - 1
        p1, p2 = _powers(t1, g1), _powers(t2, g2)
        for j in range(1, N + 1):
            if gcd(j, N) != 1:
                continue
            f = [0] * n
            f[t1.zero] = t2.zero
            for i, x in enumerate(p1):
                f[x] = p2[(i * j) % N]
            if _preserves(t1, t2, f):
                return f
        return None
    if (g1 is None) != (g2 is None) or n > 9:
        return None
    rest1 = [x for x in range(n) if x not in (t1.zero, t1.one)]
    rest2 = [x for x in range(n) if x not in (t2.zero, t2.one)]
    for perm in permutations(rest2):
        f = [0] * n
        f[t1.zero], f[t1.one] = t2.zero, t2.one
        for a, b in zip(rest1, perm):
            f[a] = b
        if _preserves(t1, t2, f):
            return f
    return None


def classify_extension(t, max_q=9):
    """Which case of the finite-extension classification ``t`` falls into."""
    rep = check_hyperfield(t)
    if rep["verdict"] != "PASS":
        raise NotExtension("not a hyperfield")
    if t.add[t.one][t.one] != frozenset({t.zero, t.one}):
        raise NotExtension("does not contain the Krasner hyperfield")
    if len(t) == 2:
        return {"case": "ii", "detail": "K itself (degenerate F_q/F_q^x)", "q": None, "m": 1}
    geom = geometry_from_hypergroup(t)
    if len(geom.lines) == 1:
        return {"case": "i", "detail": "single line: K[G]", "points": len(geom.points)}
    npts = len(t) - 1
    for q in range(2, max_q + 1):
        if prime_power(q) is None:
            continue
        m = 2
        while (q ** m - 1) // (q - 1) <= npts:
            if (q ** m - 1) // (q - 1) == npts:
                p, k = prime_power(q)
                cand = field_quotient(p, k * m, k)
                f = find_isomorphism(t, cand)
                if f is not None:
                    return {"case": "ii", "q": q, "m": m, "isomorphism": f}
            m += 1
    return {"case": "iii-candidate", "geometry": geom.to_dict()}
