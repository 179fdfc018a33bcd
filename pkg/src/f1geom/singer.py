"""Difference sets, projective planes from groups, and Singer actions.

Groups come in two flavours.  ``FiniteGroup`` carries a full multiplication
table and is what difference-set routines use.  ``AbelianSpec`` describes
Z^r x Z_{n1} x ... and may be infinite; the greedy extension algorithm works on
it through explicit element tuples.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from . import kernels
from .errors import (BoundExceeded, InvolutionObstruction, NotTransitive, ParseError,
                     SearchExhausted, StabilizerNotCyclic)
from .galois import GF, prime_power
from .incidence import IncidenceGeometry, check_plane

SEARCH_BOUND = 40
PERM_BOUND = 10 ** 4
TABLE_BOUND = 2000
SINGER_Q_BOUND = 16


# -- groups -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple
    table: np.ndarray  # table[a, b] = index of a*b
    identity: int
    name: str = ""
    additive: bool = False

    def __len__(self):
        return len(self.elements)

    @property
    def inverse(self):
        return np.argmax(self.table == self.identity, axis=1)

    @property
    def quotient_table(self):
        """q[a, b] = a * b^-1."""
        return self.table[:, self.inverse]

    def index(self, x):
        return self.elements.index(x)

    def label(self, i):
        e = self.elements[i]
        return e[0] if isinstance(e, tuple) and len(e) == 1 else e

    def is_abelian(self):
        return bool((self.table == self.table.T).all())


def abelian_group(factors, name=None):
    factors = tuple(int(n) for n in factors)
    elems = list(product(*[range(n) for n in factors])) if factors else [()]
    if len(elems) > TABLE_BOUND:
        raise BoundExceeded(f"group of order {len(elems)} exceeds {TABLE_BOUND}")
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = idx[tuple((x + y) % m for x, y, m in zip(a, b, factors))]
    return FiniteGroup(tuple(elems), table, 0, name or "x".join(f"Z{m}" for m in factors), True)


def cyclic_group(n):
    return abelian_group((n,))


def perm_compose(a, b):
    """a after b."""
    return tuple(a[i] for i in b)


def perm_closure(gens, degree, bound=PERM_BOUND):
    ident = tuple(range(degree))
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_compose(g, x)
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise BoundExceeded(f"group closure exceeds {bound} elements")
        frontier = nxt
    return sorted(order)


def permutation_group(gens, degree, name="perm"):
    elems = perm_closure(gens, degree, TABLE_BOUND)
    idx = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = np.array([[idx[perm_compose(a, b)] for b in elems] for a in elems], dtype=np.int64)
    return FiniteGroup(tuple(elems), table, idx[tuple(range(degree))], name, False)


def parse_cycles(text, degree=None):
    """Generators in cycle notation on letters 0..degree-1, separated by ';'.

    Example: ``(0 1 2); (0 1)``.
    """
    gens_cycles = []
    top = -1
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        cycles = re.findall(r"\(([^()]*)\)", part)
        if not cycles or re.sub(r"\([^()]*\)", "", part).strip():
            raise ParseError(f"bad cycle notation: {part!r}")
        cs = []
        for c in cycles:
            pts = [int(x) for x in re.split(r"[\s,]+", c.strip()) if x]
            if len(set(pts)) != len(pts):
                raise ParseError(f"repeated letter in cycle ({c})")
            top = max([top] + pts)
            cs.append(pts)
        gens_cycles.append(cs)
    degree = degree if degree is not None else top + 1
    gens = []
    for cs in gens_cycles:
        p = list(range(degree))
        for c in cs:
            for a, b in zip(c, c[1:] + c[:1]):
                if a >= degree or b >= degree:
                    raise ParseError(f"letter {max(a, b)} outside 0..{degree - 1}")
                p[a] = b
        gens.append(tuple(p))
    return gens, degree


@dataclass(frozen=True)
class AbelianSpec:
    rank: int = 0
    torsion: tuple = ()

    def __str__(self):
        parts = ([f"Z^{self.rank}"] if self.rank else []) + [f"Z{n}" for n in self.torsion]
        return "x".join(parts) or "Z1"

    @property
    def dim(self):
        return self.rank + len(self.torsion)

    @property
    def finite(self):
        return self.rank == 0

    def zero(self):
        return (0,) * self.dim

    def add(self, a, b):
        out = [x + y for x, y in zip(a, b)]
        for k, n in enumerate(self.torsion):
            out[self.rank + k] %= n
        return tuple(out)

    def neg(self, a):
        return self.add(self.zero(), tuple(-x for x in a))

    def sub(self, a, b):
        return self.add(a, tuple(-x for x in b))

    def to_group(self):
        if not self.finite:
            raise ValueError("group is infinite")
        return abelian_group(self.torsion, str(self))


def parse_group(text):
    """``Z7``, ``Z3xZ9``, ``Z^1`` (or ``Z``), ``Z^2xZ3``."""
    rank, tors = 0, []
    for part in text.strip().split("x"):
        part = part.strip()
        m = re.fullmatch(r"Z(?:\^(\d+))?", part)
        if m:
            rank += int(m.group(1) or 1)
            continue
        m = re.fullmatch(r"Z_?(\d+)", part)
        if m and int(m.group(1)) >= 1:
            if int(m.group(1)) > 1:
                tors.append(int(m.group(1)))
            continue
        raise ParseError(f"bad group literal {text!r}")
    return AbelianSpec(rank, tuple(tors))


def has_involutions(g):
    """(bool, witness) for an AbelianSpec or FiniteGroup."""
    if isinstance(g, AbelianSpec):
        for k, n in enumerate(g.torsion):
            if n % 2 == 0:
                w = [0] * g.dim
                w[g.rank + k] = n // 2
                return True, tuple(w)
        return False, None
    for i in range(len(g)):
        if i != g.identity and g.table[i, i] == g.identity:
            return True, g.label(i)
    return False, None


# -- difference sets ----------------------------------------------------------

def _indices(g, S):
    out = []
    for s in S:
        key = tuple(s) if isinstance(s, (list, tuple)) else (int(s),)
        if key not in g.elements:
            raise ValueError(f"{s!r} is not an element of {g.name}")
        out.append(g.elements.index(key))
    return out


def difference_audit(g, S):
    idx = _indices(g, S)
    counts = kernels.difference_counts(np.array(idx), g.quotient_table)
    collisions = [g.label(i) for i in range(len(g)) if counts[i] > 1]
    missing = [g.label(i) for i in range(len(g)) if i != g.identity and counts[i] == 0]
    injective = not collisions
    return {"injective": injective, "perfect": injective and not missing,
            "missing": missing, "collisions": collisions}


def plane_from_difference_set(g, S):
    """Points and lines are group elements; x lies on y iff x y^-1 in S."""
    idx = set(_indices(g, S))
    lines = [tuple(sorted(int(g.table[s, y]) for s in idx)) for y in range(len(g))]
    return IncidenceGeometry(tuple(range(len(g))), tuple(lines))


def right_translation_audit(g, plane):
    """Right translation x -> xg permutes lines and is sharply transitive on points."""
    lines = set(plane.lines)
    preserved = all(tuple(sorted(int(g.table[x, t]) for x in l)) in lines
                    for t in range(len(g)) for l in plane.lines)
    images = {int(g.table[g.identity, t]) for t in range(len(g))}
    fixed = [g.label(t) for t in range(len(g)) if t != g.identity
             and any(g.table[x, t] == x for x in range(len(g)))]
    return {"automorphisms": preserved, "sharply_transitive": len(images) == len(g) and not fixed}


def plane_report(g, S):
    plane = plane_from_difference_set(g, S)
    rep = check_plane(plane)
    rep["translation"] = right_translation_audit(g, plane)
    rep["difference_set"] = [g.label(i) for i in sorted(_indices(g, S))]
    return rep


def classical_singer(q, basis=None):
    """Perfect difference set in Z_{q^2+q+1} from the multiplicative group of F_{q^3}.

    ``basis`` picks the 2-dimensional F_q-subspace (codes of F_{q^3}); default {1, t}.
    """
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    if q > SINGER_Q_BOUND:
        raise BoundExceeded(f"q = {q} exceeds {SINGER_Q_BOUND}")
    p, k = pk
    F = GF(p, 3 * k)
    Fq = F.subfield(k)
    u, v = basis if basis is not None else (1, p)
    n = q * q + q + 1
    S = set()
    for a in Fq:
        for b in Fq:
            x = F.add(F.mul(a, u), F.mul(b, v))
            if x:
                S.add(F.log(x) % n)
    if len(S) != q + 1:
        raise ValueError("basis vectors are not F_q-independent")
    return cyclic_group(n), sorted(S)


def translate_class(g, S):
    """Lexicographically least right translate of S (as sorted index tuple)."""
    return [g.label(i) for i in _canon(g, _indices(g, S), [list(range(len(g)))])]


def _canon(g, idx, autos):
    best = None
    for a in autos:
        img = [a[i] for i in idx]
        for t in range(len(g)):
            cand = tuple(sorted(int(g.table[s, t]) for s in img))
            if best is None or cand < best:
                best = cand
    return best


def _cyclic_automorphisms(g):
    n = len(g)
    if not g.additive or len(g.elements[0]) != 1:
        raise ValueError("affine equivalence is implemented for cyclic groups only")
    return [[(u * i) % n for i in range(n)] for u in range(1, n) if gcd(u, n) == 1]


def search_difference_set(g, size, equivalence="translate"):
    """All perfect difference sets of the given size, one per equivalence class.

    ``equivalence`` is ``translate`` (right translates) or ``affine`` (translates
    and group automorphisms; cyclic groups only).
    """
    n = len(g)
    if n > SEARCH_BOUND:
        raise BoundExceeded(f"|G| = {n} exceeds {SEARCH_BOUND}")
    if equivalence == "translate":
        autos = [list(range(n))]
    elif equivalence == "affine":
        autos = _cyclic_automorphisms(g)
    else:
        raise ValueError(f"unknown equivalence {equivalence!r}")
    if size * (size - 1) != n - 1:
        return []
    Q = g.quotient_table
    found = set()
    chosen = [g.identity]
    used = np.zeros(n, dtype=bool)

    def rec(start):
        if len(chosen) == size:
            found.add(_canon(g, chosen, autos))
            return
        for x in range(start, n):
            if x == g.identity:
                continue
            new = []
            ok = True
            for s in chosen:
                for d in (int(Q[x, s]), int(Q[s, x])):
                    if used[d] or d in new:
                        ok = False
                        break
                    new.append(d)
                if not ok:
                    break
            if not ok:
                continue
            for d in new:
                used[d] = True
            chosen.append(x)
            rec(x + 1)
            chosen.pop()
            for d in new:
                used[d] = False

    rec(0)
    return [[g.label(i) for i in c] for c in sorted(found)]


def free_action_audit(perms, points=None):
    """Whether the group generated by ``perms`` acts freely; orbit count."""
    degree = len(perms[0])
    elems = perm_closure(perms, degree)
    ident = tuple(range(degree))
    fixers = [e for e in elems if e != ident and any(e[i] == i for i in range(degree))]
    seen, orbits = set(), 0
    for x in range(degree):
        if x not in seen:
            orbits += 1
            seen |= {e[x] for e in elems}
    return {"free": not fixers, "orbits": orbits, "order": len(elems)}


def divisibility_check(p, i, j):
    a = p ** (2 * i) + p ** i + 1
    b = p ** (2 * j) + p ** j + 1
    return {"p": p, "i": i, "j": j,
            "applies": j % i == 0 and gcd(j // i, 3) == 1,
            "divisor": a, "value": b, "divides": b % a == 0}


# -- greedy extension over Z^r x odd torsion ----------------------------------

def _spiral_rank(z):
    return 2 * z if z >= 0 else -2 * z - 1


def _balanced(x, n):
    x %= n
    return x - n if x > n // 2 else x


def spiral(spec, radius):
    """Elements with |Z-coordinates| <= radius in canonical spiral order."""
    ranges = [range(-radius, radius + 1)] * spec.rank
    ranges += [range(-(n // 2), n // 2 + 1) for n in spec.torsion]
    elems = list(product(*ranges))
    elems = [e[:spec.rank] + tuple(x % n for x, n in zip(e[spec.rank:], spec.torsion)) for e in elems]

    def key(e):
        bal = list(e[:spec.rank]) + [_balanced(x, n) for x, n in zip(e[spec.rank:], spec.torsion)]
        ranks = [_spiral_rank(z) for z in bal]
        return (max(ranks, default=0), ranks)

    return sorted(set(elems), key=key)


@dataclass
class AbelianWindowState:
    spec: AbelianSpec
    S: list = field(default_factory=list)
    D: set = field(default_factory=set)
    window: int = 8
    steps: list = field(default_factory=list)

    def to_dict(self):
        fmt = (lambda e: e[0]) if self.spec.dim == 1 else list
        return {"group": str(self.spec), "window": self.window,
                "S": [fmt(e) for e in sorted(self.S)],
                "steps": [{"d": fmt(d), "added": [fmt(x) for x in xs]} for d, xs in self.steps]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _as_elem(spec, d):
    d = (d,) if isinstance(d, int) else tuple(d)
    if len(d) != spec.dim:
        raise ValueError(f"element {d} has wrong length for {spec}")
    return spec.add(spec.zero(), d)


def _new_differences(spec, S, D, x, y):
    """Differences created by adding {x, y}, or None on any collision."""
    new = []
    for a, b in [(x, y)] + [(u, s) for u in (x, y) for s in S]:
        for d in (spec.sub(a, b), spec.sub(b, a)):
            if not any(d) or d in D or d in new:
                return None
            new.append(d)
    return new


def abelian_extend(state, d, max_window=1 << 12):
    """Add the first spiral pair {x, x - d} keeping the difference map injective."""
    spec = state.spec
    inv, w = has_involutions(spec)
    if inv:
        raise InvolutionObstruction(f"{spec} contains the involution {w}")
    d = _as_elem(spec, d)
    if not any(d):
        raise ValueError("target difference must be nonzero")
    if d in state.D:
        return state
    window = state.window
    members = set(state.S)
    while True:
        for x in spiral(spec, window):
            y = spec.sub(x, d)
            if x in members or y in members:
                continue
            new = _new_differences(spec, state.S, state.D, x, y)
            if new is None:
                continue
            state.S.extend([x, y])
            state.D.update(new)
            state.window = window
            state.steps.append((d, (x, y)))
            return state
        if spec.finite or window >= max_window:
            raise SearchExhausted(f"no valid pair for d={d} within window {window}")
        window *= 2


def cover_window(spec, N, window=8):
    """Greedily realize every nonzero target in the ball of radius N."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    inv, w = has_involutions(spec)
    if inv:
        raise InvolutionObstruction(f"{spec} contains the involution {w}")
    state = AbelianWindowState(spec, window=window)
    for d in spiral(spec, N):
        if any(d) and d not in state.D:
            abelian_extend(state, d)
    return state


def injective_differences(spec, S):
    seen = set()
    for a in S:
        for b in S:
            if a != b:
                d = spec.sub(a, b)
                if d in seen:
                    return False
                seen.add(d)
    return True


# -- Singer groups of F1-projective spaces -----------------------------------

def _is_cyclic(elems, degree):
    n = len(elems)
    ident = tuple(range(degree))
    for e in elems:
        x, k = e, 1
        while x != ident:
            x = perm_compose(e, x)
            k += 1
        if k == n:
            return e
    return None


def _sharply_transitive(actions, npoints):
    """actions: list of point permutations, one per group element."""
    if len(actions) != npoints:
        return False
    return sorted(a[0] for a in actions) == list(range(npoints))


def f1_singer(gens, degree):
    """Singer action of a transitive group with cyclic point stabilizer.

    Flagged points are the group elements; the class of g is the letter g(0),
    and the stabilizer generator acts on each class by right multiplication.
    """
    elems = perm_closure(gens, degree)
    orbit = {e[0] for e in elems}
    if len(orbit) != degree:
        raise NotTransitive(f"orbit of 0 has {len(orbit)} of {degree} letters")
    stab = [e for e in elems if e[0] == 0]
    nu = _is_cyclic(stab, degree)
    if nu is None:
        raise StabilizerNotCyclic(f"stabilizer of order {len(stab)} is not cyclic")
    n = len(stab)
    idx = {e: i for i, e in enumerate(elems)}
    ident = idx[tuple(range(degree))]
    actions = [[idx[perm_compose(h, g)] for g in elems] for h in elems]
    rotation = [idx[perm_compose(g, nu)] for g in elems]
    cls = [g[0] for g in elems]
    actions_from_identity = [a[ident] for a in actions]
    sharp = len(set(actions_from_identity)) == len(elems) and all(
        a[i] != i for h, a in enumerate(actions) if h != ident for i in range(len(elems)))
    classes_ok = all(len({cls[a[i]] for i in range(len(elems)) if cls[i] == c}) == 1
                     for a in actions for c in range(degree))
    rotation_free = all(cls[rotation[i]] == cls[i] for i in range(len(elems)))
    rot_orbits = set()
    for i in range(len(elems)):
        orb, x = set(), i
        while x not in orb:
            orb.add(x)
            x = rotation[x]
        rot_orbits.add(frozenset(orb))
    rotation_free = rotation_free and all(len(o) == n for o in rot_orbits)
    compatible = all(a[rotation[i]] == rotation[a[i]] for a in actions for i in range(len(elems)))
    return {"letters": degree, "m": degree - 1, "order": len(elems), "transitive": True,
            "stabilizer_cyclic": True, "n": n, "points": degree * n,
            "sharply_transitive": sharp and len(elems) == degree * n,
            "classes_permuted": classes_ok, "rotation_free": rotation_free,
            "rotation_compatible": compatible}


def first_construction(gens, degree, n):
    """S(n): a regular S on the letters times a diagonal C_n, acting on letters x Z_n."""
    elems = perm_closure(gens, degree)
    if len(elems) != degree or len({e[0] for e in elems}) != degree:
        raise NotTransitive("first construction needs a sharply transitive group on the letters")

    def act(e, k):
        return tuple(e[l] * n + (c + k) % n for l in range(degree) for c in range(n))

    return [act(e, k) for e in elems for k in range(n)]


def first_construction_embedding(gens, degree, i, j):
    """Check S(i) <= S(j) through the point map (l, c) -> (l, c * j/i)."""
    applies = j % i == 0
    out = {"i": i, "j": j, "applies": applies}
    Si = first_construction(gens, degree, i)
    Sj = first_construction(gens, degree, j)
    out["sharply_transitive_i"] = _sharply_transitive(Si, degree * i)
    out["sharply_transitive_j"] = _sharply_transitive(Sj, degree * j)
    if not applies:
        out["embedded"] = False
        return out
    r = j // i
    phi = [l * j + c * r for l in range(degree) for c in range(i)]
    Sj_set = set(Sj)
    ok = True
    for e in Si:
        # the element of S(j) agreeing with e on the embedded points
        img = {phi[x]: phi[e[x]] for x in range(degree * i)}
        if not any(all(s[a] == b for a, b in img.items()) for s in Sj_set):
            ok = False
            break
    out["embedded"] = ok
    return out
