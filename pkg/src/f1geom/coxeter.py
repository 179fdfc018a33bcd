"""Spherical Coxeter groups: recognition, enumeration, length polynomials.

Groups are enumerated by breadth-first search in a faithful representation,
so the BFS depth of an element is its length.  Permutation models serve A, B
and D, the dihedral model serves I2(m), and every other type acts on the
fundamental-weight coordinates of a regular vector.  Those coordinates live in
Z[phi] (pairs a + b*phi, phi^2 = phi + 1), so H3 and H4 stay exact.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .counting import poly_mul
from .errors import BoundExceeded, Disconnected, InexactDivision, NotSpherical, ParseError
from .galois import GF, prime_power

ENUM_BOUND = 10 ** 6
FLAG_Q_BOUND = 4
FLAG_N_BOUND = 3

DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}


def degrees(label):
    if label in DEGREES:
        return DEGREES[label]
    m = re.fullmatch(r"([ABD])(\d+)", label)
    if m:
        fam, n = m.group(1), int(m.group(2))
        if fam == "A":
            return tuple(range(2, n + 2))
        if fam == "B":
            return tuple(range(2, 2 * n + 1, 2))
        return tuple(range(2, 2 * n - 1, 2)) + (n,)
    m = re.fullmatch(r"I2\((\d+)\)", label)
    if m:
        return (2, int(m.group(1)))
    if label == "A0":
        return ()
    raise ValueError(f"unknown type {label}")


@dataclass(frozen=True)
class CoxeterDiagram:
    matrix: tuple  # tuple of tuples, m_ii = 1

    @property
    def rank(self):
        return len(self.matrix)

    def __post_init__(self):
        n = len(self.matrix)
        for i in range(n):
            if len(self.matrix[i]) != n or self.matrix[i][i] != 1:
                raise ParseError("Coxeter matrix must be square with 1 on the diagonal")
            for j in range(n):
                if i != j and (self.matrix[i][j] != self.matrix[j][i] or self.matrix[i][j] < 2):
                    raise ParseError(f"entry ({i},{j}) must be symmetric and >= 2")

    def edges(self):
        return [(i, j, self.matrix[i][j]) for i in range(self.rank)
                for j in range(i + 1, self.rank) if self.matrix[i][j] >= 3]

    def components(self):
        parent = list(range(self.rank))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.edges():
            parent[find(i)] = find(j)
        groups = {}
        for i in range(self.rank):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def restrict(self, nodes):
        nodes = sorted(nodes)
        return CoxeterDiagram(tuple(tuple(self.matrix[i][j] for j in nodes) for i in nodes))

    @property
    def label(self):
        return recognize(self).label


def _from_edges(n, edges):
    M = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, j, m in edges:
        M[i][j] = M[j][i] = m
    return CoxeterDiagram(tuple(tuple(r) for r in M))


def standard_diagram(label):
    """Diagram with Bourbaki node numbering (0-based here)."""
    m = re.fullmatch(r"([A-HI])(\d+)(?:\((\d+)\))?", label.strip())
    if not m:
        raise ParseError(f"bad Coxeter type {label!r}")
    fam, n, par = m.group(1), int(m.group(2)), m.group(3)
    path = [(i, i + 1, 3) for i in range(n - 1)]
    if fam == "A" and n >= 1:
        return _from_edges(n, path)
    if fam in "BC" and n >= 2:
        return _from_edges(n, path[:-1] + [(n - 2, n - 1, 4)])
    if fam == "D" and n >= 4:
        return _from_edges(n, path[:-1] + [(n - 3, n - 1, 3)])
    if fam == "E" and n in (6, 7, 8):
        return _from_edges(n, [(0, 2, 3), (1, 3, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)])
    if fam == "F" and n == 4:
        return _from_edges(4, [(0, 1, 3), (1, 2, 4), (2, 3, 3)])
    if fam == "G" and n == 2:
        return _from_edges(2, [(0, 1, 6)])
    if fam == "H" and n in (3, 4):
        return _from_edges(n, [(0, 1, 5)] + [(i, i + 1, 3) for i in range(1, n - 1)])
    if fam == "I" and n == 2 and par is not None and int(par) >= 2:
        return _from_edges(2, [(0, 1, int(par))] if int(par) >= 3 else [])
    raise ParseError(f"bad Coxeter type {label!r}")


def parse_diagram(text):
    text = text.strip()
    if text.startswith("matrix"):
        try:
            rows = json.loads(text[len("matrix"):].strip())
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad matrix literal: {exc}") from exc
        return CoxeterDiagram(tuple(tuple(int(x) for x in r) for r in rows))
    return standard_diagram(text)


@dataclass(frozen=True)
class Recognition:
    label: str
    family: str
    rank: int
    order: tuple  # input node indices in standard numbering


def recognize(d):
    n = d.rank
    if n == 0:
        return Recognition("A0", "A", 0, ())
    if len(d.components()) > 1:
        raise Disconnected("diagram is disconnected; split it into components")
    edges = d.edges()
    if len(edges) != n - 1:
        raise NotSpherical("diagram contains a cycle")
    adj = {i: [] for i in range(n)}
    for i, j, m in edges:
        adj[i].append(j)
        adj[j].append(i)
    M = d.matrix
    if n == 1:
        return Recognition("A1", "A", 1, (0,))
    if n == 2:
        m = M[0][1]
        label = {3: "A2", 4: "B2"}.get(m, f"I2({m})")
        return Recognition(label, label[0], 2, (0, 1))
    deg = {i: len(adj[i]) for i in range(n)}
    if max(deg.values()) > 3:
        raise NotSpherical("a node has more than three neighbours")
    branch = [i for i in range(n) if deg[i] == 3]
    if not branch:
        ends = sorted(i for i in range(n) if deg[i] == 1)
        path = _walk(adj, ends[0])
        labels = [M[a][b] for a, b in zip(path, path[1:])]
        if labels[0] != 3 and labels[-1] == 3:
            path.reverse()
            labels.reverse()
        if all(x == 3 for x in labels):
            return Recognition(f"A{n}", "A", n, tuple(path))
        if labels[-1] == 4 and all(x == 3 for x in labels[:-1]):
            return Recognition(f"B{n}", "B", n, tuple(path))
        if n == 4 and labels[1] == 4 and labels[0] == labels[2] == 3:
            return Recognition("F4", "F", 4, tuple(path))
        if n in (3, 4) and labels[-1] == 5 and all(x == 3 for x in labels[:-1]):
            return Recognition(f"H{n}", "H", n, tuple(reversed(path)))
        raise NotSpherical(f"path with labels {labels} is not spherical")
    if len(branch) > 1 or any(m != 3 for _, _, m in edges):
        raise NotSpherical("branched diagram outside the D/E list")
    c = branch[0]
    arms = []
    for start in adj[c]:
        arm, prev, x = [start], c, start
        while deg[x] == 2:
            nxt = [y for y in adj[x] if y != prev][0]
            prev, x = x, nxt
            arm.append(x)
        arms.append(arm)
    arms.sort(key=lambda a: (len(a), a))
    lens = tuple(len(a) for a in arms)
    if lens[:2] == (1, 1):
        long = list(reversed(arms[2]))
        return Recognition(f"D{n}", "D", n, tuple(long + [c, arms[0][0], arms[1][0]]))
    if lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
        a1, a2, a3 = arms
        # Bourbaki: 1 - 3 - 4 - 5 - ..., with 2 attached to 4
        order = [a2[1], a1[0], a2[0], c] + a3
        return Recognition(f"E{n}", "E", n, tuple(order))
    raise NotSpherical(f"branched diagram with arms {lens} is not spherical")


def _walk(adj, start):
    path, prev = [start], None
    while True:
        nxt = [y for y in adj[path[-1]] if y != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


# -- representations ----------------------------------------------------------

def _perm_generators(rec):
    """Signed-permutation generators for A/B/D in standard numbering.

    A_n acts on n+1 letters; B_n, D_n act on 2n points (i and i+n = -i).
    """
    n = rec.rank
    if rec.family == "A":
        gens = []
        for i in range(n):
            p = list(range(n + 1))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(tuple(p))
        return gens

    def signed(f):
        p = list(range(2 * n))
        for i in range(n):
            img, neg = f(i)
            p[i] = img + (n if neg else 0)
            p[i + n] = img + (0 if neg else n)
        return tuple(p)

    def swap(a, b, negate=False):
        def f(i):
            if i == a:
                return b, negate
            if i == b:
                return a, negate
            return i, False
        return signed(f)

    gens = [swap(i, i + 1) for i in range(n - 1)]
    if rec.family == "B":
        gens.append(signed(lambda i: (i, i == n - 1)))
    else:
        gens.append(swap(n - 2, n - 1, negate=True))
    return gens


def _phi_mul(x, c):
    a, b = x
    p, q = c
    return (a * p + b * q, a * q + b * p + b * q)


def _cartan(d):
    """Cartan-type matrix over Z[phi] realizing the Coxeter matrix."""
    n = d.rank
    A = [[(2, 0) if i == j else (0, 0) for j in range(n)] for i in range(n)]
    for i, j, m in d.edges():
        if m == 3:
            A[i][j] = A[j][i] = (-1, 0)
        elif m == 4:
            A[i][j], A[j][i] = (-2, 0), (-1, 0)
        elif m == 6:
            A[i][j], A[j][i] = (-3, 0), (-1, 0)
        elif m == 5:
            A[i][j] = A[j][i] = (0, -1)
        else:
            raise NotSpherical(f"label {m} has no exact realization here")
    return A


def _weight_generators(d):
    A = _cartan(d)
    n = d.rank

    def make(i):
        row = A[i]

        def s(v):
            li = v[i]
            out = list(v)
            for k in range(n):
                if row[k] != (0, 0):
                    t = _phi_mul(li, row[k])
                    out[k] = (out[k][0] - t[0], out[k][1] - t[1])
            return tuple(out)
        return s

    return [make(i) for i in range(n)]


def _dihedral_generators(m):
    def mul(x, y):
        k1, f1 = x
        k2, f2 = y
        return ((k1 + (-k2 if f1 else k2)) % m, f1 ^ f2)

    return [lambda w: mul((0, 1), w), lambda w: mul((1, 1), w)]


def _model(d):
    """(start element, generator functions acting on the left), by input node."""
    rec = recognize(d)
    if rec.family in "ABD" and rec.label not in ("A0",) and not rec.label.startswith("I"):
        gens = _perm_generators(rec)
        by_node = [None] * d.rank
        for pos, node in enumerate(rec.order):
            g = gens[pos]
            by_node[node] = (lambda g: lambda w: tuple(g[i] for i in w))(g)
        size = len(gens[0])
        return tuple(range(size)), by_node
    if rec.label.startswith("I2"):
        m = d.matrix[0][1]
        return (0, 0), _dihedral_generators(m)
    return tuple((1, 0) for _ in range(d.rank)), _weight_generators(d)


@dataclass
class Enumeration:
    label: str
    order: int
    histogram: list
    lengths: dict
    generators: list

    def poincare(self):
        return list(self.histogram)


def group_order(d):
    order = 1
    for comp in d.components():
        for x in degrees(recognize(d.restrict(comp)).label):
            order *= x
    return order


def enumerate_group(d, bound=ENUM_BOUND):
    """BFS over the group; returns order, length histogram and the length map."""
    if len(d.components()) > 1:
        raise Disconnected("enumerate components separately")
    label = recognize(d).label
    expected = group_order(d)
    if expected > bound:
        raise BoundExceeded(f"|W({label})| = {expected} exceeds {bound}")
    start, gens = _model(d)
    lengths = {start: 0}
    frontier = [start]
    hist = [1]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                y = g(w)
                if y not in lengths:
                    lengths[y] = len(hist)
                    nxt.append(y)
        if nxt:
            hist.append(len(nxt))
        frontier = nxt
        if len(lengths) > bound:
            raise BoundExceeded(f"enumeration exceeds {bound} elements")
    return Enumeration(label, len(lengths), hist, lengths, gens)


# -- length polynomials -------------------------------------------------------

def degree_product(label):
    out = [1]
    for deg in degrees(label):
        out = poly_mul(out, [1] * deg)
    return out


def poincare(d, bound=ENUM_BOUND, method="auto"):
    """Coefficients of W(t), multiplied over connected components."""
    out = [1]
    for comp in d.components():
        sub = d.restrict(comp)
        label = recognize(sub).label
        if method == "formula" or (method == "auto" and group_order(sub) > bound):
            poly = degree_product(label)
        else:
            poly = enumerate_group(sub, bound).histogram
        out = poly_mul(out, poly)
    return out


def poly_divmod(num, den):
    num = list(num)
    if not den or den[-1] == 0:
        raise ZeroDivisionError("zero divisor polynomial")
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            return q, num
        q[k] = c
        for i, x in enumerate(den):
            num[k + i] -= c * x
    while num and num[-1] == 0:
        num.pop()
    return q, num


def parabolic_quotient(d, I, bound=ENUM_BOUND):
    """W^I(t) = W(t) / W_I(t); I is a set of 0-based node indices."""
    I = sorted(set(I))
    if any(i < 0 or i >= d.rank for i in I):
        raise ValueError(f"node index out of range 0..{d.rank - 1}")
    W = poincare(d, bound)
    WI = poincare(d.restrict(I), bound) if I else [1]
    q, r = poly_divmod(W, WI)
    if any(r):
        raise InexactDivision(f"W(t) not divisible by W_I(t) for I={I}")
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def minimal_coset_histogram(d, I, bound=ENUM_BOUND):
    """Length histogram of w with l(s w) > l(w) for every s in I."""
    en = enumerate_group(d, bound)
    hist = {}
    for w, l in en.lengths.items():
        if all(en.lengths[en.generators[i](w)] > l for i in I):
            hist[l] = hist.get(l, 0) + 1
    return [hist.get(k, 0) for k in range(max(hist) + 1)]


def poly_eval(coeffs, x):
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


def poly_str(coeffs, var="t"):
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        coef = str(c) if (c != 1 or k == 0) else ""
        terms.append(coef + mono)
    return " + ".join(terms) or "0"


# -- geometric flag counts ----------------------------------------------------

def _subspaces(F, dim):
    """All subspaces of F^dim as frozensets of vector codes, grouped by dimension."""
    q = F.q
    nvec = q ** dim
    vecs = [tuple((v // q ** k) % q for k in range(dim)) for v in range(nvec)]
    code = {v: i for i, v in enumerate(vecs)}

    def add(a, b):
        return code[tuple(F.add(x, y) for x, y in zip(vecs[a], vecs[b]))]

    def scale(c, a):
        return code[tuple(F.mul(c, x) for x in vecs[a])]

    by_dim = {0: {frozenset({0})}}
    for k in range(1, dim + 1):
        layer = set()
        for V in by_dim[k - 1]:
            rest = set(range(nvec)) - V
            while rest:
                v = min(rest)
                line = {scale(c, v) for c in range(q)}
                W = frozenset(add(a, b) for a in V for b in line)
                layer.add(W)
                rest -= W
        by_dim[k] = layer
    return by_dim


def count_flags(n, q, dims):
    """Flags V_1 < V_2 < ... in F_q^{n+1} with the given dimensions."""
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if q > FLAG_Q_BOUND or n > FLAG_N_BOUND:
        raise BoundExceeded(f"flag enumeration limited to n <= {FLAG_N_BOUND}, q <= {FLAG_Q_BOUND}")
    dims = sorted(dims)
    if not dims:
        return 1
    subs = _subspaces(GF.of_order(q), n + 1)
    ways = {V: 1 for V in subs[dims[0]]}
    for a in dims[1:]:
        ways = {W: sum(c for V, c in ways.items() if V <= W) for W in subs[a]}
    return sum(ways.values())


def flag_count_bridge(d, I, q):
    rec = recognize(d)
    if rec.family != "A":
        raise ValueError("flag bridge is implemented for type A")
    poly = parabolic_quotient(d, I)
    value = poly_eval(poly, q)
    # standard node k <-> subspace dimension k+1; G/P_I = flags of the complementary type
    pos = {node: k for k, node in enumerate(rec.order)}
    dims = [pos[node] + 1 for node in range(d.rank) if node not in set(I)]
    flags = count_flags(rec.rank, q, dims)
    return {"type": rec.label, "I": sorted(I), "q": q, "polynomial": poly,
            "value": value, "flags": flags, "agree": value == flags}
