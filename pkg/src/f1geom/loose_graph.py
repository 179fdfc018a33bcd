"""Loose graphs, their completions, and the schemes they define.

A loose graph is a graph in which an edge may have two, one or zero
endpoints.  Completing it adds one fresh vertex per missing endpoint; the
scheme is Proj(F1[X_v]/(X_a X_b : ab a non-edge of the completion)), and for
graphs with loose ends the points whose support lies entirely among the
fresh vertices are removed (an open subscheme).

Known gap: read literally, this recipe turns "one vertex with n loose edges"
into a scheme with n + 1 points, not the 2^n points of affine n-space.  Use
``affine_space`` when A^n itself is wanted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from .errors import Disconnected, DuplicateEdge, Loop, ParseError, TooLarge
from .monoid import PrimeIdeal, SpecSpace, enumerate_primes, polynomial_monoid

LOOSE = None
AUT_BOUND = 10
_ID = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class LooseGraph:
    vertices: tuple
    edges: tuple  # pairs; None marks a missing endpoint
    name: str = "G"

    def __post_init__(self):
        order = {v: i for i, v in enumerate(self.vertices)}
        if len(order) != len(self.vertices):
            raise ValueError("duplicate vertex")
        norm = []
        seen = set()
        for a, b in self.edges:
            for x in (a, b):
                if x is not None and x not in order:
                    raise ValueError(f"unknown vertex {x!r}")
            if a is not None and a == b:
                raise Loop(f"loop at {a}")
            ends = sorted((x for x in (a, b) if x is not None), key=order.__getitem__)
            e = tuple(ends) + (None,) * (2 - len(ends))
            if e[1] is not None:
                if e in seen:
                    raise DuplicateEdge(f"duplicate edge {e[0]} {e[1]}")
                seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def is_graph(self):
        return all(b is not None for _, b in self.edges)

    def loose_count(self, v):
        return sum(1 for a, b in self.edges if a == v and b is None)

    @property
    def free_edges(self):
        return sum(1 for a, _ in self.edges if a is None)

    def adjacency(self):
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges:
            if b is not None:
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def kind(self):
        """'I' for graphs, 'II' for complements of a subgraph in a complete graph, else 'III'."""
        if self.is_graph:
            return "I"
        adj = self.adjacency()
        n = len(self.vertices)
        complete = all(len(adj[v]) == n - 1 for v in self.vertices)
        counts = {self.loose_count(v) for v in self.vertices}
        if complete and len(counts) == 1:
            d = counts.pop()
            if d > 0 and self.free_edges <= d * (d - 1) // 2:
                return "II"
        return "III"


def parse(text, name=None):
    vertices = []
    edges = []
    gname = name or "G"
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        offset = 0
        for stmt in line.split(";"):
            col = offset + 1 + (len(stmt) - len(stmt.lstrip()))
            offset += len(stmt) + 1
            toks = stmt.split()
            if not toks:
                continue
            kw = toks[0]
            if kw == "graph":
                if len(toks) != 2:
                    raise ParseError("expected 'graph <name>'", lineno, col)
                gname = toks[1]
            elif kw == "vertex":
                if len(toks) != 2 or not _ID.match(toks[1]):
                    raise ParseError("expected 'vertex <id>'", lineno, col)
                if toks[1] in vertices:
                    raise ParseError(f"vertex {toks[1]!r} declared twice", lineno, col)
                vertices.append(toks[1])
            elif kw == "edge":
                if len(toks) != 3:
                    raise ParseError("expected 'edge <a> <b>'", lineno, col)
                ends = []
                for t in toks[1:]:
                    if t == "_":
                        ends.append(None)
                    elif _ID.match(t):
                        if t not in vertices:
                            raise ParseError(f"undeclared vertex {t!r}", lineno, col)
                        ends.append(t)
                    else:
                        raise ParseError(f"bad endpoint {t!r}", lineno, col)
                a, b = ends
                if a is not None and a == b:
                    raise Loop(f"loop at {a}", lineno, col)
                if a is not None and b is not None:
                    key = frozenset((a, b))
                    if key in pairs:
                        raise DuplicateEdge(f"duplicate edge {a} {b}", lineno, col)
                    pairs.add(key)
                edges.append((a, b))
            else:
                raise ParseError(f"unknown statement {kw!r}", lineno, col)
    return LooseGraph(tuple(vertices), tuple(edges), gname)


def serialize(g):
    lines = [f"graph {g.name}"]
    lines += [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {a or '_'} {b or '_'}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


def from_edges(edges, name="G", vertices=None):
    vs = list(vertices or [])
    for e in edges:
        for x in e:
            if x is not None and x not in vs:
                vs.append(x)
    return LooseGraph(tuple(vs), tuple(tuple(e) for e in edges), name)


def complete_graph(n, name=None):
    vs = [f"x{i}" for i in range(n)]
    return from_edges(list(combinations(vs, 2)), name or f"K{n}", vs)


def cycle_graph(n, name=None):
    vs = [f"x{i}" for i in range(n)]
    return from_edges([(vs[i], vs[(i + 1) % n]) for i in range(n)], name or f"C{n}", vs)


# -- completion -------------------------------------------------------------

@dataclass(frozen=True)
class Completion:
    vertices: tuple  # V followed by V'
    edges: frozenset  # frozenset index pairs (i, j), i < j
    embedding: tuple  # index of each input vertex
    fresh: tuple  # indices of the added vertices

    def adjacency(self):
        adj = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def non_edges(self):
        n = len(self.vertices)
        return [(i, j) for i, j in combinations(range(n), 2) if (i, j) not in self.edges]


def complete(g):
    """Add one fresh vertex ``v?k`` per missing endpoint."""
    names = list(g.vertices)
    idx = {v: i for i, v in enumerate(names)}
    fresh = []
    edges = set()
    for a, b in g.edges:
        ends = []
        for x in (a, b):
            if x is None:
                k = len(fresh)
                names.append(f"v?{k}")
                fresh.append(len(names) - 1)
                ends.append(len(names) - 1)
            else:
                ends.append(idx[x])
        edges.add(tuple(sorted(ends)))
    return Completion(tuple(names), frozenset(edges), tuple(range(len(g.vertices))), tuple(fresh))


# -- cliques ------------------------------------------------------------------

def cliques(adj):
    """All nonempty cliques of a graph given as a list of neighbour sets, in canonical order."""
    n = len(adj)
    out = []

    def extend(clique, cands):
        out.append(tuple(clique))
        for v in sorted(cands):
            extend(clique + [v], {u for u in cands if u > v and u in adj[v]})

    for v in range(n):
        extend([v], {u for u in adj[v] if u > v})
    return sorted(out, key=lambda c: (len(c), c))


def clique_complex(g):
    """Face counts (f_1, f_2, ...): f_k = number of k-vertex cliques."""
    if isinstance(g, Completion):
        adj = g.adjacency()
    else:
        if not g.is_graph:
            g_c = complete(g)
            adj = g_c.adjacency()
        else:
            idx = {v: i for i, v in enumerate(g.vertices)}
            a = g.adjacency()
            adj = [{idx[u] for u in a[v]} for v in g.vertices]
    counts = {}
    for c in cliques(adj):
        counts[len(c)] = counts.get(len(c), 0) + 1
    return tuple(counts[k] for k in range(1, max(counts, default=0) + 1))


# -- scheme -------------------------------------------------------------------

@dataclass(frozen=True)
class Scheme:
    graph: LooseGraph
    completion: Completion
    relations: tuple  # non-edges (i, j) of the completion
    open_mask: frozenset  # excluded primes (as variable sets)
    kind: str

    @cached_property
    def presentation(self):
        names = list(self.completion.vertices)
        n = len(names)
        rels = []
        for i, j in self.relations:
            e = [0] * n
            e[i] = e[j] = 1
            rels.append(tuple(e))
        base = polynomial_monoid(n, [_var(x) for x in names], name=self.graph.name)
        return base.quotient(rels)

    @cached_property
    def space(self):
        m = self.presentation
        full = frozenset(m.free_indices)
        pts = [p for p in enumerate_primes(m)
               if p.variables != full and p.variables not in self.open_mask]
        return SpecSpace.build(m, pts)

    @property
    def ambient_dimension(self):
        return len(self.completion.vertices) - 1

    def support(self, p: PrimeIdeal):
        """The clique of vertices whose coordinate is nonzero at p."""
        return tuple(i for i in range(len(self.completion.vertices)) if i not in p.variables)

    def allowed_cliques(self):
        fresh = set(self.completion.fresh)
        return [c for c in cliques(self.completion.adjacency()) if not set(c) <= fresh]

    def to_dict(self):
        sp = self.space
        names = self.completion.vertices
        d = sp.to_dict()
        return {
            "name": self.graph.name,
            "type": self.kind,
            "variables": [_var(x) for x in names],
            "points": [{"label": p["label"], "variables": p["variables"], "closed": p["closed"]}
                       for p in d["points"]],
            "specialization": d["specialization"],
            "components": d["components"],
            "relations": [[_var(names[i]), _var(names[j])] for i, j in self.relations],
        }


def _var(vname):
    return "X_" + vname.replace("?", "q")


def theta(g, allow_disconnected=False):
    if not allow_disconnected and connected_components(g) > 1:
        raise Disconnected(f"{g.name} is disconnected (pass allow_disconnected=True)")
    c = complete(g)
    rel = tuple(c.non_edges())
    kind = g.kind()
    mask = frozenset()
    if c.fresh:
        n = len(c.vertices)
        fresh = set(c.fresh)
        # drop primes whose support (complement) lies inside the fresh vertices
        mask = frozenset(frozenset(range(n)) - frozenset(S)
                         for r in range(1, len(fresh) + 1)
                         for S in combinations(sorted(fresh), r))
    return Scheme(g, c, rel, mask, kind)


def affine_space(n):
    """A^n = Spec F1[X_1..X_n], built directly."""
    from .monoid import spec_space

    return spec_space(polynomial_monoid(n, [f"X{i + 1}" for i in range(n)], name=f"A{n}"))


# -- automorphisms, connectivity -------------------------------------------

def automorphisms(g):
    n = len(g.vertices)
    if n > AUT_BOUND:
        raise TooLarge(f"{n} vertices exceeds exhaustive bound {AUT_BOUND}")
    edges = {frozenset(e) for e in g.edges if e[1] is not None}
    loose = [g.loose_count(v) for v in g.vertices]
    out = []
    for perm in permutations(range(n)):
        if any(loose[i] != loose[perm[i]] for i in range(n)):
            continue
        if all(frozenset((g.vertices[perm[g.vertices.index(a)]],
                          g.vertices[perm[g.vertices.index(b)]])) in edges
               for a, b in (tuple(e) for e in edges)):
            out.append(perm)
    return out


def variable_permutation(g, perm):
    """Extend a vertex automorphism to V + V' (loose ends at v go to loose ends at perm(v))."""
    c = complete(g)
    n = len(g.vertices)
    ends = {}
    free = []
    k = n
    for a, b in g.edges:
        for x in (a, b):
            if x is None:
                if a is None:
                    free.append(k)
                else:
                    ends.setdefault(g.vertices.index(a), []).append(k)
                k += 1
    sigma = list(perm) + [0] * len(c.fresh)
    for v, lst in ends.items():
        for src, dst in zip(lst, ends[perm[v]]):
            sigma[src] = dst
    for f in free:
        sigma[f] = f
    return tuple(sigma)


def connected_components(g):
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        if a is not None and b is not None:
            parent[find(a)] = find(b)
    return len({find(v) for v in g.vertices}) + g.free_edges


def scheme_components(s):
    return len(s.space.components)
