"""Finitely generated commutative pointed monoids F1[X..., U^{+-1}..., C_n...]/(monomials).

A presentation has typed generators (free, invertible, torsion of order n)
and a monomial ideal.  Because units never affect membership in a monomial
ideal, ideal generators are stored by their free part only, and the
generating set is kept reduced (pairwise non-divisible) and sorted.

Prime ideals are stored as subsets I of the free generators; p_I is the
ideal generated by {X_i : i in I}.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import lcm

from .errors import InvalidHom, MalformedIdeal, NotIntegral, ParseError

FREE, INV, TOR = "free", "inv", "tor"


@dataclass(frozen=True)
class Generator:
    name: str
    kind: str = FREE
    order: int = 0  # only for torsion generators

    def __post_init__(self):
        if self.kind not in (FREE, INV, TOR):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == TOR and self.order < 2:
            raise ValueError("torsion generators need order >= 2")

    def describe(self):
        return f"tor {self.order}" if self.kind == TOR else self.kind


@dataclass(frozen=True)
class Monomial:
    """X^u as a dense exponent tuple (one slot per generator), or the zero element."""

    exponents: tuple = ()
    is_zero: bool = False

    @classmethod
    def zero(cls):
        return cls((), True)

    def support(self):
        return frozenset(i for i, e in enumerate(self.exponents) if e)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _reduce_generators(gens):
    """Minimal generating set of the monomial ideal spanned by ``gens``."""
    gens = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out, key=lambda g: (sum(g), tuple(-x for x in g))))


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple
    ideal: tuple = ()  # free-part exponent tuples, reduced
    name: str = ""

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in self.generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        n = len(gens)
        cleaned = []
        for rel in self.ideal:
            exps = rel.exponents if isinstance(rel, Monomial) else tuple(rel)
            if len(exps) != n:
                raise MalformedIdeal(f"relation {exps} has wrong length for {n} generators")
            free = tuple(e if gens[i].kind == FREE else 0 for i, e in enumerate(exps))
            if any(e < 0 for e in free):
                raise MalformedIdeal(f"negative exponent on a free generator in {exps}")
            if not any(free):
                raise MalformedIdeal(f"ideal generator {exps} is a unit")
            cleaned.append(free)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "ideal", _reduce_generators(cleaned))

    # -- basic data
    @property
    def n(self):
        return len(self.generators)

    @cached_property
    def free_indices(self):
        return tuple(i for i, g in enumerate(self.generators) if g.kind == FREE)

    @cached_property
    def e(self):
        return lcm(1, *(g.order for g in self.generators if g.kind == TOR))

    @cached_property
    def ideal_supports(self):
        return tuple(frozenset(i for i, x in enumerate(g) if x) for g in self.ideal)

    def index(self, name):
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise KeyError(name)

    def __str__(self):
        return format_presentation(self, inline=True)

    # -- elements
    def monomial(self, exps=None, **named):
        if exps is None:
            exps = [0] * self.n
            for k, v in named.items():
                exps[self.index(k)] = v
        return self.normalize(Monomial(tuple(exps)))

    def one(self):
        return Monomial(tuple([0] * self.n))

    def generator(self, i):
        return self.normalize(Monomial(tuple(1 if j == i else 0 for j in range(self.n))))

    def normalize(self, m):
        if m.is_zero:
            return m
        exps = list(m.exponents)
        for i, g in enumerate(self.generators):
            if g.kind == TOR:
                exps[i] %= g.order
            elif g.kind == FREE and exps[i] < 0:
                raise ValueError(f"negative exponent on free generator {g.name}")
        if self.in_ideal(exps):
            return Monomial.zero()
        return Monomial(tuple(exps))

    def in_ideal(self, exps):
        return any(_divides(g, [max(e, 0) if self.generators[i].kind == FREE else 0
                                for i, e in enumerate(exps)]) for g in self.ideal)

    def mul(self, a, b):
        if a.is_zero or b.is_zero:
            return Monomial.zero()
        return self.normalize(Monomial(tuple(x + y for x, y in zip(a.exponents, b.exponents))))

    def is_unit(self, m):
        return not m.is_zero and all(m.exponents[i] == 0 for i in self.free_indices)

    def unit_order(self, m):
        """Multiplicative order of a unit; 0 when it has infinite order."""
        if not self.is_unit(m):
            raise ValueError("not a unit")
        if any(m.exponents[i] for i, g in enumerate(self.generators) if g.kind == INV):
            return 0
        o = 1
        for i, g in enumerate(self.generators):
            if g.kind == TOR and m.exponents[i]:
                o = lcm(o, g.order // _gcd(g.order, m.exponents[i]))
        return o

    def is_finite(self):
        if any(g.kind == INV for g in self.generators):
            return False
        pure = {next(iter(s)) for s in self.ideal_supports if len(s) == 1}
        return all(i in pure for i in self.free_indices)

    # -- constructions
    def with_generators(self, gens, ideal=None, name=None):
        return MonoidPresentation(tuple(gens), self.ideal if ideal is None else ideal,
                                  self.name if name is None else name)

    def quotient(self, relations):
        extra = [r.exponents if isinstance(r, Monomial) else tuple(r) for r in relations]
        return MonoidPresentation(self.generators, self.ideal + tuple(extra), self.name)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def polynomial_monoid(n, names=None, name=None):
    names = names or [f"X{i}" for i in range(n)]
    return MonoidPresentation(tuple(Generator(x) for x in names), (),
                              name or f"F1[{','.join(names)}]")


def torus(n, names=None):
    names = names or [f"U{i}" for i in range(n)]
    return MonoidPresentation(tuple(Generator(x, INV) for x in names), (), f"Gm^{n}")


def group_monoid(orders, names=None):
    """F1[G] for G = C_{n1} x ... x C_{nr}."""
    names = names or [f"T{i}" for i in range(len(orders))]
    return MonoidPresentation(tuple(Generator(x, TOR, o) for x, o in zip(names, orders)), (),
                              "F1[" + "x".join(f"C{o}" for o in orders) + "]")


def spec_f1():
    return MonoidPresentation((), (), "F1")


# -- prime ideals --------------------------------------------------------------

@dataclass(frozen=True, order=False)
class PrimeIdeal:
    variables: frozenset
    dimension_hint: int = 0

    def sort_key(self):
        return (len(self.variables), tuple(sorted(self.variables)))

    def label(self, m):
        if not self.variables:
            return "(0)"
        return "(" + ",".join(m.generators[i].name for i in sorted(self.variables)) + ")"

    def contains(self, m, mono):
        return mono.is_zero or any(mono.exponents[i] > 0 for i in self.variables)


def prime(m, variables):
    v = frozenset(variables)
    return PrimeIdeal(v, len(m.free_indices) - len(v))


def enumerate_primes(m):
    """All p_I with I hitting the support of every ideal generator, by (|I|, lex)."""
    free = m.free_indices
    out = []
    for r in range(len(free) + 1):
        for I in combinations(free, r):
            s = set(I)
            if all(s & sup for sup in m.ideal_supports):
                out.append(prime(m, s))
    return out


def is_prime(m, ideal_gens):
    """Is the ideal of m generated by ``ideal_gens`` (Monomials or exponent tuples) prime?

    The complement of a monomial ideal is multiplicatively closed exactly when
    its reduced generating set consists of single variables.
    """
    combined = list(m.ideal)
    for g in ideal_gens:
        exps = g.exponents if isinstance(g, Monomial) else tuple(g)
        if isinstance(g, Monomial) and g.is_zero:
            continue
        free = tuple(e if m.generators[i].kind == FREE else 0 for i, e in enumerate(exps))
        if not any(free):
            raise MalformedIdeal(f"ideal generator {exps} is a unit")
        combined.append(free)
    red = _reduce_generators(combined)
    return all(sum(g) == 1 for g in red)


def is_prime_bruteforce(m, ideal_gens, degree_bound=3):
    """Element-level check on all monomials of free degree <= degree_bound.

    Tests directly that the complement is closed under multiplication, using
    pairs whose product stays within the bound.
    """
    combined = list(m.ideal) + [
        tuple(e if m.generators[i].kind == FREE else 0 for i, e in enumerate(
            g.exponents if isinstance(g, Monomial) else g)) for g in ideal_gens]
    if any(not any(g) for g in combined):
        raise MalformedIdeal("unit in ideal")
    free = m.free_indices

    def member(exps):
        return any(_divides(g, exps) for g in combined)

    monos = []

    def rec(i, left, cur):
        if i == len(free):
            exps = [0] * m.n
            for j, e in zip(free, cur):
                exps[j] = e
            monos.append(tuple(exps))
            return
        for e in range(left + 1):
            rec(i + 1, left - e, cur + [e])

    rec(0, degree_bound, [])
    comp = [x for x in monos if not member(x)]
    for a in comp:
        for b in comp:
            prod = tuple(x + y for x, y in zip(a, b))
            if sum(prod) <= degree_bound and member(prod):
                return False
    return True


def localize(m, p):
    """S_p^{-1} M: free generators outside p become invertible."""
    gens = tuple(g if g.kind != FREE or i in p.variables else Generator(g.name, INV)
                 for i, g in enumerate(m.generators))
    return MonoidPresentation(gens, m.ideal, m.name)


def maximal_ideal(m):
    return prime(m, m.free_indices)


def is_integral(m):
    return not m.ideal


def quot_group(m):
    if not is_integral(m):
        raise NotIntegral(f"{m.name or m} has zero divisors")
    gens = tuple(Generator(g.name, INV) if g.kind == FREE else g for g in m.generators)
    return MonoidPresentation(gens, (), m.name)


def fibre_product(a, b):
    """A (x)_{F1} B: disjoint union of generators, union of ideals."""
    taken = {g.name for g in a.generators}
    gens = list(a.generators)
    for g in b.generators:
        nm = g.name
        while nm in taken:
            nm += "_b"
        taken.add(nm)
        gens.append(Generator(nm, g.kind, g.order))
    na = a.n
    ideal = [tuple(r) + (0,) * b.n for r in a.ideal] + [(0,) * na + tuple(r) for r in b.ideal]
    name = f"{a.name}*{b.name}" if a.name and b.name else ""
    return MonoidPresentation(tuple(gens), tuple(ideal), name)


def eliminate_linear(m):
    """Drop free generators X with X in the ideal; the result is isomorphic to m."""
    dead = {next(iter(s)) for s, g in zip(m.ideal_supports, m.ideal) if sum(g) == 1}
    keep = [i for i in range(m.n) if i not in dead]
    ideal = [tuple(r[i] for i in keep) for r in m.ideal if not (set(dead) & {j for j, x in enumerate(r) if x})]
    return MonoidPresentation(tuple(m.generators[i] for i in keep), tuple(ideal), m.name)


def f1_descent(system, variables):
    """F1[X...]/<all monomials occurring in the system>.

    ``system`` is a list of polynomials, each a string (parsed with sympy) or a
    mapping {exponent tuple: integer coefficient}.
    """
    variables = list(variables)
    monos = set()
    for poly in system:
        if isinstance(poly, str):
            terms = _sympy_terms(poly, variables)
        else:
            terms = {tuple(k): v for k, v in dict(poly).items()}
        for exps, c in terms.items():
            if c != 0:
                if not any(exps):
                    raise MalformedIdeal(f"constant term in {poly!r}: descent would be the zero monoid")
                monos.add(tuple(exps))
    base = polynomial_monoid(len(variables), variables)
    return MonoidPresentation(base.generators, tuple(sorted(monos)), "descent")


def _sympy_terms(text, variables):
    import sympy

    syms = sympy.symbols(variables)
    expr = sympy.sympify(text, locals={v: s for v, s in zip(variables, syms)})
    poly = sympy.Poly(expr, *syms)
    out = {}
    for exps, c in poly.terms():
        if not c.is_integer:
            raise ParseError(f"non-integer coefficient {c} in {text!r}")
        out[tuple(int(e) for e in exps)] = int(c)
    return out


# -- spectra ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpecSpace:
    """Finite Zariski space: points with the specialization order.

    ``specialization`` holds pairs (i, j) with points[i] strictly contained in
    points[j], i.e. point j lies in the closure of point i.
    """

    presentation: MonoidPresentation
    points: tuple
    specialization: tuple = field(default=())

    @classmethod
    def build(cls, m, points):
        pts = tuple(sorted(points, key=PrimeIdeal.sort_key))
        spec = tuple((i, j) for i, a in enumerate(pts) for j, b in enumerate(pts)
                     if i != j and a.variables < b.variables)
        return cls(m, pts, spec)

    def __len__(self):
        return len(self.points)

    def index(self, p):
        return self.points.index(p)

    @cached_property
    def generic(self):
        """Indices of minimal points (generic points of irreducible components)."""
        has_smaller = {j for _, j in self.specialization}
        return tuple(i for i in range(len(self.points)) if i not in has_smaller)

    @cached_property
    def closed(self):
        has_larger = {i for i, _ in self.specialization}
        return tuple(i for i in range(len(self.points)) if i not in has_larger)

    def closure(self, i):
        return {i} | {j for a, j in self.specialization if a == i}

    def is_closed_set(self, idx):
        idx = set(idx)
        return all(self.closure(i) <= idx for i in idx)

    @cached_property
    def components(self):
        parent = list(range(len(self.points)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in self.specialization:
            parent[find(i)] = find(j)
        groups = {}
        for i in range(len(self.points)):
            groups.setdefault(find(i), []).append(i)
        return tuple(sorted(tuple(g) for g in groups.values()))

    def labels(self):
        return [p.label(self.presentation) for p in self.points]

    def to_dict(self):
        m = self.presentation
        return {
            "points": [{"label": p.label(m),
                        "variables": [m.generators[i].name for i in sorted(p.variables)],
                        "closed": i in self.closed,
                        "generic": i in self.generic}
                       for i, p in enumerate(self.points)],
            "specialization": [list(x) for x in self.specialization],
            "components": len(self.components),
        }


def spec_space(m):
    return SpecSpace.build(m, enumerate_primes(m))


def proj_space(m):
    """Proj for an all-free presentation graded by total degree: drop the irrelevant prime."""
    if any(g.kind != FREE for g in m.generators):
        raise MalformedIdeal("Proj needs every generator free")
    full = frozenset(m.free_indices)
    return SpecSpace.build(m, [p for p in enumerate_primes(m) if p.variables != full])


# -- homomorphisms -------------------------------------------------------------

@dataclass(frozen=True)
class MonoidHom:
    source: MonoidPresentation
    target: MonoidPresentation
    images: tuple

    def __post_init__(self):
        s, t = self.source, self.target
        if len(self.images) != s.n:
            raise InvalidHom("need one image per source generator")
        imgs = tuple(t.normalize(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        for g, img in zip(s.generators, imgs):
            if g.kind == INV and not t.is_unit(img):
                raise InvalidHom(f"invertible generator {g.name} must map to a unit")
            if g.kind == TOR:
                if not t.is_unit(img):
                    raise InvalidHom(f"torsion generator {g.name} must map to a unit")
                o = t.unit_order(img)
                if o == 0 or g.order % o:
                    raise InvalidHom(f"image of {g.name} has order not dividing {g.order}")
        for rel in s.ideal:
            if not self.apply(Monomial(rel)).is_zero:
                raise InvalidHom(f"relation {rel} does not map to 0")

    def apply(self, mono):
        t = self.target
        if mono.is_zero:
            return mono
        out = t.one()
        for e, img in zip(mono.exponents, self.images):
            if e == 0:
                continue
            if img.is_zero:
                if e > 0:
                    return Monomial.zero()
                raise InvalidHom("negative power of 0")
            out = t.mul(out, Monomial(tuple(x * e for x in img.exponents)))
            if out.is_zero:
                return out
        return out

    def preimage(self, p):
        """h^{-1}(p_J) = p_I with I = {free i : h(X_i) in p_J}."""
        t = self.target
        I = {i for i in self.source.free_indices if p.contains(t, self.images[i])}
        return prime(self.source, I)

    def compose(self, other):
        """self o other (apply ``other`` first)."""
        return MonoidHom(other.source, self.target,
                         tuple(self.apply(img) for img in other.images))


def identity_hom(m):
    return MonoidHom(m, m, tuple(m.generator(i) for i in range(m.n)))


def is_local_hom(h):
    """beta^{-1}(B^x) = A^x: no non-unit of the source maps to a unit."""
    return not any(h.target.is_unit(h.images[i]) for i in h.source.free_indices)


def induced_spec_map(h):
    """Map Spec(target) -> Spec(source) as a dict of point indices."""
    src, tgt = spec_space(h.source), spec_space(h.target)
    return {j: src.index(h.preimage(q)) for j, q in enumerate(tgt.points)}, src, tgt


# -- text / JSON formats -----------------------------------------------------

_NAME = r"[A-Za-z][A-Za-z0-9_]*"
_FACTOR = re.compile(rf"^({_NAME})(?:\^(-?\d+))?$")


def parse_monomial(m, text):
    exps = [0] * m.n
    for part in text.split("*"):
        part = part.strip()
        mt = _FACTOR.match(part)
        if not mt:
            raise ParseError(f"bad monomial factor {part!r}")
        try:
            i = m.index(mt.group(1))
        except KeyError:
            raise ParseError(f"unknown generator {mt.group(1)!r}") from None
        exps[i] += int(mt.group(2) or 1)
    return tuple(exps)


def parse_presentation(text):
    name = ""
    gens = []
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            toks = stmt.split()
            if not toks:
                continue
            col = raw.find(toks[0]) + 1
            kw = toks[0]
            if kw == "monoid":
                if len(toks) != 2:
                    raise ParseError("expected 'monoid <name>'", lineno, col)
                name = toks[1]
            elif kw == "gen":
                if len(toks) < 3 or not re.fullmatch(_NAME, toks[1]):
                    raise ParseError("expected 'gen <name> free|inv|tor <n>'", lineno, col)
                if toks[2] == "tor":
                    if len(toks) != 4 or not toks[3].isdigit() or int(toks[3]) < 2:
                        raise ParseError("torsion order must be an integer >= 2", lineno, col)
                    gens.append(Generator(toks[1], TOR, int(toks[3])))
                elif toks[2] in (FREE, INV) and len(toks) == 3:
                    gens.append(Generator(toks[1], toks[2]))
                else:
                    raise ParseError(f"unknown generator kind {toks[2]!r}", lineno, col)
            elif kw == "rel":
                rels.append((" ".join(toks[1:]), lineno, col))
            else:
                raise ParseError(f"unknown declaration {kw!r}", lineno, col)
    try:
        base = MonoidPresentation(tuple(gens), (), name)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    ideal = []
    for body, lineno, col in rels:
        try:
            ideal.append(parse_monomial(base, body))
        except ParseError as exc:
            raise ParseError(str(exc), lineno, col) from None
    return MonoidPresentation(base.generators, tuple(ideal), name)


def format_monomial(m, exps):
    parts = []
    for g, e in zip(m.generators, exps):
        if e == 1:
            parts.append(g.name)
        elif e:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts) or "1"


def format_presentation(m, inline=False):
    lines = [f"monoid {m.name or 'M'}"]
    lines += [f"gen {g.name} {g.describe()}" for g in m.generators]
    lines += [f"rel {format_monomial(m, r)}" for r in m.ideal]
    return "; ".join(lines) if inline else "\n".join(lines) + "\n"


def presentation_to_dict(m):
    return {
        "name": m.name,
        "generators": [{"name": g.name, "kind": g.kind, "order": g.order} for g in m.generators],
        "ideal": [format_monomial(m, r) for r in m.ideal],
        "e": m.e,
    }


def presentation_from_dict(d):
    gens = tuple(Generator(g["name"], g["kind"], g.get("order", 0)) for g in d["generators"])
    base = MonoidPresentation(gens, (), d.get("name", ""))
    return MonoidPresentation(gens, tuple(parse_monomial(base, r) for r in d["ideal"]), base.name)


def to_json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
