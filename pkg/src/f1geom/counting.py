"""Point counts over F_q, counting polynomials and the zeta calculus built on them.

Zeta conventions: a counting polynomial N(T) = sum a_k T^k gives

    zeta_{X|F1}(s) = prod_k (s - k)^(-a_k)            (canonical here)
    zeta_{X|Fp}(s) = prod_k (1 - p^(k - s))^(-a_k)

The toric-fan formula is usually written with positive exponents
s^c0 (s-1)^c1 ...; ``toric_c`` returns c_j and the identity c_j = a_j is what
gets checked, i.e. that rendering is the inverse of the canonical one.  The
2*pi normalisations of Deninger's factors are dropped.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

import numpy as np

from . import kernels
from .errors import BoundExceeded, NotPolynomial, PoleAt, UnsupportedQ
from .galois import GF, TABLE_BOUND, prime_power, prime_powers
from .loose_graph import Scheme
from .monoid import FREE, INV, TOR, MonoidPresentation, enumerate_primes

BRUTE_BOUND = 5 * 10 ** 7
GRAPH_QS = (2, 3, 4, 5)


# -- polynomials ---------------------------------------------------------------

def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c or [0]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def t_minus_one_power(k):
    """Coefficients of (T - 1)^k."""
    return [comb(k, i) * (-1) ** (k - i) for i in range(k + 1)]


@dataclass(frozen=True)
class CountingPolynomial:
    coeffs: tuple
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in _trim(self.coeffs)))

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    @property
    def degree(self):
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def admissible(self, q):
        return gcd(q - 1, self.e) == 1

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
                coef = str(c) if (c != 1 or k == 0) else ""
                if c == -1 and k:
                    coef = "-"
                terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ") or "0"


def interpolate(points, holdout=True):
    """Exact Lagrange interpolation.

    With ``holdout`` the last (q, N) pair is kept back and checked; otherwise
    the interpolant passes through every point and nothing is verified.
    """
    points = [(int(q), int(n)) for q, n in points]
    if len(points) < (2 if holdout else 1):
        raise NotPolynomial("not enough points")
    if holdout:
        nodes, (qv, nv) = points[:-1], points[-1]
    else:
        nodes, qv, nv = points, None, None
    coeffs = [Fraction(0)] * len(nodes)
    for i, (xi, yi) in enumerate(nodes):
        basis = [Fraction(1)]
        denom = 1
        for j, (xj, _) in enumerate(nodes):
            if j != i:
                basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += b * yi / denom
    if any(c.denominator != 1 for c in coeffs):
        raise NotPolynomial(f"non-integer interpolant through {nodes}")
    N = CountingPolynomial(tuple(int(c) for c in coeffs))
    if holdout and N(qv) != nv:
        raise NotPolynomial(f"interpolant {N} gives {N(qv)} at held-out q={qv}, expected {nv}")
    return N


# -- counting --------------------------------------------------------------

def _field(q):
    if prime_power(q) is None:
        raise UnsupportedQ(f"{q} is not a prime power")
    return GF.of_order(q)


def _tables(field, max_exp):
    if field.q > TABLE_BOUND:
        raise UnsupportedQ(f"brute force supports q <= {TABLE_BOUND}")
    return field.add_table, field.mul_table, field.pow_table(max(max_exp, 1))


def _pack(domains, equations, nvars):
    """Flatten domains and equations (lists of (coef, exps)) into kernel arrays."""
    maxdom = max([len(d) for d in domains] + [1])
    dom = np.zeros((nvars, maxdom), dtype=np.int64)
    dlen = np.zeros(nvars, dtype=np.int64)
    for i, d in enumerate(domains):
        dom[i, :len(d)] = d
        dlen[i] = len(d)
    starts = [0]
    coef, exps = [], []
    for eq in equations:
        for c, ex in eq:
            coef.append(c)
            exps.append(list(ex))
        starts.append(len(coef))
    exps_arr = np.array(exps, dtype=np.int64).reshape(len(coef), nvars)
    return dom, dlen, np.array(starts, dtype=np.int64), np.array(coef, dtype=np.int64), exps_arr


def _check_space(domains):
    total = 1
    for d in domains:
        total *= len(d)
    if total > BRUTE_BOUND:
        raise BoundExceeded(f"{total} assignments exceeds brute-force bound {BRUTE_BOUND}")


def brute_count(field, domains, equations):
    nvars = len(domains)
    _check_space(domains)
    max_exp = max([max(ex) for eq in equations for _, ex in eq] + [1])
    add, mul, powt = _tables(field, max_exp)
    dom, dlen, starts, coef, exps = _pack(domains, equations, nvars)
    return kernels.count_solutions(dom, dlen, starts, coef, exps, add, mul, powt)


def _presentation_domains(m, field):
    doms = []
    for g in m.generators:
        if g.kind == FREE:
            doms.append(list(range(field.q)))
        elif g.kind == INV:
            doms.append(list(range(1, field.q)))
        else:
            doms.append(field.roots_of_unity(g.order))
    return doms


def count_points(source, q, brute=False):
    """#Hom(A, (F_q, *)) for a presentation, or #projective F_q-points of a graph scheme."""
    if prime_power(q) is None:
        raise UnsupportedQ(f"{q} is not a prime power")
    if isinstance(source, Scheme):
        return _count_scheme(source, q, brute)
    m = source
    if brute:
        field = _field(q)
        eqs = [[(1, rel)] for rel in m.ideal]
        return brute_count(field, _presentation_domains(m, field), eqs)
    units = (q - 1) ** sum(1 for g in m.generators if g.kind == INV)
    for g in m.generators:
        if g.kind == TOR:
            units *= gcd(g.order, q - 1)
    return units * sum((q - 1) ** p.dimension_hint for p in enumerate_primes(m))


def _count_scheme(s, q, brute):
    if not brute:
        return sum((q - 1) ** (len(c) - 1) for c in s.allowed_cliques())
    field = _field(q)
    n = len(s.completion.vertices)
    eqs = []
    for i, j in s.relations:
        e = [0] * n
        e[i] = e[j] = 1
        eqs.append([(1, e)])
    full = [list(range(q))] * n
    total = brute_count(field, full, eqs)
    fresh = set(s.completion.fresh)
    zeroed = [list(range(q)) if i in fresh else [0] for i in range(n)]
    degenerate = brute_count(field, zeroed, eqs)
    affine = total - degenerate
    if affine % (q - 1):
        raise AssertionError("affine cone count not divisible by q - 1")
    return affine // (q - 1)


def admissible_qs(e, count, start=2):
    out = []
    for q in prime_powers(start):
        if gcd(q - 1, e) == 1:
            out.append(q)
            if len(out) == count:
                return out


def counting_polynomial(source, brute=False):
    if isinstance(source, Scheme):
        coeffs = [0]
        for c in source.allowed_cliques():
            coeffs = poly_add(coeffs, t_minus_one_power(len(c) - 1))
        N = CountingPolynomial(tuple(coeffs))
        for q in GRAPH_QS:
            got = count_points(source, q, brute=True)
            if got != N(q):
                raise NotPolynomial(f"clique formula gives {N(q)} at q={q}, brute force {got}")
        return N
    m = source
    d = sum(1 for g in m.generators if g.kind in (FREE, INV))
    qs = admissible_qs(m.e, d + 2)
    N = interpolate([(q, count_points(m, q, brute=brute)) for q in qs])
    return CountingPolynomial(N.coeffs, m.e)


def torsion_defect(m, q):
    """(count, N(q)) at an inadmissible q, where the counting polynomial fails."""
    N = counting_polynomial(m)
    return count_points(m, q), N(q)


def counts_csv(source, qs, brute=False):
    lines = ["q,count"]
    lines += [f"{q},{count_points(source, q, brute=brute)}" for q in qs]
    return "\n".join(lines) + "\n"


# -- zeta functions -------------------------------------------------------

@dataclass(frozen=True)
class F1Zeta:
    """zeta(s) = prod (s - k)^(-a_k) over ``factors`` = ((k, a_k), ...)."""

    factors: tuple

    @classmethod
    def from_exponents(cls, exps):
        return cls(tuple(sorted((k, a) for k, a in exps.items() if a)))

    def inverse_exponents(self):
        return dict(self.factors)

    def __call__(self, s):
        val = 1
        for k, a in self.factors:
            if s == k and a > 0:
                raise PoleAt(f"pole at s={s}")
            val *= (s - k) ** (-a)
        return val

    def __str__(self):
        num, den = [], []
        for k, a in self.factors:
            base = "s" if k == 0 else f"(s-{k})" if k > 0 else f"(s+{-k})"
            piece = base + (f"^{abs(a)}" if abs(a) != 1 else "")
            (den if a > 0 else num).append(piece)
        return f"{''.join(num) or '1'}/({''.join(den) or '1'})"

    def to_dict(self):
        return [{"root": k, "exponent": -a} for k, a in self.factors]


def f1_zeta(N):
    return F1Zeta.from_exponents(dict(enumerate(N.coeffs)))


def euler_characteristic(N):
    return N(1)


def local_zeta_value(N, p, s):
    """prod_k (1 - p^(k - s))^(-a_k) for a prime (or real p > 0)."""
    val = 1 + 0j
    for k, a in enumerate(N.coeffs):
        if not a:
            continue
        f = 1 - cmath.exp((k - s) * math.log(p))
        if abs(f) == 0:
            if a > 0:
                raise PoleAt(f"pole at s={s}")
            val *= 0
            continue
        val *= f ** (-a)
    return val


def normalized_local_zeta(N, h, s):
    """zeta_{X|F_p}(s) * (p - 1)^chi at p = 1 + h, written as prod ((1 - p^(k-s))/(p-1))^(-a_k).

    The rewriting uses chi = sum a_k; expm1/log1p keep it accurate for tiny h.
    """
    val = 1.0
    lp = math.log1p(h)
    for k, a in enumerate(N.coeffs):
        if a:
            val *= (-math.expm1((k - s) * lp) / h) ** (-a)
    return val


def kurokawa_limit_check(N, s, hs=(1e-3, 1e-4, 1e-5, 1e-6)):
    Z = f1_zeta(N)
    target = Z(s)
    rows = []
    for h in hs:
        v = normalized_local_zeta(N, h, s)
        rows.append({"h": h, "value": v, "error": abs(v - target)})
    errs = np.array([r["error"] for r in rows])
    slope = None
    if len(rows) >= 2 and np.all(errs > 0):
        slope = float(np.polyfit(np.log(hs), np.log(errs), 1)[0])
    return {"s": s, "target": target, "rows": rows, "order": slope}


# -- toric fans ---------------------------------------------------------------

@dataclass(frozen=True)
class FanProfile:
    n: int
    f: tuple

    def __post_init__(self):
        f = tuple(int(x) for x in self.f) + (0,) * (self.n + 1 - len(self.f))
        if len(f) != self.n + 1 or f[0] != 1 or any(x < 0 for x in f):
            raise ValueError("fan profile needs f_0 = 1, nonnegative counts, length n + 1")
        object.__setattr__(self, "f", f)


def fan_projective_space(n):
    return FanProfile(n, tuple(comb(n + 1, j) for j in range(n + 1)))


def fan_affine_space(n):
    return FanProfile(n, tuple(comb(n, j) for j in range(n + 1)))


def fan_torus(n):
    return FanProfile(n, (1,) + (0,) * n)


def toric_c(fan):
    n, f = fan.n, fan.f
    return tuple(sum(f[n - k] * (-1) ** (k + j) * comb(k, j) for k in range(j, n + 1))
                 for j in range(n + 1))


def toric_counting_polynomial(fan):
    """sum_j f_j (T - 1)^(n - j): one torus orbit (T - 1)^(n - dim) per cone."""
    coeffs = [0]
    for j, fj in enumerate(fan.f):
        coeffs = poly_add(coeffs, [fj * c for c in t_minus_one_power(fan.n - j)])
    return CountingPolynomial(tuple(coeffs))


# -- hypersurfaces ------------------------------------------------------------

def count_hypersurface(terms, nvars, q, projective=True):
    """Zeros of sum c * X^e (integer c) over F_q, affine or projective."""
    if nvars > 6:
        raise BoundExceeded("at most 6 variables (n <= 5)")
    if q > 64:
        raise BoundExceeded("brute force limited to q <= 64")
    field = _field(q)
    eq = [(field.from_int(c), tuple(e)) for c, e in terms]
    if projective and len({sum(e) for _, e in terms}) > 1:
        raise ValueError("projective counting needs a homogeneous polynomial")
    affine = brute_count(field, [list(range(q))] * nvars, [eq])
    if not projective:
        return affine
    return (affine - 1) // (q - 1)


def interpolate_counts(counts, holdout=True):
    return interpolate(sorted(counts.items()) if isinstance(counts, dict) else counts, holdout)


def quadric_terms(kappa, kappa2):
    """kappa X0 X1 + kappa' X2 X3."""
    return [(kappa, (1, 1, 0, 0)), (kappa2, (0, 0, 1, 1))]


# -- zeta gcd -------------------------------------------------------------------

def zeta_gcd(family):
    zs = [f1_zeta(N) if isinstance(N, CountingPolynomial) else N for N in family]
    roots = sorted({k for z in zs for k, _ in z.factors})
    exps = {k: min(z.inverse_exponents().get(k, 0) for z in zs) for k in roots}
    return F1Zeta.from_exponents(exps)


def divides(candidate, member):
    """Does the inverse of ``candidate`` divide the inverse of ``member``?"""
    m = member.inverse_exponents()
    c = candidate.inverse_exponents()
    return all(a <= m.get(k, 0) for k, a in c.items())


# -- category zeta -------------------------------------------------------------

def category_zeta_modR(R):
    """Factors (norm, multiplicity) of prod_m 1/(1 - N(m)^-s) over maximal ideals m."""
    counts = {}
    for m in R.maximal_ideals():
        norm = len(R) // len(m)
        counts[norm] = counts.get(norm, 0) + 1
    return sorted(counts.items())


def zeta_report(N, primes=(2, 3, 5), s=2.5):
    Z = f1_zeta(N)
    return {
        "counting": list(N.coeffs),
        "polynomial": str(N),
        "e": N.e,
        "euler": euler_characteristic(N),
        "zeta": Z.to_dict(),
        "zeta_text": str(Z),
        "toric_rendering": [{"root": k, "exponent": a} for k, a in Z.factors],
        "local": {str(p): local_zeta_value(N, p, s).real for p in primes},
        "local_s": s,
    }
