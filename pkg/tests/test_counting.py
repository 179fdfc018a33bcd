import math
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from f1geom import counting as C
from f1geom import galois as G
from f1geom import loose_graph as lg
from f1geom import monoid as mn
from f1geom import rings as R
from f1geom.errors import NotPolynomial, PoleAt, UnsupportedQ, BoundExceeded

from corpus import all_presentations, finite_presentations, graph_corpus
from oracles import (binomial_row, graph_scheme_count, monomial_quadric_count,
                     t_minus_one_expansion, toric_polynomial)


def P(*coeffs):
    return C.CountingPolynomial(tuple(coeffs))


def brute_homs(m, q):
    """Monoid homs into (F_q, *) for q prime, straight from the definition."""
    doms = []
    for g in m.generators:
        if g.kind == mn.FREE:
            doms.append(range(q))
        elif g.kind == mn.INV:
            doms.append(range(1, q))
        else:
            doms.append([x for x in range(1, q) if pow(x, g.order, q) == 1])
    n = 0
    for v in product(*doms):
        if all(math.prod(pow(x, e, q) for x, e in zip(v, rel)) % q == 0 for rel in m.ideal):
            n += 1
    return n


# -- point counts --------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_affine_space_count(n, q):
    m = mn.polynomial_monoid(n, [f"X{i}" for i in range(n)])
    assert C.count_points(m, q) == q ** n


def test_quadrangle_count_q2():
    assert C.count_points(lg.theta(lg.cycle_graph(4)), 2) == 8


def test_cyclic_torsion_counts():
    m = mn.parse_presentation("monoid C3; gen T tor 3")
    assert C.count_points(m, 7) == 3 and C.count_points(m, 5) == 1


def test_unsupported_q():
    with pytest.raises(UnsupportedQ):
        C.count_points(mn.parse_presentation("monoid A1; gen X free"), 6)


@pytest.mark.parametrize("idx", range(30))
@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_prime_formula_matches_brute_force(idx, q):
    m = all_presentations()[idx]
    expected = brute_homs(m, q)
    assert C.count_points(m, q) == expected
    assert C.count_points(m, q, brute=True) == expected


@pytest.mark.parametrize("q", [4, 8, 9])
def test_prime_power_counts(q):
    for m in finite_presentations()[:12]:
        assert C.count_points(m, q) == C.count_points(m, q, brute=True)


@pytest.mark.parametrize("g", [g for g in graph_corpus() if g.is_graph], ids=lambda g: g.name)
@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_clique_formula_matches_brute_force(g, q):
    s = lg.theta(g, allow_disconnected=True)
    assert C.count_points(s, q) == C.count_points(s, q, brute=True)
    if q in (2, 3, 5, 7):
        assert C.count_points(s, q) == graph_scheme_count(list(g.vertices), list(g.edges), q)


# -- counting polynomials ----------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space_polynomial(n):
    N = C.counting_polynomial(lg.theta(lg.complete_graph(n + 1)))
    assert N.coeffs == (1,) * (n + 1)


def test_quadrangle_polynomial():
    N = C.counting_polynomial(lg.theta(lg.cycle_graph(4)))
    assert N.coeffs == (0, 4)
    assert [N(q) for q in (2, 3, 5)] == [8, 12, 20]


def test_torus_polynomial():
    N = C.counting_polynomial(mn.parse_presentation("monoid Gm2; gen U inv; gen V inv"))
    assert N.coeffs == (1, -2, 1) and str(N) == "1 - 2T + T^2"


def test_torsion_polynomial_and_defect():
    m = mn.parse_presentation("monoid C3; gen T tor 3")
    N = C.counting_polynomial(m)
    assert N.coeffs == (1,) and N.e == 3
    assert not N.admissible(7) and N.admissible(5)
    assert C.torsion_defect(m, 7) == (3, 1)


@pytest.mark.parametrize("idx", range(30))
def test_presentation_polynomial_matches_counts(idx):
    m = all_presentations()[idx]
    N = C.counting_polynomial(m)
    for q in C.admissible_qs(m.e, 6):
        assert N(q) == C.count_points(m, q)


def test_interpolate_verifies_holdout():
    assert C.interpolate([(2, 9), (3, 16), (5, 36), (7, 64)]).coeffs == (1, 2, 1)
    with pytest.raises(NotPolynomial):
        C.interpolate([(2, 9), (3, 16), (5, 36), (7, 65)])
    with pytest.raises(NotPolynomial):
        C.interpolate([(2, 11), (3, 16), (5, 36)], holdout=False)


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=5))
def test_interpolate_recovers_integer_polynomials(coeffs):
    qs = [2, 3, 4, 5, 7, 8, 9][: len(coeffs) + 1]
    pts = [(q, sum(c * q ** k for k, c in enumerate(coeffs))) for q in qs]
    N = C.interpolate(pts)
    assert N(11) == sum(c * 11 ** k for k, c in enumerate(coeffs))


# -- zeta ----------------------------------------------------------------------

def test_f1_zeta_examples():
    assert str(C.f1_zeta(P(1, 1, 1))) == "1/(s(s-1)(s-2))"
    assert C.euler_characteristic(P(1, 1, 1)) == 3
    assert str(C.f1_zeta(P(0, 4))) == "1/((s-1)^4)"
    assert C.euler_characteristic(P(0, 4)) == 4
    assert str(C.f1_zeta(P(1))) == "1/(s)" and C.euler_characteristic(P(1)) == 1


def test_f1_zeta_values_and_pole():
    Z = C.f1_zeta(P(1, 1))
    assert Z(3) == pytest.approx(1 / 6)
    with pytest.raises(PoleAt):
        Z(1)
    assert C.f1_zeta(P(1, -2, 1))(1) == 0


def test_local_zeta_affine_line():
    for s in (2.0, 3.0, 4.5):
        assert C.local_zeta_value(P(0, 1), 2, s).real == pytest.approx(1 / (1 - 2 ** (1 - s)))
    with pytest.raises(PoleAt):
        C.local_zeta_value(P(0, 1), 2, 1)


def test_kurokawa_affine_line():
    rep = C.kurokawa_limit_check(P(0, 1), 3, hs=(1e-6,))
    assert abs(rep["rows"][0]["value"] - 0.5) <= 1e-6


@pytest.mark.parametrize("N", [(0, 1), (1, 1), (1, 1, 1), (0, 4), (1, 2, 1), (1, -2, 1), (1, 3, 3, 1)])
@pytest.mark.parametrize("s", [2.5, 3.5])
def test_kurokawa_linear_convergence(N, s):
    rep = C.kurokawa_limit_check(P(*N), s)
    errs = [r["error"] for r in rep["rows"]]
    assert all(a > b for a, b in zip(errs, errs[1:]))
    first_order = sum(a * (k - s) for k, a in enumerate(N))
    if first_order:
        assert abs(rep["order"] - 1) < 0.2
    else:
        # the h-linear term cancels and convergence is quadratic
        assert abs(rep["order"] - 2) < 0.2


def test_kurokawa_projective_line_target():
    assert C.kurokawa_limit_check(P(1, 1), 2.5)["target"] == pytest.approx(1 / (2.5 * 1.5))


# -- toric fans ----------------------------------------------------------------

def test_toric_examples():
    assert C.toric_c(C.FanProfile(1, (1, 2))) == (1, 1)
    assert C.toric_c(C.FanProfile(2, (1, 3, 3))) == (1, 1, 1)
    assert C.toric_c(C.FanProfile(2, (1, 0, 0))) == (1, -2, 1)


def test_fan_profile_validation():
    with pytest.raises(ValueError):
        C.FanProfile(2, (2, 1, 1))
    with pytest.raises(ValueError):
        C.FanProfile(1, (1, -1))


@pytest.mark.parametrize("n", range(1, 5))
def test_toric_standard_fans(n):
    assert C.toric_c(C.fan_projective_space(n)) == (1,) * (n + 1)
    torus = sympy.Poly((sympy.Symbol("T") - 1) ** n).all_coeffs()
    assert C.toric_c(C.fan_torus(n)) == tuple(int(c) for c in reversed(torus))
    assert [abs(c) for c in C.toric_c(C.fan_torus(n))] == binomial_row(n)
    assert C.toric_c(C.fan_affine_space(n)) == (0,) * n + (1,)


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 9), min_size=n, max_size=n))))
def test_toric_c_matches_counting_polynomial(data):
    n, rest = data
    fan = C.FanProfile(n, (1, *rest))
    N = C.toric_counting_polynomial(fan)
    ref = toric_polynomial(fan.f)
    assert list(N.coeffs) == [int(c) for c in reversed(ref.all_coeffs())]
    assert C.toric_c(fan) == tuple(N.coeffs) + (0,) * (n + 1 - len(N.coeffs))
    # expanding back around T = 1 recovers the cone counts
    back = t_minus_one_expansion(list(N.coeffs))
    assert back + [0] * (n + 1 - len(back)) == list(reversed(fan.f))


# -- hypersurfaces ---------------------------------------------------------------

def test_split_quadric_q2():
    assert C.count_hypersurface(C.quadric_terms(1, 1), 4, 2) == 9


@pytest.mark.parametrize("k1,k2", [(1, 1), (1, -1)])
def test_split_quadric_polynomial(k1, k2):
    counts = {q: C.count_hypersurface(C.quadric_terms(k1, k2), 4, q) for q in (2, 3, 5)}
    assert counts == {2: 9, 3: 16, 5: 36}
    assert C.interpolate_counts(counts, holdout=False).coeffs == (1, 2, 1)


@pytest.mark.parametrize("k1,k2", [(a, b) for a in (1, -1, 2, -2) for b in (1, -1, 2, -2)])
@pytest.mark.parametrize("q", [3, 5, 7])
def test_quadric_counts_match_oracle(k1, k2, q):
    assert C.count_hypersurface(C.quadric_terms(k1, k2), 4, q) == monomial_quadric_count(k1, k2, q)


@pytest.mark.parametrize("k1,k2", [(a, b) for a in (1, -1, 2, -2) for b in (1, -1, 2, -2)])
def test_quadric_good_reduction_polynomial(k1, k2):
    # at odd q every kappa is a unit and the family is the split quadric
    counts = {q: C.count_hypersurface(C.quadric_terms(k1, k2), 4, q) for q in (3, 5, 7, 9)}
    assert C.interpolate_counts(counts).coeffs == (1, 2, 1)


def test_quadric_bad_reduction_at_two():
    assert C.count_hypersurface(C.quadric_terms(2, 1), 4, 2) == 11
    assert C.count_hypersurface(C.quadric_terms(2, 2), 4, 2) == 15
    with pytest.raises(NotPolynomial):
        C.interpolate_counts({q: C.count_hypersurface(C.quadric_terms(2, 1), 4, q)
                              for q in (2, 3, 5)}, holdout=False)


def test_hypersurface_affine_and_bounds():
    assert C.count_hypersurface([(1, (1, 1))], 2, 5, projective=False) == 9
    with pytest.raises(BoundExceeded):
        C.count_hypersurface([(1, (1,) * 7)], 7, 2)
    with pytest.raises(BoundExceeded):
        C.count_hypersurface(C.quadric_terms(1, 1), 4, 67)
    with pytest.raises(ValueError):
        C.count_hypersurface([(1, (1, 1)), (1, (1, 0))], 2, 3)


# -- gcd / divisibility ---------------------------------------------------------

def test_gcd_and_divides():
    inv_p2 = C.f1_zeta(P(1, 1, 1))
    quad = C.f1_zeta(P(1, 2, 1))
    assert C.divides(inv_p2, quad)
    assert not C.divides(quad, inv_p2)
    g = C.zeta_gcd([P(0, 4), P(1, 2, 1)])
    assert g.factors == ((1, 2),)
    assert C.zeta_gcd([P(1, 2, 1)]) == quad


@given(st.lists(st.lists(st.integers(0, 4), min_size=1, max_size=4), min_size=1, max_size=4))
def test_gcd_divides_every_member(family):
    Ns = [P(*c) for c in family]
    g = C.zeta_gcd(Ns)
    assert all(C.divides(g, C.f1_zeta(N)) for N in Ns)


# -- category zeta -------------------------------------------------------------

def test_category_zeta_examples():
    assert C.category_zeta_modR(R.integers_mod(6)) == [(2, 1), (3, 1)]
    assert C.category_zeta_modR(R.field_ring(G.GF(2, 2))) == [(4, 1)]
    assert C.category_zeta_modR(R.integers_mod(4)) == [(2, 1)]
    assert C.category_zeta_modR(R.integers_mod(30)) == [(2, 1), (3, 1), (5, 1)]


@pytest.mark.parametrize("n", range(2, 40))
def test_category_zeta_matches_factorisation(n):
    expected = sorted((p, 1) for p in sympy.primefactors(n))
    assert C.category_zeta_modR(R.integers_mod(n)) == expected


# -- multiplicativity ----------------------------------------------------------

PAIRS = [(a, b) for a in range(0, 30, 3) for b in range(1, 30, 4)]


@pytest.mark.parametrize("i,j", PAIRS)
def test_fibre_product_multiplicative(i, j):
    pres = all_presentations()
    a, b = pres[i], pres[j]
    f = mn.fibre_product(a, b)
    for q in (2, 3, 4, 5):
        assert C.count_points(f, q) == C.count_points(a, q) * C.count_points(b, q)


def test_zeta_report_shape():
    rep = C.zeta_report(P(1, 1))
    assert rep["counting"] == [1, 1] and rep["euler"] == 2
    assert rep["zeta"] == [{"root": 0, "exponent": -1}, {"root": 1, "exponent": -1}]
    assert rep["local"]["2"] == pytest.approx(1 / ((1 - 2 ** -2.5) * (1 - 2 ** -1.5)))


def test_counts_csv():
    m = mn.parse_presentation("monoid A1; gen X free")
    assert C.counts_csv(m, [2, 3]) == "q,count\n2,2\n3,3\n"


def test_fibre_product_of_tori():
    gm2 = mn.fibre_product(mn.torus(1), mn.torus(1))
    assert [g.kind for g in gm2.generators] == [mn.INV, mn.INV]
    assert all(C.count_points(gm2, q) == (q - 1) ** 2 for q in (2, 3, 4, 5, 7))
