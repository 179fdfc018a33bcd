from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from f1geom import loose_graph as lg
from f1geom.counting import count_points
from f1geom.errors import Disconnected, DuplicateEdge, Loop, ParseError, TooLarge

from corpus import graph_corpus
from oracles import graph_scheme_count


def brute_cliques(vertices, edges):
    es = {frozenset(e) for e in edges}
    return [c for r in range(1, len(vertices) + 1) for c in combinations(vertices, r)
            if all(frozenset(p) in es for p in combinations(c, 2))]


def brute_aut(vertices, edges):
    es = {frozenset(e) for e in edges}
    n = 0
    for p in permutations(vertices):
        m = dict(zip(vertices, p))
        if {frozenset((m[a], m[b])) for a, b in es} == es:
            n += 1
    return n


# -- parsing -------------------------------------------------------------------

def test_parse_k2():
    g = lg.parse("vertex a; vertex b; edge a b")
    assert g.vertices == ("a", "b") and g.edges == (("a", "b"),)
    assert g.is_graph and g.kind() == "I"


def test_parse_single_loose_edge():
    g = lg.parse("vertex a; edge a _")
    assert g.vertices == ("a",) and g.loose_count("a") == 1 and g.free_edges == 0


def test_parse_free_edge():
    g = lg.parse("edge _ _")
    assert g.vertices == () and g.free_edges == 1
    assert len(lg.complete(g).fresh) == 2


def test_parse_comments_and_lines():
    g = lg.parse("graph tri  # a triangle\nvertex a\nvertex b\nvertex c\nedge a b; edge b c\nedge c a\n")
    assert g.name == "tri" and len(g.edges) == 3


@pytest.mark.parametrize("text,exc", [
    ("vertex a; edge a a", Loop),
    ("vertex a; vertex b; edge a b; edge b a", DuplicateEdge),
    ("vertex a; edge a b", ParseError),
    ("vertex 1a", ParseError),
    ("vertx a", ParseError),
    ("edge _", ParseError),
    ("vertex a; vertex a", ParseError),
])
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        lg.parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        lg.parse("vertex a\nvertex b; edge a c")
    assert info.value.line == 2 and info.value.column == 11


@pytest.mark.parametrize("g", graph_corpus(), ids=lambda g: g.name)
def test_serialize_roundtrip(g):
    assert lg.parse(lg.serialize(g)) == g


def test_edges_normalised_by_vertex_order():
    g = lg.parse("vertex a; vertex b; edge b a; edge _ a")
    assert g.edges == (("a", "b"), ("a", None))


# -- completion ------------------------------------------------------------------

def test_complete_triangle_with_loose_edge():
    g = lg.parse("vertex a; vertex b; vertex c; edge a b; edge b c; edge c a; edge a _")
    c = lg.complete(g)
    assert c.vertices == ("a", "b", "c", "v?0") and c.fresh == (3,)
    assert c.edges == {(0, 1), (1, 2), (0, 2), (0, 3)}
    assert lg.theta(g).ambient_dimension == 3


def test_complete_ordinary_graph_adds_nothing():
    c = lg.complete(lg.cycle_graph(4))
    assert c.fresh == () and len(c.edges) == 4


def test_complete_free_edge_is_k2():
    c = lg.complete(lg.parse("edge _ _"))
    assert c.vertices == ("v?0", "v?1") and c.edges == {(0, 1)}


@pytest.mark.parametrize("g", graph_corpus(), ids=lambda g: g.name)
def test_completion_invariants(g):
    c = lg.complete(g)
    missing = sum((a is None) + (b is None) for a, b in g.edges)
    assert len(c.fresh) == missing
    idx = {v: c.embedding[i] for i, v in enumerate(g.vertices)}
    induced = {e for e in c.edges if e[0] < len(g.vertices) and e[1] < len(g.vertices)}
    assert induced == {tuple(sorted((idx[a], idx[b]))) for a, b in g.edges if b is not None}
    # minimality: every fresh vertex is the endpoint of exactly one edge
    for f in c.fresh:
        assert sum(f in e for e in c.edges) == 1


# -- cliques -----------------------------------------------------------------------

def test_clique_complex_examples():
    assert lg.clique_complex(lg.cycle_graph(4)) == (4, 4)
    assert lg.clique_complex(lg.complete_graph(4)) == (4, 6, 4, 1)
    assert lg.clique_complex(lg.from_edges([("a", "b"), ("a", "c"), ("a", "d")])) == (4, 3)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(1, 7))
    vs = [f"v{i}" for i in range(n)]
    pairs = list(combinations(vs, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return lg.from_edges(chosen, "R", vs)


@given(small_graphs())
def test_cliques_match_brute_force(g):
    expected = brute_cliques(list(g.vertices), [e for e in g.edges])
    counts = {}
    for c in expected:
        counts[len(c)] = counts.get(len(c), 0) + 1
    assert lg.clique_complex(g) == tuple(counts[k] for k in range(1, max(counts) + 1))


# -- theta ----------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_complete_graph_is_projective_space(n):
    s = lg.theta(lg.complete_graph(n + 1))
    assert s.relations == () and s.kind == "I"
    assert len(s.space.points) == 2 ** (n + 1) - 1


def test_quadrangle_scheme():
    s = lg.theta(lg.cycle_graph(4))
    assert s.to_dict()["relations"] == [["X_x0", "X_x2"], ["X_x1", "X_x3"]]
    assert len(s.space.points) == 8


def test_path_scheme_points_are_cliques():
    s = lg.theta(lg.from_edges([("a", "b"), ("b", "c")]))
    assert s.relations == ((0, 2),)
    assert sorted(s.support(p) for p in s.space.points) == sorted(
        [(0,), (1,), (2,), (0, 1), (1, 2)])


@pytest.mark.parametrize("g", [g for g in graph_corpus() if g.is_graph], ids=lambda g: g.name)
def test_type_one_points_biject_with_cliques(g):
    s = lg.theta(g, allow_disconnected=True)
    supports = sorted(s.support(p) for p in s.space.points)
    idx = {v: i for i, v in enumerate(g.vertices)}
    expected = sorted(tuple(sorted(idx[v] for v in c))
                      for c in brute_cliques(list(g.vertices), list(g.edges)))
    assert supports == expected


@pytest.mark.parametrize("g", graph_corpus(), ids=lambda g: g.name)
@pytest.mark.parametrize("q", [2, 3, 5])
def test_scheme_counts_match_oracle(g, q):
    s = lg.theta(g, allow_disconnected=True)
    c = s.completion
    total = graph_scheme_count(list(c.vertices), [(c.vertices[i], c.vertices[j]) for i, j in c.edges], q)
    # subtract the points supported only on fresh vertices
    fresh = [c.vertices[i] for i in c.fresh]
    sub = [(c.vertices[i], c.vertices[j]) for i, j in c.edges if i in c.fresh and j in c.fresh]
    degenerate = graph_scheme_count(fresh, sub, q) if fresh else 0
    assert count_points(s, q) == total - degenerate
    assert count_points(s, q, brute=True) == total - degenerate


def test_loose_star_gives_n_plus_one_points():
    s = lg.theta(lg.parse("vertex v; edge v _; edge v _; edge v _"))
    assert s.kind == "II" and len(s.space.points) == 4
    assert len(lg.affine_space(3).points) == 8


def test_open_mask_removes_fresh_only_supports():
    s = lg.theta(lg.parse("vertex a; edge a _"))
    assert sorted(s.support(p) for p in s.space.points) == [(0,), (0, 1)]


def test_kinds():
    assert lg.parse("vertex a; vertex b; edge a b; edge a _; edge b _").kind() == "II"
    assert lg.parse("vertex a; vertex b; vertex c; edge a b; edge b c; edge c _").kind() == "III"


def test_theta_rejects_disconnected():
    g = lg.parse("vertex a; vertex b; vertex c; edge a b")
    with pytest.raises(Disconnected):
        lg.theta(g)
    assert lg.theta(g, allow_disconnected=True).kind == "I"


# -- automorphisms -----------------------------------------------------------------

def test_automorphism_examples():
    assert len(lg.automorphisms(lg.cycle_graph(4))) == 8
    assert len(lg.automorphisms(lg.complete_graph(4))) == 24
    tri = lg.parse("vertex a; vertex b; vertex c; edge a b; edge b c; edge c a; edge a _")
    assert len(lg.automorphisms(tri)) == 2


def test_automorphism_bound():
    with pytest.raises(TooLarge):
        lg.automorphisms(lg.complete_graph(11))


@pytest.mark.parametrize("g", [g for g in graph_corpus() if g.is_graph], ids=lambda g: g.name)
def test_automorphisms_match_brute_force(g):
    assert len(lg.automorphisms(g)) == brute_aut(list(g.vertices), list(g.edges))


def _ideal_preserving(s):
    rel = {frozenset(r) for r in s.relations}
    n = len(s.completion.vertices)
    return [p for p in permutations(range(n))
            if {frozenset((p[i], p[j])) for i, j in rel} == rel]


@pytest.mark.parametrize("g", [g for g in graph_corpus() if g.is_graph and len(g.vertices) <= 6],
                         ids=lambda g: g.name)
def test_ideal_preserving_permutations_are_automorphisms(g):
    s = lg.theta(g, allow_disconnected=True)
    assert sorted(_ideal_preserving(s)) == sorted(lg.automorphisms(g))


@pytest.mark.parametrize("g", graph_corpus(), ids=lambda g: g.name)
def test_automorphisms_act_faithfully_on_points(g):
    s = lg.theta(g, allow_disconnected=True)
    rel = {frozenset(r) for r in s.relations}
    pts = [frozenset(p.variables) for p in s.space.points]
    images = set()
    for perm in lg.automorphisms(g):
        sigma = lg.variable_permutation(g, perm)
        assert sorted(sigma) == list(range(len(sigma)))
        assert {frozenset((sigma[i], sigma[j])) for i, j in rel} == rel
        moved = tuple(frozenset(sigma[i] for i in p) for p in pts)
        assert set(moved) == set(pts)
        images.add(moved)
    # distinct automorphisms move the points differently
    assert len(images) == len(lg.automorphisms(g))


# -- connectivity ----------------------------------------------------------------

def test_component_examples():
    assert lg.connected_components(lg.cycle_graph(4)) == 1
    assert lg.scheme_components(lg.theta(lg.cycle_graph(4))) == 1
    g = lg.parse("vertex a; vertex b; vertex c; vertex d; vertex e; "
                 "edge a b; edge b c; edge c a; edge d e")
    assert lg.connected_components(g) == 2
    assert lg.scheme_components(lg.theta(g, allow_disconnected=True)) == 2
    single = lg.parse("vertex a")
    assert lg.connected_components(single) == 1 == lg.scheme_components(lg.theta(single))


def test_corpus_shape():
    G = graph_corpus()
    assert len(G) == 15
    assert sum(lg.connected_components(g) > 1 for g in G) == 3


@pytest.mark.parametrize("g", graph_corpus(), ids=lambda g: g.name)
def test_connectedness_theorem(g):
    s = lg.theta(g, allow_disconnected=True)
    assert lg.scheme_components(s) == lg.connected_components(g)
