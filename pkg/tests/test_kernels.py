import runpy
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from f1geom import _accel, kernels
from f1geom import counting as C
from f1geom import loose_graph as lg
from f1geom.galois import GF

from corpus import all_presentations


@pytest.fixture
def backend():
    before = _accel.backend()

    def use(name):
        _accel.set_backend(name)

    yield use
    _accel.set_backend(before)


def both(backend, fn):
    backend("numba")
    a = fn()
    backend("numpy")
    b = fn()
    return a, b


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _accel.set_backend("cuda")


def test_backend_switch(backend):
    backend("numpy")
    assert _accel.backend() == "numpy" and not _accel.use_numba()
    backend("numba")
    assert _accel.backend() == "numba"


@pytest.mark.parametrize("idx", range(0, 30, 2))
@pytest.mark.parametrize("q", [2, 4, 5, 9])
def test_presentation_counts_agree(backend, idx, q):
    m = all_presentations()[idx]
    a, b = both(backend, lambda: C.count_points(m, q, brute=True))
    assert a == b == C.count_points(m, q)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_scheme_counts_agree(backend, q):
    s = lg.theta(lg.cycle_graph(5))
    a, b = both(backend, lambda: C.count_points(s, q, brute=True))
    assert a == b == C.count_points(s, q)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_hypersurface_counts_agree(backend, q):
    a, b = both(backend, lambda: C.count_hypersurface(C.quadric_terms(2, -1), 4, q))
    assert a == b


def test_empty_domain_counts_zero(backend):
    F = GF(3)
    args = (np.zeros((1, 1)), np.array([0]), np.array([0, 1]), np.array([1]),
            np.array([[1]]), F.add_table, F.mul_table, F.pow_table(1))
    a, b = both(backend, lambda: kernels.count_solutions(*args))
    assert a == b == 0


@given(st.integers(3, 40).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), unique=True, max_size=n))))
def test_difference_counts_agree(data):
    n, S = data
    sub = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    before = _accel.backend()
    try:
        _accel.set_backend("numba")
        a = kernels.difference_counts(S, sub)
        _accel.set_backend("numpy")
        b = kernels.difference_counts(S, sub)
    finally:
        _accel.set_backend(before)
    expected = np.zeros(n, dtype=np.int64)
    for x in S:
        for y in S:
            if x != y:
                expected[(x - y) % n] += 1
    assert np.array_equal(a, expected) and np.array_equal(b, expected)


def test_difference_counts_fano():
    sub = (np.arange(7)[:, None] - np.arange(7)[None, :]) % 7
    assert kernels.difference_counts([0, 1, 3], sub).tolist() == [0, 1, 1, 1, 1, 1, 1]


def test_benchmark_backends_agree(capsys):
    path = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    bench = runpy.run_path(str(path))
    assert bench["main"](["--repeat", "1"]) == 0
    assert "MISMATCH" not in capsys.readouterr().out
