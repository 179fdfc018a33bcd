"""Hot loops: brute-force solution counting over F_q and difference-map tallies.

Each kernel has a numba ``@njit`` version and a vectorised numpy version with
identical signatures; the public functions dispatch on ``_accel.use_numba()``.

Polynomial systems are passed in a flat encoding:

* ``domains``  (nvars, maxdom) int64 -- allowed field elements per variable
* ``dom_len``  (nvars,)        int64 -- how many entries of each row are used
* ``eq_start`` (neq + 1,)      int64 -- term offsets per equation
* ``coef``     (nterms,)       int64 -- field element multiplying each term
* ``exps``     (nterms, nvars) int64 -- exponent vector of each term
* ``add``, ``mul`` (q, q)      int64 -- field tables
* ``powt``     (q, maxexp + 1) int64 -- ``powt[x, e] = x**e``

A point is counted when every equation evaluates to 0.
"""
import numpy as np
from numba import njit

from . import _accel

_CHUNK = 1 << 18


@njit(cache=True)
def _count_solutions_nb(domains, dom_len, eq_start, coef, exps, add, mul, powt):
    nv = domains.shape[0]
    neq = eq_start.shape[0] - 1
    for i in range(nv):
        if dom_len[i] == 0:
            return 0
    idx = np.zeros(nv, dtype=np.int64)
    vals = np.empty(nv, dtype=np.int64)
    for i in range(nv):
        vals[i] = domains[i, 0]
    count = 0
    while True:
        ok = True
        for e in range(neq):
            acc = 0
            for t in range(eq_start[e], eq_start[e + 1]):
                term = coef[t]
                for v in range(nv):
                    ex = exps[t, v]
                    if ex != 0:
                        term = mul[term, powt[vals[v], ex]]
                acc = add[acc, term]
            if acc != 0:
                ok = False
                break
        if ok:
            count += 1
        # odometer step
        v = 0
        while v < nv:
            idx[v] += 1
            if idx[v] < dom_len[v]:
                vals[v] = domains[v, idx[v]]
                break
            idx[v] = 0
            vals[v] = domains[v, 0]
            v += 1
        if v == nv:
            break
    return count


def _count_solutions_np(domains, dom_len, eq_start, coef, exps, add, mul, powt):
    nv = domains.shape[0]
    if np.any(dom_len == 0):
        return 0
    total = 1
    for n in dom_len:
        total *= int(n)
    count = 0
    neq = len(eq_start) - 1
    for lo in range(0, total, _CHUNK):
        lin = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        vals = np.empty((nv, lin.size), dtype=np.int64)
        rest = lin
        for v in range(nv):
            vals[v] = domains[v, rest % dom_len[v]]
            rest = rest // dom_len[v]
        alive = np.ones(lin.size, dtype=bool)
        for e in range(neq):
            acc = np.zeros(lin.size, dtype=np.int64)
            for t in range(eq_start[e], eq_start[e + 1]):
                term = np.full(lin.size, coef[t], dtype=np.int64)
                for v in range(nv):
                    ex = exps[t, v]
                    if ex:
                        term = mul[term, powt[vals[v], ex]]
                acc = add[acc, term]
            alive &= acc == 0
        count += int(alive.sum())
    return count


def count_solutions(domains, dom_len, eq_start, coef, exps, add, mul, powt):
    args = tuple(np.ascontiguousarray(a, dtype=np.int64)
                 for a in (domains, dom_len, eq_start, coef, exps, add, mul, powt))
    if _accel.use_numba():
        return int(_count_solutions_nb(*args))
    return _count_solutions_np(*args)


@njit(cache=True)
def _difference_counts_nb(S, sub, n):
    out = np.zeros(n, dtype=np.int64)
    for i in range(S.shape[0]):
        for j in range(S.shape[0]):
            if i != j:
                out[sub[S[i], S[j]]] += 1
    return out


def _difference_counts_np(S, sub, n):
    d = sub[np.ix_(S, S)]
    mask = ~np.eye(S.size, dtype=bool)
    return np.bincount(d[mask], minlength=n).astype(np.int64)


def difference_counts(S, sub):
    """Multiplicity of every group element as a difference a - b, a != b in S.

    ``sub`` is the subtraction table of a finite group on indices 0..n-1.
    """
    S = np.ascontiguousarray(S, dtype=np.int64)
    sub = np.ascontiguousarray(sub, dtype=np.int64)
    n = sub.shape[0]
    if S.size == 0:
        return np.zeros(n, dtype=np.int64)
    if _accel.use_numba():
        return _difference_counts_nb(S, sub, n)
    return _difference_counts_np(S, sub, n)
