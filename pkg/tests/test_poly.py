import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wildquot.gf import FieldTower, prime_field
from wildquot.poly import (
    MPoly,
    TruncSeries,
    hensel_w,
    homogeneous_monomials,
    substitute,
    substitute_separated,
)

F7 = prime_field(7)
F9 = FieldTower(3, 2).base


def random_poly(F, nvars, rng, terms=5, deg=4):
    return MPoly(F, nvars, {tuple(rng.randrange(deg + 1) for _ in range(nvars)): rng.randrange(1, F.order)
                            for _ in range(terms)})


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ring_operations_commute_with_evaluation(seed):
    rng = random.Random(seed)
    for F in (F7, F9):
        f, g = random_poly(F, 3, rng), random_poly(F, 3, rng)
        pt = [rng.randrange(F.order) for _ in range(3)]
        fv, gv = f.evaluate(pt), g.evaluate(pt)
        assert (f + g).evaluate(pt) == F.add(fv, gv)
        assert (f - g).evaluate(pt) == F.sub(fv, gv)
        assert (f * g).evaluate(pt) == F.mul(fv, gv)
        assert (f ** 3).evaluate(pt) == F.pow(fv, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_compose_matches_evaluation(seed):
    rng = random.Random(seed)
    f = random_poly(F9, 2, rng)
    images = [random_poly(F9, 3, rng, terms=3, deg=2) for _ in range(2)]
    pt = [rng.randrange(9) for _ in range(3)]
    inner = [h.evaluate(pt) for h in images]
    assert f.compose(images).evaluate(pt) == f.evaluate(inner)


def test_partial_derivative_in_characteristic_p():
    x, y = MPoly.var(F7, 2, 0), MPoly.var(F7, 2, 1)
    assert (x ** 7).partial_derivative(0) == MPoly(F7, 2)
    f = x ** 3 * y + y ** 2
    assert f.partial_derivative(0) == (x ** 2 * y).scale(3)
    g = x * y + x ** 8
    # Leibniz rule
    assert (f * g).partial_derivative(0) == f.partial_derivative(0) * g + f * g.partial_derivative(0)


def test_restrict_divide_and_coefficients():
    x, y = MPoly.var(F7, 2, 0), MPoly.var(F7, 2, 1)
    f = x * y + x ** 2 + y ** 3
    assert f.restrict(0, 0) == y ** 3
    assert (x * f).divide_by_variable(0) == f
    with pytest.raises(ValueError):
        f.divide_by_variable(0)
    assert f.restrict(0, 0).univariate_coeffs(1) == [0, 0, 0, 1]
    with pytest.raises(ValueError):
        f.univariate_coeffs(1)
    assert f.is_homogeneous() is False and (x * y + y ** 2).is_homogeneous()


def test_over_extension():
    tower = FieldTower(3, 1, degrees=(2,))
    K = tower.field(2)
    f = MPoly.var(tower.base, 1, 0) ** 2 + MPoly.constant(tower.base, 1, 2)
    g = f.over(K)
    assert g.field is K and g.terms == f.terms
    with pytest.raises(ValueError):
        f.over(prime_field(5))


@pytest.mark.parametrize("d", [1, 2, 3, 5])
def test_homogeneous_monomials(d):
    mons = homogeneous_monomials(4, d)
    assert len(mons) == comb(d + 3, 3) == len(set(mons))
    assert all(sum(e) == d for e in mons)
    assert mons == sorted(mons, reverse=True)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=8), st.lists(st.integers(0, 6), min_size=1, max_size=8))
def test_series_product_is_truncated_convolution(a, b):
    N = 6
    s, t = TruncSeries(F7, N, a), TruncSeries(F7, N, b)
    expect = [sum(a[i] * b[k - i] for i in range(k + 1) if i < len(a) and k - i < len(b)) % 7 for k in range(N)]
    assert (s * t).coeffs[:N] == expect


def test_series_compose_matches_substitute():
    u = TruncSeries.variable(F7, 10)
    inner = u + u ** 3 * 2
    outer = TruncSeries(F7, 10, [1, 2, 0, 5, 1])
    poly = MPoly.univariate(F7, [1, 2, 0, 5, 1])
    assert outer.compose(inner) == substitute(poly, {0: inner})


def fixed_point_w(P, q, N):
    """Oracle: iterate w <- u^q - u w^(q-1) - (P(w) - w) until stable."""
    F = P.field
    u = TruncSeries.variable(F, N)
    w = TruncSeries(F, N)
    higher = P - MPoly.var(F, 1, 0)
    for _ in range(N + 1):
        w = u ** q - u * w ** (q - 1) - substitute(higher, {0: w})
    return w


@pytest.mark.parametrize("p,s", [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)])
def test_hensel_matches_fixed_point_iteration(p, s):
    tower = FieldTower(p, s)
    F, q = tower.base, tower.q
    rng = random.Random(p * 10 + s)
    P = MPoly.univariate(F, [0, 1, *(rng.randrange(q) for _ in range(q - 1))])
    N = 3 * q + 2
    w = hensel_w(P, q, N)
    assert w == fixed_point_w(P, q, N)
    assert w.coeffs[:q] == [0] * q and w.coeffs[q] == 1


def test_hensel_rejects_bad_input():
    with pytest.raises(ValueError):
        hensel_w(MPoly.univariate(F7, [1, 1]), 7, 20)
    with pytest.raises(ValueError):
        hensel_w(MPoly.univariate(F7, [0, 2]), 7, 20)
    with pytest.raises(ValueError):
        hensel_w(MPoly.univariate(F7, [0, 1]), 7, 7)


def naive_bivariate(f, left, right, N):
    """Oracle: multiply dict-based bivariate series directly."""
    F = f.field
    series = {}
    for i, s in left.items():
        series[i] = {(k, 0): c for k, c in enumerate(s.coeffs[:N]) if c}
    for i, s in right.items():
        series[i] = {(0, k): c for k, c in enumerate(s.coeffs[:N]) if c}

    def mul(a, b):
        out = {}
        for (i, j), x in a.items():
            for (k, l), y in b.items():
                if i + j + k + l < N:
                    out[(i + k, j + l)] = F.add(out.get((i + k, j + l), 0), F.mul(x, y))
        return {k: v for k, v in out.items() if v}

    total = {}
    for e, c in f.terms.items():
        term = {(0, 0): c}
        for v, k in enumerate(e):
            for _ in range(k):
                term = mul(term, series[v])
        for key, val in term.items():
            total[key] = F.add(total.get(key, 0), val)
    return {k: v for k, v in total.items() if v}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_substitute_separated_matches_naive(seed):
    rng = random.Random(seed)
    N = 7
    f = random_poly(F7, 4, rng, terms=4, deg=3)
    mk = lambda: TruncSeries(F7, N, [0] + [rng.randrange(7) for _ in range(N - 1)])
    left, right = {0: mk(), 1: mk()}, {2: mk(), 3: mk()}
    assert substitute_separated(f, left, right, N) == naive_bivariate(f, left, right, N)
