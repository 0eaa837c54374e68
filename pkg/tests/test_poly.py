import cmath
import itertools
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcoinv.cyclo import CycNum
from braidcoinv.group import get_group, normal_vector
from braidcoinv.poly import (
    DivisionError,
    Poly,
    act_poly,
    all_deltas_vanish,
    delta,
    det_power_check,
    divide_by_form,
    expected_hilbert,
    hilbert_PG,
    invariants,
    monomials,
    normal_form,
    pullback,
    q_poly,
    top_degree,
    twisted_leibniz_holds,
)
from conftest import as_complex


def poly_strategy(n, level, max_degree=3):
    term = st.tuples(
        st.tuples(*[st.integers(0, max_degree)] * n).filter(lambda a: sum(a) <= max_degree),
        st.integers(-4, 4),
    )
    return st.lists(term, max_size=6).map(
        lambda ts: Poly(n, level, {a: CycNum.rational(level, c) for a, c in ts if c})
    )


def evaluate(f: Poly, x) -> complex:
    return sum(as_complex(c) * np.prod([x[i] ** p for i, p in enumerate(a)]) for a, c in f.terms.items())


def num_matrix(g):
    return np.array([[as_complex(c) for c in row] for row in g.matrix()])


@settings(max_examples=30, deadline=None)
@given(poly_strategy(2, 6), poly_strategy(2, 6))
def test_ring_axioms(f, g):
    assert f * g == g * f
    assert (f + g) * f == f * f + g * f
    assert (f - f).is_zero()


@settings(max_examples=30, deadline=None)
@given(poly_strategy(2, 6), st.data())
def test_pullback_is_composition(f, data):
    G = get_group(3, 2)
    g = data.draw(st.sampled_from(G.elements))
    x = np.array([0.3 + 0.7j, -1.1 + 0.2j])
    assert evaluate(pullback(f, g), x) == pytest.approx(evaluate(f, num_matrix(g) @ x), abs=1e-8)


@settings(max_examples=30, deadline=None)
@given(poly_strategy(2, 6), st.data())
def test_delta_definition(f, data):
    G = get_group(3, 2)
    H = data.draw(st.sampled_from(G.hyperplanes))
    k = data.draw(st.integers(1, H.order - 1))
    for side, kk in (("left", k), ("right", -k)):
        d = delta(H, k, f, side)
        assert d * normal_form(H, 2, G.level) == f - act_poly(G.g_H(H, kk), f)
        if f:
            assert d.is_zero() or d.degree() <= f.degree() - 1


@settings(max_examples=20, deadline=None)
@given(poly_strategy(2, 6, 2), poly_strategy(2, 6, 2), st.data())
def test_twisted_leibniz(f1, f2, data):
    G = get_group(3, 2)
    H = data.draw(st.sampled_from(G.hyperplanes))
    k = data.draw(st.integers(1, H.order - 1))
    assert twisted_leibniz_holds(H, k, f1, f2)


def test_division_error():
    G = get_group(2, 2)
    H = G.hyperplanes[0]
    with pytest.raises(DivisionError):
        divide_by_form(Poly.variable(2, G.level, 0) + Poly.constant(2, G.level, 1), H)


def test_example_delta_t1():
    G = get_group(3, 2)
    x1 = Poly.variable(2, G.level, 0)
    H1 = [H for H in G.hyperplanes if H.kind == 1 and H.i == 0][0]
    assert delta(H1, 1, x1) == Poly.constant(2, G.level, CycNum.one(6) - G.zeta())


@pytest.mark.parametrize("e,n", [(1, 3), (2, 2), (3, 2), (2, 3)])
def test_invariants_killed(e, n):
    for f in invariants(e, n):
        assert all_deltas_vanish(f, e)
    x = Poly.variable(n, get_group(e, n).level, 0)
    assert not all_deltas_vanish(x, e)


@pytest.mark.parametrize("e,n", [(2, 2), (3, 2), (2, 3)])
def test_q_is_det_inverse_semi_invariant(e, n):
    Q = q_poly(e, n)
    assert Q.degree() == top_degree(e, n)
    for g in get_group(e, n).elements:
        assert det_power_check(g, Q)


def _groebner_hilbert(e, n):
    xs = sympy.symbols(f"x0:{n}")
    gens = [sum(sympy.prod(c) for c in itertools.combinations([x**e for x in xs], r)) for r in range(1, n + 1)]
    gb = sympy.groebner(gens, *xs, order="grevlex")
    lead = [sympy.Poly(p, *xs).monoms(order="grevlex")[0] for p in gb.exprs]
    out = []
    d = 0
    while True:
        cnt = sum(1 for a in monomials(n, d) if not any(all(a[i] >= m[i] for i in range(n)) for m in lead))
        if cnt == 0:
            return out
        out.append(cnt)
        d += 1


@pytest.mark.parametrize("e,n", [(1, 3), (2, 2), (3, 2), (2, 3), (1, 2), (4, 2)])
def test_hilbert_functions(e, n):
    ref = _groebner_hilbert(e, n)
    assert list(hilbert_PG(e, n, "ideal")) == ref
    assert list(hilbert_PG(e, n, "pairing")) == ref
    assert expected_hilbert(e, n) == ref
    assert sum(ref) == get_group(e, n).order


def test_poly_json_and_str():
    L = 6
    f = Poly.variable(2, L, 0) ** 2 - Poly.variable(2, L, 1).scale(CycNum.from_fractions(6, [0, 1]))
    assert Poly.from_json(f.to_json()) == f
    assert "x1^2" in str(f)
