import cmath
import math
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcoinv.cyclo import CycNum
from braidcoinv.group import (
    CapExceeded,
    GroupElem,
    act_hyperplane,
    compose,
    distinguished_generator,
    enumerate_group,
    get_group,
    group_order,
    hyperplanes,
    normal_vector,
    parse_element,
)
from conftest import as_complex

GROUPS = [(1, 3), (2, 2), (3, 2), (2, 3), (4, 2)]


def num_matrix(g: GroupElem) -> np.ndarray:
    return np.array([[as_complex(c) for c in row] for row in g.matrix()])


@pytest.mark.parametrize("e,n", GROUPS)
def test_order_and_closure(e, n):
    G = get_group(e, n)
    assert G.order == e**n * math.factorial(n)
    assert G.order == group_order(e, n)
    els = set(G.elements)
    assert len(els) == G.order
    for g in G.generators():
        for h in G.elements:
            assert compose(g, h) in els


@pytest.mark.parametrize("e,n", GROUPS)
def test_hyperplane_count(e, n):
    expected = e * n * (n - 1) // 2 + (n if e > 1 else 0)
    assert len(hyperplanes(e, n)) == expected


@pytest.mark.parametrize("e,n", [(2, 2), (3, 2)])
def test_composition_matches_matrix_product(e, n):
    G = get_group(e, n)
    for g, h in itertools.product(G.elements, repeat=2):
        assert np.allclose(num_matrix(compose(g, h)), num_matrix(g) @ num_matrix(h))


@pytest.mark.parametrize("e,n", GROUPS)
def test_distinguished_generator(e, n):
    G = get_group(e, n)
    for H in G.hyperplanes:
        g = distinguished_generator(H, n)
        assert (g ** H.order).is_identity()
        assert as_complex(g.det()) == pytest.approx(cmath.exp(2j * cmath.pi / H.order))
        # fixes the hyperplane pointwise: g v = zeta_H v, so g - zeta_H kills v
        v = np.array([as_complex(c) for c in normal_vector(H, n)])
        assert np.allclose(num_matrix(g) @ v, cmath.exp(2j * cmath.pi / H.order) * v)
        assert np.linalg.matrix_rank(num_matrix(g) - np.eye(n)) == 1


@pytest.mark.parametrize("e,n", [(2, 2), (3, 2), (2, 3)])
def test_cocycle_exhaustive(e, n):
    G = get_group(e, n)
    for H in G.hyperplanes:
        for g in G.elements:
            gH, lam = act_hyperplane(g, H)
            _, back = act_hyperplane(g.inverse(), gH)
            assert back * lam == CycNum.one(G.level)
            for h in G.elements:
                hH, l1 = act_hyperplane(h, H)
                _, l2 = act_hyperplane(g, hH)
                assert act_hyperplane(compose(g, h), H) == (act_hyperplane(g, hH)[0], l2 * l1)


def test_act_hyperplane_numeric():
    G = get_group(3, 2)
    for g in G.elements:
        for H in G.hyperplanes:
            K, lam = act_hyperplane(g, H)
            v = np.array([as_complex(c) for c in normal_vector(H, 2)])
            w = np.array([as_complex(c) for c in normal_vector(K, 2)])
            assert np.allclose(num_matrix(g) @ v, as_complex(lam) * w)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (4, 2)]), st.data())
def test_group_axioms(en, data):
    G = get_group(*en)
    a, b, c = (data.draw(st.sampled_from(G.elements)) for _ in range(3))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, a.inverse()).is_identity()


def test_parse_element():
    g = parse_element("w: 1 2; c: 1 0", 3)
    assert g == get_group(3, 2).t(1)
    assert parse_element(g.text(), 3) == g
    with pytest.raises(ValueError):
        parse_element("w: 1 1; c: 0 0", 3)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_group(3, 4, cap=100)


def test_generators_named():
    G = get_group(3, 3)
    s2, t1 = G.s(2), G.t(1)
    assert s2.perm == (1, 0, 2)
    assert t1.colors == (1, 0, 0)
    assert (t1 ** 3).is_identity()
