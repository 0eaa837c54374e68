import cmath
import json
import random

import pytest

from braidcoinv.cyclo import CycNum
from braidcoinv.group import get_group
from braidcoinv.model import (
    KappaSet,
    c_constant,
    hilbert_image,
    lemma42_path,
    load_kappa,
    mu,
    random_generic,
    unit_vector,
    verify_commutativity,
    verify_equivariance,
    verify_fullness,
    verify_intertwining,
    verify_kernel,
)
from braidcoinv.poly import Poly, expected_hilbert, monomials
from braidcoinv.ydmod import get_module
from conftest import as_complex


def _c_numeric(H, k, kappa, twist):
    eH = H.order
    zh = cmath.exp(2j * cmath.pi / eH)
    s = sum(as_complex(kappa.value(H, i)) * zh ** (-i * k) for i in range(1, eH))
    nv = 1 if H.kind == 1 else 2
    return s * nv / (zh ** (-k if twist == "inverse" else k) - 1)


@pytest.mark.parametrize("e", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("name,twist", [("solved-C1", "inverse"), ("solved-C1-direct", "direct")])
def test_solved_presets_give_unit_constants(e, name, twist):
    ks = KappaSet.preset(name, e, 2)
    for H in ks.group.hyperplanes:
        for k in range(1, H.order):
            assert c_constant(H, k, ks, twist) == 1
            assert _c_numeric(H, k, ks, twist) == pytest.approx(1)


def test_preset_51_constants_e3():
    ks = KappaSet.preset("paper-5.1", 3, 2)
    G = ks.group
    Hi = [H for H in G.hyperplanes if H.kind == 1][0]
    assert c_constant(Hi, 1, ks) == 0
    assert c_constant(Hi, 2, ks) == CycNum.from_fractions(6, [1, 1])
    assert not ks.is_generic()


def test_presets_coincide_for_e2():
    a, b, c = (KappaSet.preset(p, 2, 2) for p in ("paper-5.1", "solved-C1", "solved-C1-direct"))
    assert a.to_json()["kappa"] == b.to_json()["kappa"] == c.to_json()["kappa"]


def test_kappa_json_round_trip(tmp_path):
    ks = random_generic(3, 2, random.Random(4))
    p = tmp_path / "k.json"
    p.write_text(json.dumps(ks.to_json()))
    back = load_kappa(str(p), 3, 2)
    assert back.fingerprint() == ks.fingerprint()
    with pytest.raises(ValueError):
        load_kappa(str(p), 2, 2)
    with pytest.raises(ValueError):
        KappaSet.preset("nonsense", 2, 2)


def test_mu_is_linear():
    ks = random_generic(3, 2, random.Random(1))
    M = get_module(3, 2)
    L = ks.level
    x, y = unit_vector(2, 0, L), unit_vector(2, 1, L)
    c = CycNum.from_fractions(L, [2, -1])
    s = tuple(a * c + b for a, b in zip(x, y))
    lhs = mu(s, ks, M)
    rhs = {}
    for b, v in mu(x, ks, M).items():
        rhs[b] = v * c
    for b, v in mu(y, ks, M).items():
        rhs[b] = rhs.get(b, CycNum.zero(L)) + v
    assert lhs == {b: v for b, v in rhs.items() if v}


@pytest.mark.parametrize("e,n", [(2, 2), (3, 2), (2, 3)])
def test_equivariance_and_commutativity(e, n):
    rng = random.Random(0)
    for _ in range(3):
        ks = random_generic(e, n, rng)
        assert verify_equivariance(ks)["ok"]
        assert verify_commutativity(ks)["ok"]


@pytest.mark.parametrize("e,n,twist,preset", [(2, 2, "inverse", "solved-C1"), (3, 2, "inverse", "solved-C1"),
                                                (3, 2, "direct", "solved-C1-direct")])
def test_intertwining(e, n, twist, preset):
    ks = KappaSet.preset(preset, e, n)
    rng = random.Random(7)
    L = ks.level
    for _ in range(4):
        d = rng.randint(0, 3)
        f = Poly(n, L, {a: CycNum.rational(L, rng.randint(-2, 2)) for a in monomials(n, d)})
        assert verify_intertwining(f, ks, twist)["ok"]


@pytest.mark.parametrize("e,n", [(1, 3), (2, 2), (3, 2)])
def test_hilbert_image_pairing(e, n):
    ks = KappaSet.preset("solved-C1", e, n)
    assert hilbert_image(ks, "pairing") == expected_hilbert(e, n)


def test_hilbert_image_tensor_small():
    ks = KappaSet.preset("solved-C1", 2, 2)
    assert hilbert_image(ks, "tensor") == [1, 2, 2, 2, 1]


@pytest.mark.parametrize("e,n", [(2, 2), (3, 2)])
def test_fullness_and_kernel(e, n):
    ks = KappaSet.preset("solved-C1", e, n)
    for tw in ("inverse", "direct"):
        assert verify_fullness(ks, tw)["ok"]
    assert verify_kernel(ks, "sigma")["ok"]
    assert verify_kernel(ks, "derivations", twist="direct")["ok"]


def test_lemma42_path_length():
    G = get_group(3, 2)
    path = lemma42_path(3, 2)
    assert len(path) == sum(H.order - 1 for H in G.hyperplanes)
