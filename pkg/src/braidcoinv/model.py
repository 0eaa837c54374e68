"""The truncated Dunkl map mu : V -> M_G, its extension to S(V) and the constants C_{H,k}."""

from __future__ import annotations

import hashlib
import json
import random
from fractions import Fraction
from typing import Optional, Sequence

from .braid import TensorVec, is_zero_in_B, sym_cache, symmetrizer
from .cyclo import CycNum, zeta
from .group import Hyperplane, get_group, hermitian, norm_squared, normal_vector
from .linalg import Echelon, solve
from .nichols import ProductSum, derivation, is_zero_by_derivations
from .poly import (
    Poly,
    act_poly,
    delta,
    functional_spaces,
    invariants,
    monomials,
    q_poly,
    top_degree,
)
from .ydmod import MVec, YDModule, get_module, mvec_add

PRESETS = ("paper-5.1", "solved-C1", "solved-C1-direct", "random-generic")


def _delta_side(twist: str) -> str:
    # the polynomial operator matched by a derivation of the given twist
    return "right" if twist == "inverse" else "left"


class KappaSet:
    """G-invariant constants kappa_{H,i}, stored per orbit label ("ij" or "i")."""

    def __init__(self, e: int, n: int, values: dict[str, list[CycNum]], name: str = "custom"):
        self.e, self.n = e, n
        self.group = get_group(e, n)
        self.level = self.group.level
        self.name = name
        self.values = {k: list(v) for k, v in values.items()}
        for H in self.group.hyperplanes:
            lab = self.group.orbit_label(H)
            if len(self.values.get(lab, [])) != H.order - 1:
                raise ValueError(f"orbit {lab!r} needs {H.order - 1} constants")

    def value(self, H: Hyperplane, i: int) -> CycNum:
        return self.values[self.group.orbit_label(H)][i - 1]

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "n": self.n,
            "name": self.name,
            "kappa": {k: [c.to_json() for c in v] for k, v in sorted(self.values.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "KappaSet":
        vals = {k: [CycNum.from_json(c) for c in v] for k, v in data["kappa"].items()}
        return cls(data["e"], data["n"], vals, data.get("name", "custom"))

    def is_generic(self, twist: str = "inverse") -> bool:
        return all(
            c_constant(H, k, self, twist) for H in self.group.hyperplanes for k in range(1, H.order)
        )

    def __repr__(self) -> str:
        return f"KappaSet({self.name}, e={self.e}, n={self.n})"

    # presets ---------------------------------------------------------------------------
    @classmethod
    def preset(cls, name: str, e: int, n: int, seed: int = 0) -> "KappaSet":
        G = get_group(e, n)
        L = G.level
        one = CycNum.one(L)
        labels = {G.orbit_label(H): H for H in G.hyperplanes}
        if name == "paper-5.1":
            vals = {}
            for lab, H in labels.items():
                if H.kind == 0:
                    vals[lab] = [one]
                else:
                    vals[lab] = [one - zeta(L, e, -s) for s in range(1, e)]
            return cls(e, n, vals, name)
        if name in ("solved-C1", "solved-C1-direct"):
            twist = "inverse" if name == "solved-C1" else "direct"
            vals = {lab: _solve_c1(H, L, twist) for lab, H in labels.items()}
            ks = cls(e, n, vals, name)
            for H in labels.values():
                for k in range(1, H.order):
                    assert c_constant(H, k, ks, twist) == one, "C = 1 system residual is nonzero"
            return ks
        if name == "random-generic":
            return random_generic(e, n, random.Random(seed))
        raise ValueError(f"unknown kappa preset {name!r}")


def _solve_c1(H: Hyperplane, L: int, twist: str) -> list[CycNum]:
    eH = H.order
    nv = norm_squared(H)
    sign = -1 if twist == "inverse" else 1
    mat = [[zeta(L, eH, -i * k) for i in range(1, eH)] for k in range(1, eH)]
    rhs = [(zeta(L, eH, sign * k) - 1) / nv for k in range(1, eH)]
    return solve(mat, rhs)


def random_generic(e: int, n: int, rng: random.Random, twist: str = "inverse") -> KappaSet:
    G = get_group(e, n)
    L = G.level
    labels = {G.orbit_label(H): H for H in G.hyperplanes}
    while True:
        vals = {
            lab: [CycNum.rational(L, Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in range(H.order - 1)]
            for lab, H in labels.items()
        }
        ks = KappaSet(e, n, vals, "random-generic")
        if ks.is_generic(twist):
            return ks


def load_kappa(source: str, e: int, n: int, seed: int = 0) -> KappaSet:
    """A preset name or a path to a JSON file."""
    if source in PRESETS:
        return KappaSet.preset(source, e, n, seed)
    with open(source) as fh:
        ks = KappaSet.from_json(json.load(fh))
    if (ks.e, ks.n) != (e, n):
        raise ValueError("kappa file is for a different group")
    return ks


# constants -------------------------------------------------------------------------------------


def c_constant(H: Hyperplane, k: int, kappa: KappaSet, twist: str = "inverse") -> CycNum:
    """C_{H,k} = sum_i kappa_{H,i} zeta_H^{-ik} |v_H|^2 / (zeta_H^{-k} - 1).

    For the direct twist the denominator is zeta_H^{k} - 1.
    """
    if not 1 <= k <= H.order - 1:
        raise ValueError(f"k={k} out of range for {H}")
    L = kappa.level
    eH = H.order
    s = CycNum.zero(L)
    for i in range(1, eH):
        s = s + kappa.value(H, i) * zeta(L, eH, -i * k)
    den = zeta(L, eH, -k if twist == "inverse" else k) - 1
    return s * norm_squared(H) / den


def c_table(kappa: KappaSet, twist: str = "inverse") -> dict[str, str]:
    G = kappa.group
    return {
        f"{H.label()};{k}": str(c_constant(H, k, kappa, twist)) for H in G.hyperplanes for k in range(1, H.order)
    }


# mu and mu~ -------------------------------------------------------------------------------------


def mu(xi: Sequence[CycNum], kappa: KappaSet, module: Optional[YDModule] = None) -> MVec:
    """mu(xi) = -sum_H sum_{i,k} alpha_H(xi) kappa_{H,i} zeta_H^{-ik} [H;k], alpha_H(xi) = <xi, v_H>."""
    G = kappa.group
    M = module or get_module(kappa.e, kappa.n)
    L = G.level
    out: MVec = {}
    for H in G.hyperplanes:
        a = hermitian(tuple(xi), normal_vector(H, G.n, L))
        if not a:
            continue
        eH = H.order
        for k in range(1, eH):
            c = CycNum.zero(L)
            for i in range(1, eH):
                c = c + kappa.value(H, i) * zeta(L, eH, -i * k)
            c = -(a * c)
            if c:
                out[M.symbol_index(H, k)] = c
    return out


def unit_vector(n: int, i: int, L: int) -> tuple[CycNum, ...]:
    return tuple(CycNum.one(L) if j == i else CycNum.zero(L) for j in range(n))


class MuModel:
    """mu for a fixed kappa, with cached images of the basis vectors."""

    def __init__(self, kappa: KappaSet):
        self.kappa = kappa
        self.e, self.n = kappa.e, kappa.n
        self.module = get_module(kappa.e, kappa.n)
        self.level = kappa.level
        self.images = [mu(unit_vector(self.n, i, self.level), kappa, self.module) for i in range(self.n)]

    def factors(self, alpha: Sequence[int]) -> list[MVec]:
        out = []
        for i, p in enumerate(alpha):
            out.extend([self.images[i]] * p)
        return out

    def product_sum(self, f: Poly) -> ProductSum:
        d = f.degree()
        ps = ProductSum(self.module, max(d, 0))
        for a, c in f.terms.items():
            if sum(a) != d:
                raise ValueError("mu~ expects a homogeneous polynomial")
            ps.iadd(ProductSum.product(self.module, self.factors(a), c))
        return ps

    def tensor(self, f: Poly) -> TensorVec:
        """Representative of mu~(f): monomial factors in increasing variable order."""
        d = f.degree()
        out = TensorVec(max(d, 0))
        for a, c in f.terms.items():
            if sum(a) != d:
                raise ValueError("mu~ expects a homogeneous polynomial")
            out.iadd(TensorVec.from_mvecs(self.factors(a), self.level), c)
        return out


def mu_tilde(f: Poly, kappa: KappaSet) -> TensorVec:
    return MuModel(kappa).tensor(f)


# verification --------------------------------------------------------------------------------------


def verify_equivariance(kappa: KappaSet) -> dict:
    """mu(g xi) == g(mu(xi)) for every generator g and basis vector xi."""
    from .group import act_vector

    G = kappa.group
    M = get_module(G.e, G.n)
    fails = []
    for g in G.generators():
        for i in range(G.n):
            xi = unit_vector(G.n, i, G.level)
            if mu(act_vector(g, xi), kappa, M) != M.act(g, mu(xi, kappa, M)):
                fails.append({"g": g.text(), "i": i + 1})
    return {"checked": len(G.generators()) * G.n, "failures": fails, "ok": not fails}


def verify_commutativity(kappa: KappaSet) -> dict:
    """sigma_2 of every commutator of mu-images of basis vectors vanishes."""
    mm = MuModel(kappa)
    L = kappa.level
    fails = []
    checked = 0
    for i in range(mm.n):
        for j in range(i + 1, mm.n):
            a, b = mm.images[i], mm.images[j]
            t = TensorVec.from_mvecs([a, b], L) - TensorVec.from_mvecs([b, a], L)
            checked += 1
            if not is_zero_in_B(mm.module, t):
                fails.append([i + 1, j + 1])
    return {"checked": checked, "failures": fails, "ok": not fails}


def verify_intertwining(f: Poly, kappa: KappaSet, twist: str = "inverse") -> dict:
    """C_{H,k} mu~(f <-Delta_{H,k}) == mu~(f) <-D_{H,k} in B, for every (H,k).

    With the direct twist the polynomial side uses the left Delta_{H,k}.
    """
    mm = MuModel(kappa)
    G = kappa.group
    side = _delta_side(twist)
    lhs_rep = mm.tensor(f)
    fails = []
    checked = 0
    for H in G.hyperplanes:
        for k in range(1, H.order):
            b = mm.module.symbol_index(H, k)
            right = derivation(mm.module, lhs_rep, b, twist)
            df = delta(H, k, f, side)
            left = mm.tensor(df).scale(c_constant(H, k, kappa, twist)) if df else TensorVec(max(f.degree() - 1, 0))
            checked += 1
            diff = right - left
            if diff.terms and not is_zero_in_B(mm.module, diff):
                fails.append(f"{H.label()};{k}")
    return {"checked": checked, "failures": fails, "ok": not fails}


def _tensor_zero(module: YDModule, t: TensorVec) -> bool:
    if t.degree <= 4:
        return is_zero_in_B(module, t)
    return not symmetrizer(module, t).terms


def hilbert_image(kappa: KappaSet, method: str = "tensor", max_degree: Optional[int] = None, twist: str = "inverse") -> list[int]:
    """dim of mu~(S^d(V)) in B^d for each degree.

    "tensor": rank of sigma_d images of mu~(monomials).
    "pairing": rank of the reduced table of C-products times eps(x^a <-Delta_word),
    built by functional propagation (deterministic, exhaustive over words).
    """
    e, n = kappa.e, kappa.n
    top = top_degree(e, n)
    dmax = top + 1 if max_degree is None else max_degree
    G = kappa.group
    if method == "tensor":
        mm = MuModel(kappa)
        sc = sym_cache(mm.module)
        out = []
        for d in range(dmax + 1):
            ech = Echelon()
            for a in monomials(n, d):
                t = mm.tensor(Poly.monomial(n, G.level, a))
                img = sc.apply(t) if d <= 4 else symmetrizer(mm.module, t)
                ech.add(dict(img.terms))
            out.append(ech.rank)
        if max_degree is None:
            while out and out[-1] == 0:
                out.pop()
        return out
    if method == "pairing":
        side = _delta_side(twist)
        ops = [(H, k) for H in G.hyperplanes for k in range(1, H.order)]
        consts = [c_constant(H, k, kappa, twist) for H, k in ops]
        if not all(consts):
            raise ValueError("kappa is not generic")
        out = []
        for d, basis in functional_spaces(e, n, ops, side):
            if d > dmax:
                break
            out.append(len(basis))
        if max_degree is None:
            while out and out[-1] == 0:
                out.pop()
        return out
    raise ValueError(f"unknown method {method!r}")


def pairing_rank_direct(kappa: KappaSet, d: int, shift: bool = True, twist: str = "inverse") -> int:
    """Rank of [<<mu~(x^a), word>>] by differentiating factored representatives over all words."""
    import itertools

    from .nichols import pair_with_word

    mm = MuModel(kappa)
    reps = [mm.product_sum(Poly.monomial(kappa.n, kappa.level, a)) for a in monomials(kappa.n, d)]
    ech = Echelon()
    for w in itertools.product(range(mm.module.dim), repeat=d):
        col = {}
        for r, ps in enumerate(reps):
            v = pair_with_word(ps, w, shift, twist)
            if v:
                col[r] = v
        ech.add(col)
        if ech.rank == len(reps):
            break
    return ech.rank


def lemma42_path(e: int, n: int, side: str = "right") -> list[tuple[Hyperplane, int]]:
    """(H_j, k_j) with Q <-Delta_{H_1,k_1} ... <-Delta_{H_p,k_p} a nonzero constant, by DFS."""
    G = get_group(e, n)
    ops = [(H, k) for H in G.hyperplanes for k in range(1, H.order)]
    Q = q_poly(e, n)
    seen: set = set()

    def dfs(f: Poly, path: list) -> Optional[list]:
        if f.degree() == 0:
            return path
        key = f
        if key in seen:
            return None
        for H, k in ops:
            g = delta(H, k, f, side)
            if g:
                r = dfs(g, path + [(H, k)])
                if r is not None:
                    return r
        seen.add(key)
        return None

    path = dfs(Q, [])
    if path is None:
        raise RuntimeError("no divided-difference path reduces Q to a nonzero constant")
    return path


def verify_fullness(kappa: KappaSet, twist: str = "inverse") -> dict:
    """Apply the composite derivation of a reducing path to mu~(Q); compare with prod C times the scalar."""
    e, n = kappa.e, kappa.n
    side = _delta_side(twist)
    path = lemma42_path(e, n, side)
    Q = q_poly(e, n)
    f = Q
    for H, k in path:
        f = delta(H, k, f, side)
    scalar = f.constant_term()
    prodC = CycNum.one(kappa.level)
    for H, k in path:
        prodC = prodC * c_constant(H, k, kappa, twist)
    mm = MuModel(kappa)
    ps = mm.product_sum(Q)
    letters = [mm.module.symbol_index(H, k) for H, k in path]
    got = ps.derive_word(letters, twist).constant()
    expected = prodC * scalar
    return {
        "path": [f"{H.label()};{k}" for H, k in path],
        "length": len(path),
        "deg_Q": Q.degree(),
        "scalar": scalar.to_json(),
        "prod_C": prodC.to_json(),
        "value": got.to_json(),
        "ok": bool(scalar) and bool(expected) and got == expected,
    }


def verify_kernel(kappa: KappaSet, method: str = "sigma", twist: str = "direct") -> dict:
    """mu~(f_i) = 0 in B for the fundamental invariants."""
    mm = MuModel(kappa)
    rows = []
    for f in invariants(kappa.e, kappa.n):
        if method == "sigma":
            zero = _tensor_zero(mm.module, mm.tensor(f))
        elif method == "derivations":
            zero = is_zero_by_derivations(mm.module, mm.product_sum(f), twist=twist)
        else:
            raise ValueError(f"unknown method {method!r}")
        rows.append({"degree": f.degree(), "zero": zero})
    return {"method": method, "invariants": rows, "ok": all(r["zero"] for r in rows)}
