"""The Nichols-Woronowicz algebra B(M_G): products, braided derivations, nu and the pairing.

Elements of B are represented by tensors; equality is always decided by the
symmetrizer.  Right braided derivations follow

    (phi psi) <-D_{H,k} = phi (psi <-D_{H,k}) + (phi <-D_{H,k}) g(psi)

where the twist g is g_H^{-k} (``twist="inverse"``, the default) or g_H^{k}
(``twist="direct"``).  Both agree when e_H = 2.  Only the
direct twist is compatible with Ker(sigma) for e_H > 2 under the braiding
x (x) y -> g_x(y) (x) x; ``descends`` checks this exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .braid import KernelCert, TensorVec, is_zero_in_B, kernel, sym_cache, symmetrizer
from .cyclo import CycNum, zeta
from .linalg import Echelon
from .ydmod import MVec, YDModule

TWISTS = ("inverse", "direct")


def _twist_elem(module: YDModule, b: int, twist: str):
    sym = module.symbols[b]
    if twist == "inverse":
        return module.group.g_H(sym.H, -sym.k)
    if twist == "direct":
        return module.group.g_H(sym.H, sym.k)
    raise ValueError(f"unknown twist {twist!r}")


@dataclass
class BElem:
    """Class of a tensor in B^n = M^{(x)n} / Ker(sigma_n)."""

    module: YDModule
    rep: TensorVec

    @property
    def degree(self) -> int:
        return self.rep.degree

    def __mul__(self, other: "BElem") -> "BElem":
        return BElem(self.module, self.rep.tensor(other.rep))

    def __add__(self, other: "BElem") -> "BElem":
        return BElem(self.module, self.rep + other.rep)

    def __sub__(self, other: "BElem") -> "BElem":
        return BElem(self.module, self.rep - other.rep)

    def scale(self, c: CycNum) -> "BElem":
        return BElem(self.module, self.rep.scale(c))

    def is_zero(self, cert: Optional[KernelCert] = None) -> bool:
        return is_zero_in_B(self.module, self.rep, cert)

    def equals(self, other: "BElem", cert: Optional[KernelCert] = None) -> bool:
        if self.rep.terms and other.rep.terms and self.degree != other.degree:
            return False
        return (self - other).is_zero(cert)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BElem):
            return NotImplemented
        return self.equals(other)

    @classmethod
    def one(cls, module: YDModule) -> "BElem":
        return cls(module, TensorVec.scalar(CycNum.one(module.level)))

    @classmethod
    def generator(cls, module: YDModule, b: int, c: Optional[CycNum] = None) -> "BElem":
        return cls(module, TensorVec.word((b,), c if c is not None else CycNum.one(module.level)))

    @classmethod
    def from_mvec(cls, module: YDModule, x: Mapping[int, CycNum]) -> "BElem":
        return cls(module, TensorVec(1, {(b,): c for b, c in x.items()}))

    @classmethod
    def word(cls, module: YDModule, letters: Sequence[int]) -> "BElem":
        return cls(module, TensorVec.word(tuple(letters), CycNum.one(module.level)))


# derivations ---------------------------------------------------------------------------


def derivation(module: YDModule, t: TensorVec, b: int, twist: str = "inverse") -> TensorVec:
    """t <-D_{H,k} for the basis symbol b = [H;k].

    On a word x_1...x_n the recursion unrolls to
    sum_j [x_j = b] x_1 ... x_{j-1} g(x_{j+1}) ... g(x_n).
    """
    if t.degree == 0:
        return TensorVec(0)
    tab = module.act_table(_twist_elem(module, b, twist))
    out = TensorVec(t.degree - 1)
    for w, c in t.terms.items():
        tail: list[int] = []
        coef = CycNum.one(module.level)
        # walk from the right so the twisted tail is built incrementally
        for j in range(len(w) - 1, -1, -1):
            if w[j] == b:
                out.add_term(w[:j] + tuple(reversed(tail)), c * coef)
            z, s = tab[w[j]]
            tail.append(z)
            coef = coef * s
    return out


def derivation_hk(module: YDModule, t: TensorVec, H, k: int, twist: str = "inverse") -> TensorVec:
    if not 1 <= k <= H.order - 1:
        raise ValueError(f"k={k} out of range for {H}")
    return derivation(module, t, module.symbol_index(H, k), twist)


def nu_letter(module: YDModule, b: int, shift: bool = True) -> int:
    """nu([H;k]) is <-D_{H, e_H - k} (or <-D_{H,k} when unshifted)."""
    if not shift:
        return b
    sym = module.symbols[b]
    return module.symbol_index(sym.H, sym.H.order - sym.k)


def nu_apply(module: YDModule, psi: TensorVec, phi: TensorVec, shift: bool = True, twist: str = "inverse") -> TensorVec:
    """nu(psi)(phi): for each word b_1...b_r of psi apply nu(b_1) first, then nu(b_2), ...

    This makes nu an algebra map from B^op: nu(x y) = nu(y) o nu(x).
    """
    out = TensorVec(phi.degree - psi.degree) if phi.degree >= psi.degree else TensorVec(0)
    for w, c in psi.terms.items():
        cur = phi
        for b in w:
            cur = derivation(module, cur, nu_letter(module, b, shift), twist)
            if not cur.terms:
                break
        if cur.terms:
            out.iadd(cur, c)
    return out


def constant_term(t: TensorVec, level: int) -> CycNum:
    if t.degree != 0:
        return CycNum.zero(level)
    return t.terms.get((), CycNum.zero(level))


def pairing(module: YDModule, phi: TensorVec, psi: TensorVec, shift: bool = True, twist: str = "inverse") -> CycNum:
    """<<phi, psi>> = CT(nu(psi)(phi)); zero when degrees differ."""
    if phi.terms and psi.terms and phi.degree != psi.degree:
        return CycNum.zero(module.level)
    return constant_term(nu_apply(module, psi, phi, shift, twist), module.level)


# factored products --------------------------------------------------------------------------


def _freeze(x: Mapping[int, CycNum]) -> tuple:
    return tuple(sorted(x.items()))


class ProductSum:
    """Sum of coefficient * (m_1 (x) ... (x) m_d) with m_j in M, kept unexpanded.

    Derivations act factor by factor, so long products of degree-one elements
    can be differentiated without expanding d-fold tensor powers.
    """

    def __init__(self, module: YDModule, degree: int, terms: Optional[dict] = None):
        self.module = module
        self.degree = degree
        self.terms: dict[tuple, CycNum] = terms if terms is not None else {}
        self._act: dict = {}

    @classmethod
    def product(cls, module: YDModule, factors: Sequence[Mapping[int, CycNum]], c: Optional[CycNum] = None) -> "ProductSum":
        c = c if c is not None else CycNum.one(module.level)
        ps = cls(module, len(factors))
        if c and all(factors):
            ps.terms[tuple(_freeze(f) for f in factors)] = c
        return ps

    def iadd(self, other: "ProductSum", c: Optional[CycNum] = None) -> "ProductSum":
        if other.terms and self.terms and other.degree != self.degree:
            raise ValueError("degree mismatch")
        if other.terms:
            self.degree = other.degree
        for key, v in other.terms.items():
            if c is not None:
                v = v * c
            u = self.terms.get(key)
            u = v if u is None else u + v
            if u:
                self.terms[key] = u
            else:
                self.terms.pop(key, None)
        return self

    def _act_frozen(self, g, f: tuple) -> tuple:
        key = (g, f)
        r = self._act.get(key)
        if r is None:
            r = _freeze(self.module.act(g, dict(f)))
            self._act[key] = r
        return r

    def derive(self, b: int, twist: str = "inverse") -> "ProductSum":
        g = _twist_elem(self.module, b, twist)
        out = ProductSum(self.module, max(self.degree - 1, 0))
        out._act = self._act
        terms = out.terms
        for key, c in self.terms.items():
            d = len(key)
            for j in range(d):
                coef = dict(key[j]).get(b)
                if coef is None:
                    continue
                tail = tuple(self._act_frozen(g, f) for f in key[j + 1 :])
                if any(not f for f in tail):
                    continue
                nk = key[:j] + tail
                v = c * coef
                u = terms.get(nk)
                u = v if u is None else u + v
                if u:
                    terms[nk] = u
                else:
                    terms.pop(nk, None)
        return out

    def derive_word(self, letters: Iterable[int], twist: str = "inverse") -> "ProductSum":
        cur = self
        for b in letters:
            cur = cur.derive(b, twist)
            if not cur.terms:
                break
        return cur

    def constant(self) -> CycNum:
        if self.degree != 0:
            return CycNum.zero(self.module.level)
        return self.terms.get((), CycNum.zero(self.module.level))

    def expand(self) -> TensorVec:
        out = TensorVec(self.degree)
        for key, c in self.terms.items():
            t = TensorVec.from_mvecs([dict(f) for f in key], self.module.level)
            out.iadd(t, c)
        return out


def pair_with_word(ps: ProductSum, letters: Sequence[int], shift: bool = True, twist: str = "inverse") -> CycNum:
    """<<ps, b_1 ... b_r>> computed on the factored representative."""
    if ps.degree != len(letters):
        return CycNum.zero(ps.module.level)
    mod = ps.module
    return ps.derive_word([nu_letter(mod, b, shift) for b in letters], twist).constant()


# zero testing via derivations -------------------------------------------------------------------


def is_zero_by_derivations(module: YDModule, t, base_degree: int = 3, twist: str = "direct") -> bool:
    """Decide t = 0 in B by recursing on all derivations down to ``base_degree``.

    Sound only for a twist whose derivations descend to B and jointly detect
    nonzero elements of positive degree; cross-checked against sigma in tests.
    """
    if isinstance(t, ProductSum):
        if not t.terms:
            return True
        if t.degree <= base_degree:
            return is_zero_in_B(module, t.expand())
        return all(is_zero_by_derivations(module, t.derive(b, twist), base_degree, twist) for b in range(module.dim))
    if not t.terms:
        return True
    if t.degree <= base_degree:
        return is_zero_in_B(module, t)
    return all(
        is_zero_by_derivations(module, derivation(module, t, b, twist), base_degree, twist)
        for b in range(module.dim)
    )


# verification reports -------------------------------------------------------------------------------


def verify_nilpotency(module: YDModule, b: int) -> dict:
    """sigma_m([H;k]^m) against prod_{j<m} (1 + z^k + ... + z^{jk}) up to m = e_H / gcd(e_H, k)."""
    sym = module.symbols[b]
    eH, k = sym.H.order, sym.k
    L = module.level
    bound = eH // math.gcd(eH, k)
    zk = zeta(L, eH, k)
    rows = []
    ok = True
    expected = CycNum.one(L)
    for m in range(1, bound + 1):
        if m >= 2:
            geo = sum((zk**i for i in range(m)), CycNum.zero(L))
            expected = expected * geo
        t = TensorVec.word((b,) * m, CycNum.one(L))
        got = symmetrizer(module, t).terms.get((b,) * m, CycNum.zero(L))
        match = got == expected
        vanish = not got
        want_vanish = m == bound
        ok = ok and match and (vanish == want_vanish)
        rows.append({"m": m, "coefficient": got.to_json(), "expected": expected.to_json(), "zero": vanish})
    return {"symbol": str(sym), "e_H": eH, "k": k, "bound": bound, "ok": ok, "rows": rows}


def descends(module: YDModule, degree: int, twist: str = "inverse", cert: Optional[KernelCert] = None) -> list:
    """Failures (kernel index, symbol) of sigma_{d-1}(u <-D) = 0 over a kernel basis of sigma_d."""
    cert = cert or kernel(module, degree)
    fails = []
    for idx, u in enumerate(cert.kernel_basis):
        for b in range(module.dim):
            if not is_zero_in_B(module, derivation(module, u, b, twist)):
                fails.append((idx, str(module.symbols[b])))
    return fails


def derivation_rank(module: YDModule, degree: int, twist: str = "direct") -> int:
    """Rank of t -> (sigma_{d-1}(t <-D_b))_b over all basis words of degree d."""
    sc = sym_cache(module)
    ech = Echelon()
    for w in itertools.product(range(module.dim), repeat=degree):
        t = TensorVec.word(w, CycNum.one(module.level))
        row: dict = {}
        for b in range(module.dim):
            img = sc.apply(derivation(module, t, b, twist))
            for u, c in img.terms.items():
                row[(b, u)] = c
        ech.add(row)
    return ech.rank


def gram_rank(module: YDModule, degree: int, shift: bool = True, twist: str = "inverse") -> tuple[int, int]:
    """(rank of the pairing Gram matrix on B^d, dim B^d) using sigma-independent basis words."""
    cert = kernel(module, degree)
    sc = sym_cache(module)
    ech = Echelon()
    basis_words = []
    for w in itertools.product(range(module.dim), repeat=degree):
        if ech.add(dict(sc.on_word(w)))[0]:
            basis_words.append(w)
    one = CycNum.one(module.level)
    rows = []
    for u in basis_words:
        tu = TensorVec.word(u, one)
        rows.append({j: pairing(module, tu, TensorVec.word(v, one), shift, twist) for j, v in enumerate(basis_words)})
    gram = Echelon()
    for r in rows:
        gram.add({k: v for k, v in r.items() if v})
    return gram.rank, cert.rank


# quadratic relations --------------------------------------------------------------------------------

ORIENTATIONS = ("literal", "normal")


def _hij_symbol(module: YDModule, i: int, j: int, a: int, orientation: str) -> tuple[int, CycNum]:
    """Index and scalar of [H_ij(a)] for distinct 0-based i, j.

    For i > j: [H_ij(a)] = -zeta^a [H_ji(-a)] ("literal") or -zeta^{-a} [H_ji(-a)] ("normal",
    the factor relating the two normal vectors).
    """
    from .group import Hyperplane

    e = module.group.e
    L = module.level
    if i < j:
        return module.symbol_index(Hyperplane(0, i, j, a % e, e), 1), CycNum.one(L)
    H = Hyperplane(0, j, i, (-a) % e, e)
    p = a if orientation == "literal" else -a
    return module.symbol_index(H, 1), -zeta(L, e, p)


def _hi_symbol(module: YDModule, i: int, s: int) -> tuple[int, CycNum]:
    from .group import hi

    return module.symbol_index(hi(i, module.group.e), s), CycNum.one(module.level)


def _quad(terms: list) -> TensorVec:
    """sum of c * x (x) y for (c, (bx, cx), (by, cy))."""
    out = TensorVec(2)
    for c, (bx, cx), (by, cy) in terms:
        out.add_term((bx, by), c * cx * cy)
    return out


def quadratic_relations(module: YDModule, orientation: str = "literal") -> dict[int, list]:
    """Instances of the six relation families as (label, tensor) lists."""
    G = module.group
    e, n = G.e, G.n
    L = module.level
    z = lambda p: zeta(L, e, p)
    one = CycNum.one(L)
    H = lambda i, j, a: _hij_symbol(module, i, j, a, orientation)
    fam: dict[int, list] = {f: [] for f in range(1, 7)}
    rng = range(n)
    for i, j, k in itertools.permutations(rng, 3):
        for a in range(e):
            for b in range(e):
                t = _quad([
                    (one, H(i, j, a), H(j, k, b)),
                    (-z(a), H(i, k, a + b), H(i, j, a)),
                    (-one, H(j, k, b), H(i, k, a + b)),
                ])
                fam[1].append((f"i={i+1} j={j+1} k={k+1} a={a} b={b}", t))
    for i, j in itertools.permutations(rng, 2):
        for a in range(e):
            for b in range(e):
                N = e // math.gcd(e, 2 * (a - b))
                d = a - b
                terms = [(z(2 * p * d), H(i, j, a + 2 * p * d), H(i, j, b + 2 * p * d)) for p in range(1, N + 1)]
                terms += [(-z((2 * q - 1) * d), H(i, j, b + 2 * q * d), H(i, j, a + 2 * (q - 1) * d)) for q in range(1, N + 1)]
                fam[2].append((f"i={i+1} j={j+1} a={a} b={b}", _quad(terms)))
    if e > 1:
        for i, j in itertools.permutations(rng, 2):
            for a in range(e):
                for s in range(1, e):
                    t = _quad([
                        (one, H(i, j, a), _hi_symbol(module, i, s)),
                        (-z(-a), _hi_symbol(module, j, s), H(i, j, a)),
                        (z(-a), H(i, j, a - s), _hi_symbol(module, j, s)),
                        (-z(-s), _hi_symbol(module, i, s), H(i, j, a - s)),
                    ])
                    fam[3].append((f"i={i+1} j={j+1} a={a} s={s}", t))
    for i, j, k, l in itertools.permutations(rng, 4):
        for a in range(e):
            for b in range(e):
                t = _quad([(one, H(i, j, a), H(k, l, b)), (-one, H(k, l, b), H(i, j, a))])
                fam[4].append((f"i={i+1} j={j+1} k={k+1} l={l+1} a={a} b={b}", t))
    if e > 1:
        for i, j in itertools.permutations(rng, 2):
            for s in range(1, e):
                for u in range(1, e):
                    t = _quad([(one, _hi_symbol(module, i, s), _hi_symbol(module, j, u)),
                               (-one, _hi_symbol(module, j, u), _hi_symbol(module, i, s))])
                    fam[5].append((f"i={i+1} j={j+1} s={s} t={u}", t))
        for i, j, k in itertools.permutations(rng, 3):
            for a in range(e):
                for s in range(1, e):
                    t = _quad([(one, H(i, j, a), _hi_symbol(module, k, s)),
                               (-one, _hi_symbol(module, k, s), H(i, j, a))])
                    fam[6].append((f"i={i+1} j={j+1} k={k+1} a={a} s={s}", t))
    return fam


def verify_quadratic(module: YDModule, orientation: str = "literal") -> list[dict]:
    """One report per family: {family, tuples_checked, failures}."""
    sc = sym_cache(module)
    reports = []
    for f, rels in quadratic_relations(module, orientation).items():
        fails = [label for label, t in rels if t.terms and sc.apply(t).terms]
        reports.append({"family": f, "tuples_checked": len(rels), "failures": fails})
    return reports


def quadratic_span_rank(module: YDModule, orientation: str = "literal", families=(1, 4), squares: bool = True) -> int:
    """Rank of the chosen families together with the squares [H_ij(0)]^2."""
    ech = Echelon()
    fam = quadratic_relations(module, orientation)
    for f in families:
        for _, t in fam[f]:
            ech.add(dict(t.terms))
    if squares:
        G = module.group
        for H in G.hyperplanes:
            if H.kind == 0 and H.a == 0:
                b = module.symbol_index(H, 1)
                ech.add({(b, b): CycNum.one(module.level)})
    return ech.rank
