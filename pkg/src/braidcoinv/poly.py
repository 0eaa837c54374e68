"""Polynomials in x_1..x_n over Q(zeta), the G-action and divided differences.

The variables are identified with the basis vectors eps_i, so g acts on
degree one by x_i -> zeta^{c_i} x_{w(i)}.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .cyclo import CycNum, zeta
from .group import GroupElem, Hyperplane, get_group, hermitian, normal_vector
from .linalg import Echelon

Exponent = tuple


class Poly:
    """Sparse polynomial: exponent tuple -> nonzero CycNum."""

    __slots__ = ("n", "level", "terms")

    def __init__(self, n: int, level: int, terms: Optional[Mapping[Exponent, CycNum]] = None):
        self.n = n
        self.level = level
        self.terms: dict[Exponent, CycNum] = {}
        if terms:
            for a, c in terms.items():
                if c:
                    self.terms[tuple(a)] = c

    @classmethod
    def zero(cls, n: int, level: int) -> "Poly":
        return cls(n, level)

    @classmethod
    def constant(cls, n: int, level: int, c) -> "Poly":
        if not isinstance(c, CycNum):
            c = CycNum.rational(level, c)
        return cls(n, level, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, level: int, i: int) -> "Poly":
        """x_{i+1} (0-based index)."""
        a = [0] * n
        a[i] = 1
        return cls(n, level, {tuple(a): CycNum.one(level)})

    @classmethod
    def monomial(cls, n: int, level: int, alpha: Sequence[int], c: Optional[CycNum] = None) -> "Poly":
        return cls(n, level, {tuple(alpha): c if c is not None else CycNum.one(level)})

    @classmethod
    def linear(cls, coeffs: Sequence[CycNum]) -> "Poly":
        n = len(coeffs)
        level = coeffs[0].level
        p = cls(n, level)
        for i, c in enumerate(coeffs):
            if c:
                a = [0] * n
                a[i] = 1
                p.terms[tuple(a)] = c
        return p

    def copy(self) -> "Poly":
        p = Poly(self.n, self.level)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.n, self.level, {a: c for a, c in self.terms.items() if sum(a) == d})

    def constant_term(self) -> CycNum:
        return self.terms.get((0,) * self.n, CycNum.zero(self.level))

    def _iadd(self, other: "Poly", c: Optional[CycNum] = None) -> "Poly":
        t = self.terms
        for a, v in other.terms.items():
            if c is not None:
                v = v * c
            u = t.get(a)
            u = v if u is None else u + v
            if u:
                t[a] = u
            else:
                t.pop(a, None)
        return self

    def __add__(self, other: "Poly") -> "Poly":
        return self.copy()._iadd(other)

    def __sub__(self, other: "Poly") -> "Poly":
        return self.copy()._iadd(other, CycNum.rational(self.level, -1))

    def __neg__(self) -> "Poly":
        return Poly(self.n, self.level, {a: -c for a, c in self.terms.items()})

    def scale(self, c) -> "Poly":
        if not isinstance(c, CycNum):
            c = CycNum.rational(self.level, c)
        if not c:
            return Poly(self.n, self.level)
        return Poly(self.n, self.level, {a: v * c for a, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                v = c * d
                u = out.get(k)
                u = v if u is None else u + v
                if u:
                    out[k] = u
                else:
                    out.pop(k, None)
        p = Poly(self.n, self.level)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        r = Poly.constant(self.n, self.level, 1)
        for _ in range(k):
            r = r * self
        return r

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Exponent, CycNum]]:
        """Graded lex: higher degree first, then lex on exponents."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(a) if p)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {"n": self.n, "L": self.level, "terms": [[list(a), c.to_json()] for a, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        return cls(data["n"], data["L"], {tuple(a): CycNum.from_json(c) for a, c in data["terms"]})


def monomial_label(alpha: Sequence[int]) -> str:
    s = "*".join(f"x{i + 1}" + (f"^{p}" if p > 1 else "") for i, p in enumerate(alpha) if p)
    return s or "1"


def monomials(n: int, d: int) -> list[Exponent]:
    """Exponent vectors of total degree d in graded-lex order."""
    out = [a for a in itertools.product(range(d + 1), repeat=n) if sum(a) == d]
    out.sort(key=lambda a: tuple(-x for x in a))
    return out


# G-action ------------------------------------------------------------------------------------


def act_poly(g: GroupElem, f: Poly) -> Poly:
    """Algebra automorphism with x_i -> zeta^{c_i} x_{w(i)}."""
    L = f.level
    scal = [zeta(L, g.e, c) for c in g.colors]
    out: dict = {}
    for a, c in f.terms.items():
        b = [0] * f.n
        s = c
        for i, p in enumerate(a):
            if p:
                b[g.perm[i]] = p
                s = s * scal[i] ** p
        out[tuple(b)] = s
    p = Poly(f.n, L)
    p.terms = out
    return p


def pullback(f: Poly, g: GroupElem) -> Poly:
    """f o g, with g acting on coordinates through its matrix."""
    # (g x)_{w(j)} = zeta^{c_j} x_j, so x_{w(j)} -> zeta^{c_j} x_j
    L = f.level
    n = f.n
    src = [0] * n
    scal = [CycNum.one(L)] * n
    for j in range(n):
        src[g.perm[j]] = j
        scal[g.perm[j]] = zeta(L, g.e, g.colors[j])
    out: dict = {}
    for a, c in f.terms.items():
        b = [0] * n
        s = c
        for i, p in enumerate(a):
            if p:
                b[src[i]] = p
                s = s * scal[i] ** p
        out[tuple(b)] = s
    p = Poly(n, L)
    p.terms = out
    return p


# linear forms ------------------------------------------------------------------------------------


def alpha_form(H: Hyperplane, n: int, level: int) -> Poly:
    """alpha_{H_ij(a)} = x_i - zeta^a x_j, alpha_{H_i} = x_i."""
    c = [CycNum.zero(level)] * n
    c[H.i] = CycNum.one(level)
    if H.kind == 0:
        c[H.j] = -zeta(level, H.e, H.a)
    return Poly.linear(c)


def normal_form(H: Hyperplane, n: int, level: int) -> Poly:
    """v_H as a polynomial: x_i - zeta^{-a} x_j or x_i."""
    c = [CycNum.zero(level)] * n
    c[H.i] = CycNum.one(level)
    if H.kind == 0:
        c[H.j] = -zeta(level, H.e, -H.a)
    return Poly.linear(c)


class DivisionError(ArithmeticError):
    pass


def divide_linear(f: Poly, i: int, j: Optional[int] = None, c: Optional[CycNum] = None) -> Poly:
    """Exact quotient f / (x_i - c x_j), or f / x_i when j is None.

    Synthetic division in x_i; a nonzero remainder raises DivisionError.
    """
    n, L = f.n, f.level
    if j is None:
        out = {}
        for a, v in f.terms.items():
            if a[i] == 0:
                raise DivisionError("not divisible by the linear form")
            b = list(a)
            b[i] -= 1
            out[tuple(b)] = v
        p = Poly(n, L)
        p.terms = out
        return p
    # slices by power of x_i, keys with x_i exponent zeroed
    slices: dict[int, dict] = {}
    for a, v in f.terms.items():
        b = list(a)
        m = b[i]
        b[i] = 0
        slices.setdefault(m, {})[tuple(b)] = v
    if not slices:
        return Poly(n, L)
    top = max(slices)
    q: dict[int, dict] = {}
    carry: dict = {}
    for m in range(top, 0, -1):
        cur = dict(slices.get(m, {}))
        for b, v in carry.items():
            u = cur.get(b)
            u = v if u is None else u + v
            if u:
                cur[b] = u
            else:
                cur.pop(b, None)
        q[m - 1] = cur
        carry = {}
        for b, v in cur.items():
            bb = list(b)
            bb[j] += 1
            carry[tuple(bb)] = v * c
    rem = dict(slices.get(0, {}))
    for b, v in carry.items():
        u = rem.get(b)
        u = v if u is None else u + v
        if u:
            rem[b] = u
        else:
            rem.pop(b, None)
    if rem:
        raise DivisionError("not divisible by the linear form")
    out = {}
    for m, cur in q.items():
        for b, v in cur.items():
            bb = list(b)
            bb[i] = m
            out[tuple(bb)] = v
    p = Poly(n, L)
    p.terms = out
    return p


def divide_by_form(f: Poly, H: Hyperplane, which: str = "normal") -> Poly:
    L = f.level
    if H.kind == 1:
        return divide_linear(f, H.i)
    a = -H.a if which == "normal" else H.a
    return divide_linear(f, H.i, H.j, zeta(L, H.e, a))


# divided differences -------------------------------------------------------------------------------


def delta(H: Hyperplane, k: int, f: Poly, side: str = "left") -> Poly:
    """Delta_{H,k} f = (f - g_H^k f)/v_H (left) or (f - g_H^{-k} f)/v_H (right)."""
    if not 1 <= k <= H.order - 1:
        raise ValueError(f"k={k} out of range for {H}")
    if side not in ("left", "right"):
        raise ValueError(f"unknown side {side!r}")
    G = get_group(H.e, f.n)
    g = G.g_H(H, k if side == "left" else -k)
    num = f - act_poly(g, f)
    return divide_by_form(num, H)


def delta_word(word: Iterable[tuple[Hyperplane, int]], f: Poly, side: str = "right") -> Poly:
    """Apply the operators in the order listed (first pair first)."""
    for H, k in word:
        f = delta(H, k, f, side)
        if not f:
            break
    return f


def is_invariant(f: Poly, e: int) -> bool:
    G = get_group(e, f.n)
    return all(act_poly(g, f) == f for g in G.generators())


def all_deltas_vanish(f: Poly, e: int) -> bool:
    G = get_group(e, f.n)
    return all(not delta(H, k, f) for H in G.hyperplanes for k in range(1, H.order))


def twisted_leibniz_holds(H: Hyperplane, k: int, f1: Poly, f2: Poly) -> bool:
    G = get_group(H.e, f1.n)
    lhs = delta(H, k, f1 * f2)
    rhs = delta(H, k, f1) * f2 + act_poly(G.g_H(H, k), f1) * delta(H, k, f2)
    return lhs == rhs


# invariants and Q -------------------------------------------------------------------------------------


def elementary(vals: Sequence[Poly], r: int) -> Poly:
    n, L = vals[0].n, vals[0].level
    acc = Poly(n, L)
    for idx in itertools.combinations(range(len(vals)), r):
        p = Poly.constant(n, L, 1)
        for i in idx:
            p = p * vals[i]
        acc = acc + p
    return acc


def invariants(e: int, n: int) -> list[Poly]:
    """E_r(x_1^e, ..., x_n^e) for r = 1..n."""
    L = get_group(e, n).level
    xe = [Poly.variable(n, L, i) ** e for i in range(n)]
    out = [elementary(xe, r) for r in range(1, n + 1)]
    for f in out:
        assert all_deltas_vanish(f, e), "fundamental invariant failed the invariance criterion"
    return out


def q_poly(e: int, n: int) -> Poly:
    """Q = prod_H v_H^{e_H - 1}."""
    G = get_group(e, n)
    Q = Poly.constant(n, G.level, 1)
    for H in G.hyperplanes:
        Q = Q * normal_form(H, n, G.level) ** (H.order - 1)
    return Q


def det_power_check(g: GroupElem, Q: Poly) -> bool:
    """g(Q) == det(g)^{-1} Q."""
    return act_poly(g, Q) == Q.scale(g.det(Q.level).inv())


# Hilbert function of the coinvariant algebra -------------------------------------------------------------


def top_degree(e: int, n: int) -> int:
    return sum(H.order - 1 for H in get_group(e, n).hyperplanes)


def _hilbert_ideal(e: int, n: int) -> list[int]:
    G = get_group(e, n)
    L = G.level
    inv = invariants(e, n)
    top = top_degree(e, n)
    out = []
    for d in range(top + 2):
        mons = monomials(n, d)
        ech = Echelon()
        for f in inv:
            df = f.degree()
            if df > d:
                continue
            for m in monomials(n, d - df):
                ech.add(dict((Poly.monomial(n, L, m) * f).terms))
        out.append(len(mons) - ech.rank)
    while out and out[-1] == 0:
        out.pop()
    return out


def delta_matrix(H: Hyperplane, k: int, n: int, d: int, level: int, side: str = "right") -> dict:
    """Columns of a divided difference on degree-d monomials: alpha -> polynomial terms."""
    return {a: delta(H, k, Poly.monomial(n, level, a), side).terms for a in monomials(n, d)}


def functional_spaces(e: int, n: int, ops: Sequence[tuple[Hyperplane, int]], side: str = "right", pre=None):
    """Yield (d, basis) where basis spans {eps o Delta_{h_d} ... o Delta_{h_1}} on degree-d polynomials.

    Functionals are dicts over degree-d exponents.  Built by propagation
    W_d = span{phi o Delta_h : phi in W_{d-1}}; ``pre`` optionally rescales
    each composed functional per operator (used for constant factors).
    """
    G = get_group(e, n)
    L = G.level
    top = top_degree(e, n)
    zero = (0,) * n
    basis = [{zero: CycNum.one(L)}]
    yield 0, basis
    for d in range(1, top + 2):
        mats = [delta_matrix(H, k, n, d, L, side) for H, k in ops]
        ech = Echelon()
        new = []
        for phi in basis:
            for mat in mats:
                row = {}
                for a, img in mat.items():
                    s = CycNum.zero(L)
                    for b, v in img.items():
                        w = phi.get(b)
                        if w is not None:
                            s = s + w * v
                    if s:
                        row[a] = s
                if row and ech.add(row)[0]:
                    new.append(row)
        basis = new
        yield d, basis
        if not basis:
            return


def _hilbert_pairing(e: int, n: int) -> list[int]:
    G = get_group(e, n)
    ops = [(H, k) for H in G.hyperplanes for k in range(1, H.order)]
    out = []
    for d, basis in functional_spaces(e, n, ops):
        out.append(len(basis))
    while out and out[-1] == 0:
        out.pop()
    return out


@lru_cache(maxsize=None)
def hilbert_PG(e: int, n: int, method: str = "ideal") -> tuple[int, ...]:
    if method == "ideal":
        return tuple(_hilbert_ideal(e, n))
    if method == "pairing":
        return tuple(_hilbert_pairing(e, n))
    raise ValueError(f"unknown method {method!r}")


def expected_hilbert(e: int, n: int) -> list[int]:
    """Coefficients of prod_{r=1..n} (1 + t + ... + t^{re - 1})."""
    coeffs = [1]
    for r in range(1, n + 1):
        m = r * e
        new = [0] * (len(coeffs) + m - 1)
        for i, c in enumerate(coeffs):
            for j in range(m):
                new[i + j] += c
        coeffs = new
    return coeffs


# Dunkl operators ------------------------------------------------------------------------------------------


def partial(f: Poly, xi: Sequence[CycNum]) -> Poly:
    """Directional derivative sum_i xi_i d/dx_i."""
    out = Poly(f.n, f.level)
    for i, c in enumerate(xi):
        if not c:
            continue
        part = {}
        for a, v in f.terms.items():
            if a[i]:
                b = list(a)
                b[i] -= 1
                part[tuple(b)] = v * a[i]
        out._iadd(Poly(f.n, f.level, part), c)
    return out


def dunkl_apply(xi: Sequence[CycNum], f: Poly, kappa, e: int) -> Poly:
    """T_xi f = d_xi f - sum_{H,i,k} alpha_H(xi) kappa_{H,i} zeta_H^{-ik} (f - f o g_H^k) / alpha_H.

    Polynomials are functions here, so g_H^{-k} acts by pullback along g_H^k.
    """
    G = get_group(e, f.n)
    L = f.level
    out = partial(f, xi)
    for H in G.hyperplanes:
        a_xi = hermitian_pair(xi, H, f.n, L)
        if not a_xi:
            continue
        eH = H.order
        for k in range(1, eH):
            coef = CycNum.zero(L)
            for i in range(1, eH):
                coef = coef + kappa.value(H, i) * zeta(L, eH, -i * k)
            if not coef:
                continue
            num = f - pullback(f, G.g_H(H, k))
            if not num:
                continue
            out._iadd(divide_by_form(num, H, which="alpha"), -(a_xi * coef))
    return out


def hermitian_pair(xi: Sequence[CycNum], H: Hyperplane, n: int, level: int) -> CycNum:
    """alpha_H(xi) = <xi, v_H> = sum xi_i conj(v_i)."""
    return hermitian(tuple(xi), normal_vector(H, n, level))
