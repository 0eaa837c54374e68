"""Canonical factorization of G(e,1,n), the operators Delta_w, the elements [w] and their pairing.

A factorization is a product of level factors omega_n(k_n,a_n) ... omega_1(k_1,a_1):

    omega_m(k, 0) = s_{k+1} ... s_m                   1 <= k <= m
    omega_m(k, a) = s_k ... s_2 t_1^a s_2 ... s_m     1 <= k <= m, 1 <= a <= e-1

On the operator side every s_i to the left of t_1^a becomes the tilde factor
t_i^{e-2} s_i.  The same written letter list drives both Delta_w (rightmost
letter applied first) and [w] (a product in the opposite algebra, so the
rightmost letter is again applied first by nu).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Optional

from .cyclo import CycNum
from .group import GroupElem, Hyperplane, compose, get_group, hi
from .linalg import Echelon
from .model import KappaSet, MuModel, c_constant
from .nichols import pair_with_word, pairing
from .poly import Poly, delta, monomial_label, monomials, top_degree

Letter = tuple  # ("s", i) or ("t", i), 1-based

CONVENTIONS = ("as-written", "k-flipped")
SIDES = ("left", "right")


def omega_group_word(m: int, k: int, a: int) -> list[Letter]:
    if a == 0:
        return [("s", i) for i in range(k + 1, m + 1)]
    return [("s", i) for i in range(k, 1, -1)] + [("t", 1)] * a + [("s", i) for i in range(2, m + 1)]


def omega_letters(m: int, k: int, a: int, e: int) -> list[Letter]:
    """Operator letters of Delta_m(k,a) and [omega_m(k,a)] in written order."""
    if a == 0:
        return [("s", i) for i in range(k + 1, m + 1)]
    out: list[Letter] = []
    for i in range(k, 1, -1):
        out.extend([("t", i)] * (e - 2))
        out.append(("s", i))
    out.extend([("t", 1)] * a)
    out.extend(("s", i) for i in range(2, m + 1))
    return out


def representatives(m: int, e: int) -> list[tuple[int, int]]:
    reps = [(k, 0) for k in range(1, m + 1)]
    reps += [(k, a) for k in range(1, m + 1) for a in range(1, e)]
    return reps


def letter_elem(letter: Letter, e: int, n: int) -> GroupElem:
    G = get_group(e, n)
    kind, i = letter
    return G.s(i) if kind == "s" else G.t(i)


def word_elem(letters: list[Letter], e: int, n: int) -> GroupElem:
    g = GroupElem.identity(e, n)
    for x in letters:
        g = compose(g, letter_elem(x, e, n))
    return g


def omega(m: int, k: int, a: int, e: int, n: int) -> GroupElem:
    return word_elem(omega_group_word(m, k, a), e, n)


@dataclass(frozen=True)
class RSFactorization:
    e: int
    n: int
    levels: tuple  # ((m, k, a), ...) from m = n down to 1
    element: GroupElem

    def letters(self) -> list[Letter]:
        out: list[Letter] = []
        for m, k, a in self.levels:
            out.extend(omega_letters(m, k, a, self.e))
        return out

    def reconstruct(self) -> GroupElem:
        g = GroupElem.identity(self.e, self.n)
        for m, k, a in self.levels:
            g = compose(g, omega(m, k, a, self.e, self.n))
        return g

    def is_trivial_level(self, m: int) -> bool:
        for mm, k, a in self.levels:
            if mm == m:
                return a == 0 and k == m
        raise KeyError(m)

    def to_json(self) -> dict:
        return {
            "element": self.element.text(),
            "levels": [{"m": m, "k": k, "a": a, "trivial": a == 0 and k == m} for m, k, a in self.levels],
            "letters": [f"{x}_{i}" for x, i in self.letters()],
        }


def _fixes_top(g: GroupElem, m: int) -> bool:
    # g lies in the copy of G(e,1,m-1) on coordinates 1..m-1 (coordinates above m already fixed)
    return g.perm[m - 1] == m - 1 and g.colors[m - 1] == 0


def rs_decompose(g: GroupElem) -> RSFactorization:
    e, n = g.e, g.n
    cur = g
    levels = []
    for m in range(n, 0, -1):
        hits = []
        for k, a in representatives(m, e):
            w = omega(m, k, a, e, n)
            rest = compose(w.inverse(), cur)
            if _fixes_top(rest, m):
                hits.append((k, a, rest))
        if len(hits) != 1:
            raise AssertionError(f"level {m}: {len(hits)} admissible representatives for {g.text()}")
        k, a, cur = hits[0]
        levels.append((m, k, a))
    if not cur.is_identity():
        raise AssertionError("factorization did not terminate at the identity")
    f = RSFactorization(e, n, tuple(levels), g)
    assert f.reconstruct() == g
    return f


def rs_letters(g: GroupElem) -> list[Letter]:
    return rs_decompose(g).letters()


# Delta_w ---------------------------------------------------------------------------------------


def letter_operator(letter: Letter, e: int) -> tuple[Hyperplane, int]:
    kind, i = letter
    if kind == "s":
        return Hyperplane(0, i - 2, i - 1, 0, e), 1
    return hi(i - 1, e), 1


def delta_w(g: GroupElem, f: Poly, side: str = "left") -> Poly:
    """Delta_w f with each letter's Delta_{H,1}; ``side="right"`` uses <-Delta_{H,1} instead."""
    for letter in reversed(rs_letters(g)):
        H, k = letter_operator(letter, g.e)
        f = delta(H, k, f, side)
        if not f:
            break
    return f


# [w] --------------------------------------------------------------------------------------------


def letter_symbol(letter: Letter, e: int, convention: str = "as-written") -> tuple[Hyperplane, int]:
    """[s_i] = [H_{i-1,i}(0);1]; [t_i] = [H_i;e-1] as written, [H_i;1] when k-flipped."""
    kind, i = letter
    if kind == "s":
        return Hyperplane(0, i - 2, i - 1, 0, e), 1
    if convention == "as-written":
        return hi(i - 1, e), e - 1
    if convention == "k-flipped":
        return hi(i - 1, e), 1
    raise ValueError(f"unknown convention {convention!r}")


def bracket_word(g: GroupElem, module, convention: str = "as-written") -> tuple[int, ...]:
    """[w] as a word of B: the written letters reversed (opposite-algebra product)."""
    out = []
    for letter in reversed(rs_letters(g)):
        H, k = letter_symbol(letter, g.e, convention)
        out.append(module.symbol_index(H, k))
    return tuple(out)


def bracket_w(g: GroupElem, convention: str = "as-written"):
    from .nichols import BElem
    from .ydmod import get_module

    M = get_module(g.e, g.n)
    return BElem.word(M, bracket_word(g, M, convention))


# pairing table --------------------------------------------------------------------------------------


@dataclass
class PairingTable:
    e: int
    n: int
    kappa: str
    convention: str
    side: str
    twist: str
    rows: list
    columns: list
    left: list
    right: list
    reduced: list

    @property
    def mismatches(self) -> list:
        out = []
        for r, a in enumerate(self.rows):
            for c, w in enumerate(self.columns):
                if self.left[r][c] != self.right[r][c]:
                    out.append({"monomial": monomial_label(a), "element": w.text(),
                                "left": str(self.left[r][c]), "right": str(self.right[r][c])})
        return out

    @property
    def equal(self) -> bool:
        return not self.mismatches

    @property
    def routes_agree(self) -> bool:
        return self.left == self.reduced

    def rank(self, which: str = "left") -> int:
        mat = self.left if which == "left" else self.right
        ech = Echelon()
        for c in range(len(self.columns)):
            ech.add({r: mat[r][c] for r in range(len(self.rows)) if mat[r][c]})
        return ech.rank

    def verdict(self) -> dict:
        order = len(self.columns)
        rank = self.rank("left")
        return {
            "e": self.e, "n": self.n, "kappa": self.kappa, "convention": self.convention,
            "side": self.side, "twist": self.twist,
            "equal": self.equal, "rank": rank, "rank_right": self.rank("right"), "order": order,
            "routes_agree": self.routes_agree,
            "ok": self.equal and rank == order,
            "mismatches": self.mismatches[:20],
            "mismatch_count": len(self.mismatches),
        }

    def to_csv(self, which: str = "left") -> str:
        mat = {"left": self.left, "right": self.right}[which]
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["monomial"] + [w.text() for w in self.columns])
        for r, a in enumerate(self.rows):
            wr.writerow([monomial_label(a)] + [str(v) for v in mat[r]])
        return buf.getvalue()


def pairing_table(e: int, n: int, kappa: KappaSet, convention: str = "as-written", side: str = "left",
                  twist: str = "inverse", max_degree: Optional[int] = None) -> PairingTable:
    """Left: <<mu~(x^a), [w]>> on factored representatives.  Right: eps(Delta_w(x^a)).

    ``reduced`` holds the intertwining route prod C * eps(x^a <-D-matched operators), computed
    from polynomials only.
    """
    G = get_group(e, n)
    L = G.level
    top = top_degree(e, n) if max_degree is None else max_degree
    mm = MuModel(kappa)
    M = mm.module
    cols = list(G.elements)
    rows = [a for d in range(top + 1) for a in monomials(n, d)]
    words = {w: bracket_word(w, M, convention) for w in cols}
    letters = {w: rs_letters(w) for w in cols}
    zero = CycNum.zero(L)
    left, right, reduced = [], [], []
    pd_side = "right" if twist == "inverse" else "left"
    for a in rows:
        f = Poly.monomial(n, L, a)
        ps = mm.product_sum(f)
        lrow, rrow, redrow = [], [], []
        for w in cols:
            word = words[w]
            if len(word) != sum(a):
                lrow.append(zero)
                rrow.append(zero)
                redrow.append(zero)
                continue
            lrow.append(pair_with_word(ps, word, True, twist))
            # right value: Delta_w on polynomials
            g = f
            for lt in reversed(letters[w]):
                H, k = letter_operator(lt, e)
                g = delta(H, k, g, side)
                if not g:
                    break
            rrow.append(g.constant_term() if g else zero)
            # intertwining route: nu([H;k]) matches C_{H,e_H-k} times the divided difference paired with the twist
            h = f
            c = CycNum.one(L)
            for b in word:
                sym = M.symbols[b]
                kk = sym.H.order - sym.k
                c = c * c_constant(sym.H, kk, kappa, twist)
                h = delta(sym.H, kk, h, pd_side)
                if not h:
                    break
            redrow.append(c * h.constant_term() if h else zero)
        left.append(lrow)
        right.append(rrow)
        reduced.append(redrow)
    return PairingTable(e, n, kappa.name, convention, side, twist, rows, cols, left, right, reduced)


def tensor_pairing_check(e: int, n: int, kappa: KappaSet, convention: str = "as-written", twist: str = "inverse",
                         max_degree: int = 3) -> bool:
    """Left values via nichols.pairing on fully expanded tensors agree with the factored route."""
    from .nichols import pairing as tensor_pairing
    from .braid import TensorVec

    G = get_group(e, n)
    mm = MuModel(kappa)
    M = mm.module
    one = CycNum.one(G.level)
    for d in range(max_degree + 1):
        for a in monomials(n, d):
            f = Poly.monomial(n, G.level, a)
            t = mm.tensor(f)
            ps = mm.product_sum(f)
            for w in G.elements:
                word = bracket_word(w, M, convention)
                if len(word) != d:
                    continue
                v1 = tensor_pairing(M, t, TensorVec.word(word, one), True, twist)
                v2 = pair_with_word(ps, word, True, twist)
                if v1 != v2:
                    return False
    return True


def delta_functional_rank(e: int, n: int, side: str = "left") -> int:
    """Rank of the functionals eps o Delta_w on polynomials up to top degree."""
    G = get_group(e, n)
    L = G.level
    top = top_degree(e, n)
    rows = [a for d in range(top + 1) for a in monomials(n, d)]
    ech = Echelon()
    for w in G.elements:
        col = {}
        for r, a in enumerate(rows):
            v = delta_w(w, Poly.monomial(n, L, a), side).constant_term()
            if v:
                col[r] = v
        ech.add(col)
    return ech.rank


def bracket_span_dim(e: int, n: int, convention: str = "as-written") -> int:
    """dim span{[w]} in B, by sigma ranks degree by degree."""
    from .braid import TensorVec, sym_cache
    from .ydmod import get_module

    G = get_group(e, n)
    M = get_module(e, n)
    sc = sym_cache(M)
    one = CycNum.one(G.level)
    by_deg: dict[int, Echelon] = {}
    for w in G.elements:
        word = bracket_word(w, M, convention)
        ech = by_deg.setdefault(len(word), Echelon())
        ech.add(dict(sc.apply(TensorVec.word(word, one)).terms))
    return sum(ech.rank for ech in by_deg.values())
