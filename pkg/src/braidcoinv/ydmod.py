"""The Yetter-Drinfeld module M_G over G(e,1,n) with basis symbols [H;k].

Basis order: every [H_ij(a);1] lex by (i, j, a), then [H_i;s] lex by (i, s).
A vector is an ``MVec``: a dict from basis index to nonzero CycNum.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from .cyclo import CycNum
from .group import GroupElem, Hyperplane, ReflectionGroup, act_hyperplane, compose, get_group


class Symbol(tuple):
    """Basis symbol (H, k)."""

    __slots__ = ()

    def __new__(cls, H: Hyperplane, k: int):
        if not 1 <= k <= H.order - 1:
            raise ValueError(f"k={k} out of range for {H} (e_H={H.order})")
        return super().__new__(cls, (H, k))

    @property
    def H(self) -> Hyperplane:
        return self[0]

    @property
    def k(self) -> int:
        return self[1]

    def __str__(self) -> str:
        H = self.H
        if H.kind == 0:
            return f"[H({H.i + 1},{H.j + 1};{H.a});{self.k}]"
        return f"[H({H.i + 1});{self.k}]"

    __repr__ = __str__


MVec = dict


class YDModule:
    """M_G with its G-action, G-grading and braiding tables."""

    def __init__(self, group: ReflectionGroup):
        self.group = group
        G = group
        self.level = G.level
        self.symbols: list[Symbol] = [Symbol(H, k) for H in G.hyperplanes for k in range(1, H.order)]
        self.index: dict[Symbol, int] = {b: i for i, b in enumerate(self.symbols)}
        self.dim = len(self.symbols)
        self._act_cache: dict[GroupElem, list[tuple[int, CycNum]]] = {}

    def __repr__(self) -> str:
        return f"M_{self.group!r} (dim {self.dim})"

    def symbol_index(self, H: Hyperplane, k: int) -> int:
        return self.index[Symbol(H, k)]

    # G-action ---------------------------------------------------------------
    def act_table(self, g: GroupElem) -> list[tuple[int, CycNum]]:
        """For each basis index, (image index, scalar) under g."""
        tab = self._act_cache.get(g)
        if tab is None:
            tab = []
            for b in self.symbols:
                K, lam = act_hyperplane(g, b.H)
                tab.append((self.index[Symbol(K, b.k)], lam.conj().inv()))
            self._act_cache[g] = tab
        return tab

    def act(self, g: GroupElem, x: Mapping[int, CycNum]) -> MVec:
        """g([H;k]) = conj(lambda(g,H))^{-1} [gH;k], extended linearly."""
        tab = self.act_table(g)
        out: MVec = {}
        for b, c in x.items():
            j, s = tab[b]
            v = out.get(j)
            v = c * s if v is None else v + c * s
            if v:
                out[j] = v
            else:
                out.pop(j, None)
        return out

    # G-grading -------------------------------------------------------------------
    def grading(self, b: int) -> GroupElem:
        """deg_G([H;k]) = g_H^k."""
        sym = self.symbols[b]
        return self.group.g_H(sym.H, sym.k)

    def grading_inverse(self, b: int) -> GroupElem:
        sym = self.symbols[b]
        return self.group.g_H(sym.H, -sym.k)

    # braiding ---------------------------------------------------------------------
    @cached_property
    def braid_table(self) -> dict[tuple[int, int], tuple[int, int, CycNum]]:
        """Psi([b]x[b']) = c * [b'']x[b] stored as (b'', b, c)."""
        tab = {}
        for b in range(self.dim):
            act = self.act_table(self.grading(b))
            for b2 in range(self.dim):
                j, c = act[b2]
                tab[(b, b2)] = (j, b, c)
        return tab

    @cached_property
    def braid_inverse_table(self) -> dict[tuple[int, int], tuple[int, int, CycNum]]:
        inv = {}
        for (b, b2), (j, b_, c) in self.braid_table.items():
            inv[(j, b_)] = (b, b2, c.inv())
        return inv

    def braiding(self, t: Mapping[tuple[int, int], CycNum], inverse: bool = False) -> dict:
        """Psi (or Psi^{-1}) on a degree-2 tensor given as {(b, b'): coeff}."""
        tab = self.braid_inverse_table if inverse else self.braid_table
        out: dict = {}
        for pair, c in t.items():
            x, y, s = tab[pair]
            key = (x, y)
            v = out.get(key)
            v = c * s if v is None else v + c * s
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    # inner product ------------------------------------------------------------------
    def inner(self, x: Mapping[int, CycNum], y: Mapping[int, CycNum]) -> CycNum:
        """Symmetric bilinear form with ([H;k],[H';k']) = delta."""
        acc = CycNum.zero(self.level)
        for b, c in x.items():
            d = y.get(b)
            if d is not None:
                acc = acc + c * d
        return acc

    def basis_vector(self, b: int) -> MVec:
        return {b: CycNum.one(self.level)}

    def check_yd(self, h: GroupElem, b: int) -> bool:
        """deg(h([H;k])) == h g_H^k h^{-1}."""
        j, _ = self.act_table(h)[b]
        return self.grading(j) == compose(compose(h, self.grading(b)), h.inverse())


def mvec_add(x: Mapping[int, CycNum], y: Mapping[int, CycNum], c=None) -> MVec:
    """x + c*y."""
    out = dict(x)
    for b, v in y.items():
        if c is not None:
            v = v * c
        w = out.get(b)
        w = v if w is None else w + v
        if w:
            out[b] = w
        else:
            out.pop(b, None)
    return out


def mvec_scale(x: Mapping[int, CycNum], c: CycNum) -> MVec:
    if not c:
        return {}
    return {b: v * c for b, v in x.items()}


@lru_cache(maxsize=None)
def get_module(e: int, n: int) -> YDModule:
    return YDModule(get_group(e, n))


def dimension(e: int, n: int) -> int:
    return e * n * (n - 1) // 2 + n * (e - 1)
