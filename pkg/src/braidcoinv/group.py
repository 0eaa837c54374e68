"""The complex reflection group G(e,1,n) as colored permutations.

An element ``(w, c)`` acts on V = sum C eps_i by eps_i -> zeta^{c_i} eps_{w(i)}
with zeta = exp(2 pi i / e).  Indices are 0-based internally; the text
format and the printed hyperplane labels are 1-based.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .cyclo import CycNum, level_for, zeta

DEFAULT_ORDER_CAP = 50_000


class CapExceeded(RuntimeError):
    """A requested computation exceeds the configured desk-scale cap."""


@dataclass(frozen=True, order=True)
class GroupElem:
    perm: tuple[int, ...]
    colors: tuple[int, ...]
    e: int

    def __post_init__(self):
        if len(self.perm) != len(self.colors):
            raise ValueError("perm and colors lengths differ")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        object.__setattr__(self, "colors", tuple(c % self.e for c in self.colors))

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, e: int, n: int) -> "GroupElem":
        return cls(tuple(range(n)), (0,) * n, e)

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return compose(self, other)

    def inverse(self) -> "GroupElem":
        n = self.n
        perm = [0] * n
        colors = [0] * n
        for i, wi in enumerate(self.perm):
            perm[wi] = i
            colors[wi] = -self.colors[i]
        return GroupElem(tuple(perm), tuple(colors), self.e)

    def __pow__(self, k: int) -> "GroupElem":
        base = self if k >= 0 else self.inverse()
        out = GroupElem.identity(self.e, self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and not any(self.colors)

    def matrix(self, level: Optional[int] = None) -> list[list[CycNum]]:
        """Monomial matrix with column i equal to g(eps_i)."""
        L = level or level_for(self.e)
        zero = CycNum.zero(L)
        m = [[zero] * self.n for _ in range(self.n)]
        for i, (wi, ci) in enumerate(zip(self.perm, self.colors)):
            m[wi][i] = zeta(L, self.e, ci)
        return m

    def det(self, level: Optional[int] = None) -> CycNum:
        L = level or level_for(self.e)
        inversions = sum(
            1 for i in range(self.n) for j in range(i + 1, self.n) if self.perm[i] > self.perm[j]
        )
        sign = -1 if inversions % 2 else 1
        return zeta(L, self.e, sum(self.colors)) * sign

    def text(self) -> str:
        return "w: " + " ".join(str(p + 1) for p in self.perm) + "; c: " + " ".join(map(str, self.colors))

    def __str__(self) -> str:
        return self.text()


def compose(g: GroupElem, h: GroupElem) -> GroupElem:
    """(g h)(eps_i) = g(h(eps_i))."""
    if g.e != h.e or g.n != h.n:
        raise ValueError("elements from different groups")
    perm = tuple(g.perm[h.perm[i]] for i in range(h.n))
    colors = tuple(h.colors[i] + g.colors[h.perm[i]] for i in range(h.n))
    return GroupElem(perm, colors, g.e)


_TEXT_RE = re.compile(r"^\s*w:\s*([\d\s]+);\s*c:\s*([\d\s-]+)\s*$")


def parse_element(text: str, e: int) -> GroupElem:
    """Parse the one-line form ``"w: 2 1; c: 0 1"``."""
    m = _TEXT_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse group element {text!r}")
    perm = tuple(int(t) - 1 for t in m.group(1).split())
    colors = tuple(int(t) for t in m.group(2).split())
    return GroupElem(perm, colors, e)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """H_ij(a): x_i - zeta^a x_j = 0 (i < j), or H_i: x_i = 0.

    ``kind`` is 0 for H_ij and 1 for H_i so the dataclass ordering matches
    the canonical order: H_ij lex by (i, j, a), then H_i by i.
    """

    kind: int
    i: int
    j: int
    a: int
    e: int

    @property
    def order(self) -> int:
        """e_H."""
        return 2 if self.kind == 0 else self.e

    def label(self) -> str:
        if self.kind == 0:
            return f"H({self.i + 1},{self.j + 1};{self.a})"
        return f"H({self.i + 1})"

    def __str__(self) -> str:
        return self.label()


def hij(i: int, j: int, a: int, e: int) -> tuple[Hyperplane, CycNum]:
    """Canonical H_ij(a) for any i != j, with the normal rescaling factor.

    For i > j, H_ij(a) is the hyperplane H_ji(-a); the returned scalar ``r``
    satisfies v_{H_ij(a)} = r * v_canonical when the formal normal
    eps_i - zeta^{-a} eps_j is used.
    """
    if i == j:
        raise ValueError("H_ij needs distinct indices")
    L = level_for(e)
    if i < j:
        return Hyperplane(0, i, j, a % e, e), CycNum.one(L)
    # eps_i - zeta^{-a} eps_j = -zeta^{-a} (eps_j - zeta^{a} eps_i)
    return Hyperplane(0, j, i, (-a) % e, e), -zeta(L, e, -a)


def hi(i: int, e: int) -> Hyperplane:
    return Hyperplane(1, i, -1, 0, e)


def normal_vector(H: Hyperplane, n: int, level: Optional[int] = None) -> tuple[CycNum, ...]:
    L = level or level_for(H.e)
    zero = CycNum.zero(L)
    v = [zero] * n
    v[H.i] = CycNum.one(L)
    if H.kind == 0:
        v[H.j] = -zeta(L, H.e, -H.a)
    return tuple(v)


def norm_squared(H: Hyperplane) -> int:
    return 2 if H.kind == 0 else 1


def act_vector(g: GroupElem, v: Sequence[CycNum]) -> tuple[CycNum, ...]:
    if len(v) != g.n:
        raise ValueError("vector length does not match n")
    L = v[0].level
    out = [CycNum.zero(L)] * g.n
    for i, (wi, ci) in enumerate(zip(g.perm, g.colors)):
        if v[i]:
            out[wi] = out[wi] + v[i] * zeta(L, g.e, ci)
    return tuple(out)


def hermitian(x: Sequence[CycNum], y: Sequence[CycNum]) -> CycNum:
    """<x, y> = sum x_i conj(y_i)."""
    acc = CycNum.zero(x[0].level)
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b.conj()
    return acc


def reflect(H: Hyperplane, eigenvalue: CycNum, xi: Sequence[CycNum]) -> tuple[CycNum, ...]:
    """xi - (1 - eigenvalue) <xi, v_H> v_H / |v_H|^2."""
    v = normal_vector(H, len(xi), xi[0].level)
    c = (1 - eigenvalue) * hermitian(xi, v) / norm_squared(H)
    return tuple(a - c * b for a, b in zip(xi, v))


@lru_cache(maxsize=None)
def act_hyperplane(g: GroupElem, H: Hyperplane) -> tuple[Hyperplane, CycNum]:
    """(gH, lambda(g, H)) with g(v_H) = lambda(g, H) v_{gH}."""
    e = g.e
    L = level_for(e)
    if H.kind == 1:
        return hi(g.perm[H.i], e), zeta(L, e, g.colors[H.i])
    i, j, a = H.i, H.j, H.a
    p, q = g.perm[i], g.perm[j]
    ci, cj = g.colors[i], g.colors[j]
    # g(v) = zeta^{ci} eps_p - zeta^{cj - a} eps_q = zeta^{ci} (eps_p - zeta^{-(a + ci - cj)} eps_q)
    K, r = hij(p, q, a + ci - cj, e)
    return K, zeta(L, e, ci) * r


def check_proportional(g: GroupElem, H: Hyperplane) -> bool:
    """Verify g(v_H) = lambda v_{gH} coordinatewise."""
    K, lam = act_hyperplane(g, H)
    lhs = act_vector(g, normal_vector(H, g.n))
    rhs = tuple(lam * c for c in normal_vector(K, g.n))
    return lhs == rhs


@lru_cache(maxsize=None)
def distinguished_generator(H: Hyperplane, n: int) -> GroupElem:
    """g_H: fixes H pointwise with det = zeta_{e_H}."""
    e = H.e
    perm = list(range(n))
    colors = [0] * n
    if H.kind == 1:
        colors[H.i] = 1
    else:
        # eps_i -> zeta^{-a} eps_j, eps_j -> zeta^{a} eps_i
        perm[H.i], perm[H.j] = H.j, H.i
        colors[H.i] = -H.a
        colors[H.j] = H.a
    return GroupElem(tuple(perm), tuple(colors), e)


@lru_cache(maxsize=None)
def generator_power(H: Hyperplane, n: int, k: int) -> GroupElem:
    return distinguished_generator(H, n) ** (k % H.order)


def hyperplanes(e: int, n: int) -> list[Hyperplane]:
    """All reflection hyperplanes in canonical order."""
    out = [Hyperplane(0, i, j, a, e) for i in range(n) for j in range(i + 1, n) for a in range(e)]
    if e > 1:
        out += [hi(i, e) for i in range(n)]
    return out


def group_order(e: int, n: int) -> int:
    return e**n * math.factorial(n)


def enumerate_group(e: int, n: int, cap: int = DEFAULT_ORDER_CAP) -> tuple[list[GroupElem], list[Hyperplane]]:
    if e < 1 or n < 1:
        raise ValueError("need e >= 1 and n >= 1")
    if group_order(e, n) > cap:
        raise CapExceeded(f"|G({e},1,{n})| = {group_order(e, n)} exceeds cap {cap}")
    elems = [
        GroupElem(perm, colors, e)
        for perm in itertools.permutations(range(n))
        for colors in itertools.product(range(e), repeat=n)
    ]
    return elems, hyperplanes(e, n)


class ReflectionGroup:
    """G(e,1,n) with cached element list and hyperplane data."""

    def __init__(self, e: int, n: int, cap: int = DEFAULT_ORDER_CAP):
        self.e = e
        self.n = n
        self.level = level_for(e)
        self.cap = cap
        self.hyperplanes = hyperplanes(e, n)

    def __repr__(self) -> str:
        return f"G({self.e},1,{self.n})"

    @property
    def order(self) -> int:
        return group_order(self.e, self.n)

    @cached_property
    def elements(self) -> list[GroupElem]:
        return enumerate_group(self.e, self.n, self.cap)[0]

    def identity(self) -> GroupElem:
        return GroupElem.identity(self.e, self.n)

    def zeta(self, power: int = 1) -> CycNum:
        return zeta(self.level, self.e, power)

    def zeta_H(self, H: Hyperplane, power: int = 1) -> CycNum:
        return zeta(self.level, H.order, power)

    def g_H(self, H: Hyperplane, k: int = 1) -> GroupElem:
        return generator_power(H, self.n, k)

    def s(self, i: int) -> GroupElem:
        """s_i = s_{i-1,i}(0) for 2 <= i <= n (1-based)."""
        return self.g_H(Hyperplane(0, i - 2, i - 1, 0, self.e))

    def t(self, i: int) -> GroupElem:
        """t_i = g_{H_i} (1-based)."""
        return self.g_H(hi(i - 1, self.e))

    def generators(self) -> list[GroupElem]:
        gens = [self.s(i) for i in range(2, self.n + 1)]
        if self.e > 1:
            gens.append(self.t(1))
        return gens

    def orbit_label(self, H: Hyperplane) -> str:
        """Representative label of the G-orbit of H (two orbits when n >= 2, e > 1)."""
        return "ij" if H.kind == 0 else "i"

    def zero(self) -> CycNum:
        return CycNum.zero(self.level)

    def one(self) -> CycNum:
        return CycNum.one(self.level)


@lru_cache(maxsize=None)
def get_group(e: int, n: int) -> ReflectionGroup:
    return ReflectionGroup(e, n)
