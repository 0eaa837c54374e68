"""Tensor powers of M_G, the braid operators Psi_w and the Woronowicz symmetrizer.

A ``TensorVec`` maps words (tuples of basis indices, all of one length) to
CycNum coefficients.  Every Psi_i sends a basis word to a scalar multiple of
a basis word, so symmetrizers are computed word by word.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .cyclo import CycNum
from .group import CapExceeded
from .linalg import Echelon, nullspace
from .ydmod import YDModule

DEFAULT_PERM_CAP = 40320
DEFAULT_TENSOR_CAP = 5_000_000

Word = tuple


class TensorVec:
    """Element of M^{(x)n} as a sparse map word -> coefficient."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Optional[Mapping[Word, CycNum]] = None):
        self.degree = degree
        self.terms: dict[Word, CycNum] = {}
        if terms:
            for w, c in terms.items():
                if len(w) != degree:
                    raise ValueError(f"word {w} has length {len(w)}, expected {degree}")
                if c:
                    self.terms[w] = c

    @classmethod
    def word(cls, w: Sequence[int], c: CycNum) -> "TensorVec":
        return cls(len(w), {tuple(w): c})

    @classmethod
    def scalar(cls, c: CycNum) -> "TensorVec":
        return cls(0, {(): c})

    @classmethod
    def from_mvecs(cls, factors: Sequence[Mapping[int, CycNum]], level: int) -> "TensorVec":
        """Expand m_1 (x) ... (x) m_d."""
        terms: dict = {(): CycNum.one(level)}
        for m in factors:
            nxt: dict = {}
            for w, c in terms.items():
                for b, v in m.items():
                    nxt[w + (b,)] = c * v
            terms = nxt
        return cls(len(factors), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def copy(self) -> "TensorVec":
        t = TensorVec(self.degree)
        t.terms = dict(self.terms)
        return t

    def iadd(self, other: "TensorVec", c: Optional[CycNum] = None) -> "TensorVec":
        if other.degree != self.degree and other.terms:
            raise ValueError("degree mismatch")
        terms = self.terms
        for w, v in other.terms.items():
            if c is not None:
                v = v * c
            u = terms.get(w)
            u = v if u is None else u + v
            if u:
                terms[w] = u
            else:
                terms.pop(w, None)
        return self

    def add_term(self, w: Word, v: CycNum) -> None:
        u = self.terms.get(w)
        u = v if u is None else u + v
        if u:
            self.terms[w] = u
        else:
            self.terms.pop(w, None)

    def __add__(self, other: "TensorVec") -> "TensorVec":
        return self.copy().iadd(other)

    def __sub__(self, other: "TensorVec") -> "TensorVec":
        out = self.copy()
        for w, v in other.terms.items():
            out.add_term(w, -v)
        return out

    def __neg__(self) -> "TensorVec":
        return TensorVec(self.degree, {w: -c for w, c in self.terms.items()})

    def scale(self, c: CycNum) -> "TensorVec":
        if not c:
            return TensorVec(self.degree)
        return TensorVec(self.degree, {w: v * c for w, v in self.terms.items()})

    def tensor(self, other: "TensorVec") -> "TensorVec":
        out = TensorVec(self.degree + other.degree)
        for w, c in self.terms.items():
            for u, d in other.terms.items():
                out.add_term(w + u, c * d)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorVec):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        return f"TensorVec(deg={self.degree}, {len(self.terms)} terms)"

    def format(self, module: YDModule) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            word = "(x)".join(str(module.symbols[b]) for b in w) or "1"
            parts.append(f"({self.terms[w]})*{word}")
        return " + ".join(parts)


# braid operators ---------------------------------------------------------------------


def psi_on_word(module: YDModule, i: int, w: Word) -> tuple[Word, CycNum]:
    """Psi_i (1-based position i) on a basis word."""
    if not 1 <= i < len(w):
        raise IndexError(f"Psi_{i} out of range for degree {len(w)}")
    x, y, c = module.braid_table[(w[i - 1], w[i])]
    return w[: i - 1] + (x, y) + w[i + 1 :], c


def psi_inverse_on_word(module: YDModule, i: int, w: Word) -> tuple[Word, CycNum]:
    if not 1 <= i < len(w):
        raise IndexError(f"Psi_{i} out of range for degree {len(w)}")
    x, y, c = module.braid_inverse_table[(w[i - 1], w[i])]
    return w[: i - 1] + (x, y) + w[i + 1 :], c


def psi_i(module: YDModule, i: int, t: TensorVec) -> TensorVec:
    out = TensorVec(t.degree)
    for w, c in t.terms.items():
        w2, s = psi_on_word(module, i, w)
        out.add_term(w2, c * s)
    return out


def psi_w(module: YDModule, word: Sequence[int], t: TensorVec) -> TensorVec:
    """Psi_{i_1} ... Psi_{i_l} applied right to left."""
    for i in word:
        if not 1 <= i < max(t.degree, 1):
            raise IndexError(f"generator index {i} out of range for degree {t.degree}")
    for i in reversed(list(word)):
        t = psi_i(module, i, t)
    return t


# reduced words ------------------------------------------------------------------------


def canonical_words(n: int) -> Iterator[tuple[int, ...]]:
    """One reduced word per permutation via w = u_1 ... u_{n-1}, u_j = s_j s_{j-1} ... s_{j-m+1}."""
    factors = [[tuple(range(j, j - m, -1)) for m in range(j + 1)] for j in range(1, n)]
    for choice in itertools.product(*factors):
        yield tuple(itertools.chain.from_iterable(choice))


def lex_min_reduced_word(perm: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of a permutation in one-line form.

    Generator s_i swaps values i and i+1 on the left: w = s_{i_1} w'.
    """
    w = list(perm)
    word = []
    while True:
        pos = {v: p for p, v in enumerate(w)}
        for i in range(len(w) - 1):
            if pos[i] > pos[i + 1]:
                word.append(i + 1)
                a, b = pos[i], pos[i + 1]
                w[a], w[b] = i + 1, i
                break
        else:
            return tuple(word)


def lex_words(n: int) -> Iterator[tuple[int, ...]]:
    for perm in itertools.permutations(range(n)):
        yield lex_min_reduced_word(perm)


def permutation_of_word(word: Sequence[int], n: int) -> tuple[int, ...]:
    """One-line form of s_{i_1} ... s_{i_l} acting on values from the left."""
    w = list(range(n))
    for i in reversed(list(word)):
        w = [i if v == i - 1 else (i - 1 if v == i else v) for v in w]
    return tuple(w)


# symmetrizer -----------------------------------------------------------------------------


def _check_perm_cap(n: int, cap: int) -> None:
    if math.factorial(n) > cap:
        raise CapExceeded(f"{n}! exceeds permutation cap {cap}")


def symmetrizer(module: YDModule, t: TensorVec, perm_cap: int = DEFAULT_PERM_CAP) -> TensorVec:
    """sigma_n = T_1 T_2 ... T_{n-1} with T_j = 1 + Psi_j + Psi_j Psi_{j-1} + ... + Psi_j...Psi_1."""
    n = t.degree
    _check_perm_cap(n, perm_cap)
    cur = t
    for j in range(n - 1, 0, -1):
        r = cur
        for i in range(1, j + 1):
            r = cur + psi_i(module, i, r)
        cur = r
    return cur


def symmetrizer_by_words(
    module: YDModule, t: TensorVec, words: Iterable[Sequence[int]], perm_cap: int = DEFAULT_PERM_CAP
) -> TensorVec:
    """sum_w Psi_w t over an explicit list of reduced words."""
    _check_perm_cap(t.degree, perm_cap)
    out = TensorVec(t.degree)
    for word in words:
        for w, c in t.terms.items():
            for i in reversed(word):
                w, s = psi_on_word(module, i, w)
                c = c * s
            out.add_term(w, c)
    return out


class SymmetrizerCache:
    """Memoized sigma_n on basis words of one module."""

    def __init__(self, module: YDModule, perm_cap: int = DEFAULT_PERM_CAP):
        self.module = module
        self.perm_cap = perm_cap
        self._words: dict[Word, dict[Word, CycNum]] = {}

    def on_word(self, w: Word) -> dict[Word, CycNum]:
        img = self._words.get(w)
        if img is None:
            img = symmetrizer(self.module, TensorVec.word(w, CycNum.one(self.module.level)), self.perm_cap).terms
            self._words[w] = img
        return img

    def apply(self, t: TensorVec) -> TensorVec:
        _check_perm_cap(t.degree, self.perm_cap)
        out = TensorVec(t.degree)
        terms = out.terms
        for w, c in t.terms.items():
            for u, s in self.on_word(w).items():
                v = terms.get(u)
                v = c * s if v is None else v + c * s
                if v:
                    terms[u] = v
                else:
                    terms.pop(u, None)
        return out


_SYM_CACHES: dict[int, SymmetrizerCache] = {}


def sym_cache(module: YDModule) -> SymmetrizerCache:
    c = _SYM_CACHES.get(id(module))
    if c is None or c.module is not module:
        c = SymmetrizerCache(module)
        _SYM_CACHES[id(module)] = c
    return c


# kernels -------------------------------------------------------------------------------------


@dataclass
class KernelCert:
    """Exact certificate for Ker(sigma_n) inside M^{(x)n}."""

    degree: int
    dim_module: int
    rank: int
    kernel_basis: list[TensorVec]
    echelon: Echelon = field(repr=False)

    @property
    def kernel_dim(self) -> int:
        return len(self.kernel_basis)

    @property
    def dim_B(self) -> int:
        return self.rank

    def contains(self, t: TensorVec) -> bool:
        if t.degree != self.degree and t.terms:
            raise ValueError("degree mismatch")
        return self.echelon.contains(dict(t.terms))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "dim_module": self.dim_module,
            "rank": self.rank,
            "kernel": [
                [[list(w), c.to_json()] for w, c in sorted(v.terms.items())] for v in self.kernel_basis
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "KernelCert":
        basis = [
            TensorVec(int(data["degree"]), {tuple(w): CycNum.from_json(c) for w, c in vec})
            for vec in data["kernel"]
        ]
        ech = Echelon()
        for v in basis:
            ech.add(dict(v.terms))
        return cls(int(data["degree"]), int(data["dim_module"]), int(data["rank"]), basis, ech)


def all_words(dim: int, n: int) -> Iterator[Word]:
    return itertools.product(range(dim), repeat=n)


def kernel(module: YDModule, n: int, tensor_cap: int = DEFAULT_TENSOR_CAP, perm_cap: int = DEFAULT_PERM_CAP) -> KernelCert:
    """Row-reduced basis of Ker(sigma_n) with words in lex order as columns."""
    if module.dim**n > tensor_cap:
        raise CapExceeded(f"(dim M)^n = {module.dim}^{n} exceeds tensor cap {tensor_cap}")
    sc = sym_cache(module)
    sc.perm_cap = perm_cap
    rank, kern = nullspace(((w, sc.on_word(w)) for w in all_words(module.dim, n)), module.level)
    basis = [TensorVec(n, v) for v in kern]
    ech = Echelon()
    for v in basis:
        ech.add(dict(v.terms))
    return KernelCert(n, module.dim, rank, basis, ech)


def is_zero_in_B(module: YDModule, t: TensorVec, cert: Optional[KernelCert] = None) -> bool:
    """True iff sigma_n(t) = 0."""
    if not t.terms:
        return True
    if cert is not None and cert.degree == t.degree:
        return cert.contains(t)
    return not sym_cache(module).apply(t).terms
