"""Exact arithmetic in the cyclotomic field Q(zeta_L).

Elements are stored in the power basis 1, z, ..., z^(phi(L)-1) reduced
modulo the L-th cyclotomic polynomial, as integer numerators over one
positive common denominator.  Equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Scalar = Union["CycNum", int, Fraction]


class LevelMismatch(ValueError):
    pass


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    r = num[: len(den) - 1]
    return q, r


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_L, lowest degree first."""
    if L < 1:
        raise ValueError("level must be positive")
    poly = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            q, r = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(r)
            poly = q
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class _Level:
    """Per-level tables: reduction of z^j for 0 <= j < 2*phi and z^m for 0 <= m < L."""

    def __init__(self, L: int):
        self.L = L
        self.phi_poly = cyclotomic_polynomial(L)
        self.phi = len(self.phi_poly) - 1
        phi = self.phi
        red = []
        for j in range(max(2 * phi - 1, L)):
            vec = [0] * (j + 1)
            vec[j] = 1
            if j >= phi:
                _, vec = _poly_divmod_int(vec, list(self.phi_poly))
            vec = (vec + [0] * phi)[:phi]
            red.append(tuple(vec))
        self.red = red
        self.powers = [red[m] for m in range(L)]


@lru_cache(maxsize=None)
def _level(L: int) -> _Level:
    return _Level(L)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(den, *num)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycNum:
    """Element of Q(zeta_L) in canonical form."""

    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level: int, num: Sequence[int], den: int = 1, _canonical: bool = False):
        self.level = level
        if _canonical:
            self.num = tuple(num)
            self.den = den
        else:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            lv = _level(level)
            num = list(num)
            if len(num) > lv.phi:
                acc = [0] * lv.phi
                for j, c in enumerate(num):
                    if c:
                        for t, r in enumerate(_reduce_power(lv, j)):
                            if r:
                                acc[t] += c * r
                num = acc
            else:
                num = num + [0] * (lv.phi - len(num))
            self.num, self.den = _normalize(num, den)
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def rational(cls, level: int, value: Union[int, Fraction, str]) -> "CycNum":
        value = Fraction(value)
        phi = _level(level).phi
        return cls(level, [value.numerator] + [0] * (phi - 1), value.denominator)

    @classmethod
    def zero(cls, level: int) -> "CycNum":
        return cls(level, [0] * _level(level).phi, 1, _canonical=True)

    @classmethod
    def one(cls, level: int) -> "CycNum":
        return cls.rational(level, 1)

    @classmethod
    def from_fractions(cls, level: int, coeffs: Iterable[Union[int, Fraction, str]]) -> "CycNum":
        fr = [Fraction(c) for c in coeffs]
        phi = _level(level).phi
        if len(fr) != phi:
            raise ValueError(f"expected {phi} coefficients for level {level}, got {len(fr)}")
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(level, [int(c * den) for c in fr], den)

    # views ---------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other: Scalar) -> "CycNum":
        if isinstance(other, CycNum):
            if other.level != self.level:
                raise LevelMismatch(f"level {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self.level, other)
        return NotImplemented

    def __add__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycNum(self.level, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycNum(
            self.level,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.level, tuple(-a for a in self.num), self.den, _canonical=True)

    def __sub__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: Scalar) -> "CycNum":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        lv = _level(self.level)
        n = lv.phi
        if n == 1:
            return CycNum(self.level, [self.num[0] * o.num[0]], self.den * o.den)
        acc = [0] * n
        red = lv.red
        for i, a in enumerate(self.num):
            if not a:
                continue
            for j, b in enumerate(o.num):
                if not b:
                    continue
                ab = a * b
                k = i + j
                if k < n:
                    acc[k] += ab
                else:
                    for t, r in enumerate(red[k]):
                        if r:
                            acc[t] += ab * r
        return CycNum(self.level, acc, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "CycNum":
        """Multiplicative inverse by extended Euclid against Phi_L."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        lv = _level(self.level)
        if self.is_rational():
            return CycNum.rational(self.level, Fraction(self.den, self.num[0]))
        a = _strip([Fraction(c) for c in self.num])
        m = [Fraction(c) for c in lv.phi_poly]
        # invariant: s*a == r (mod m)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, rem = _fdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fsub(s0, _fmul(q, s1))
        # r0 is a nonzero constant
        c = r0[0]
        inv_poly = [x / c for x in s0]
        res = CycNum.from_fractions(self.level, _pad_reduce(inv_poly, lv))
        return res * self.den

    def __truediv__(self, other: Scalar) -> "CycNum":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other: Scalar) -> "CycNum":
        return self.inv() * other

    def __pow__(self, k: int) -> "CycNum":
        if k < 0:
            return self.inv() ** (-k)
        result = CycNum.one(self.level)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycNum":
        """Complex conjugation z -> z^(-1)."""
        lv = _level(self.level)
        L = self.level
        acc = [0] * lv.phi
        for j, c in enumerate(self.num):
            if c:
                for t, r in enumerate(lv.powers[(-j) % L]):
                    if r:
                        acc[t] += c * r
        return CycNum(self.level, acc, self.den)

    # comparison ------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycNum):
            return self.level == other.level and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.level, self.num, self.den))
        return self._hash

    # io -----------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"L": self.level, "c": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNum":
        return cls.from_fractions(int(data["L"]), [Fraction(c) for c in data["c"]])

    def __repr__(self) -> str:
        return f"CycNum({self})"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
            if not mono:
                parts.append(_frac_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{_frac_str(c)}*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


def _reduce_power(lv: _Level, j: int) -> tuple[int, ...]:
    if j < len(lv.red):
        return lv.red[j]
    return lv.powers[j % lv.L]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _strip(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _fmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _fsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _strip([Fraction(x) for x in out])


def _fdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    b = _strip(list(b))
    if len(a) < len(b):
        return [Fraction(0)], _strip(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = a[shift + len(b) - 1] / lead
        q[shift] = c
        if c:
            for i, d in enumerate(b):
                a[shift + i] -= c * d
    rem = _strip(a[: len(b) - 1] or [Fraction(0)])
    return _strip(q), rem


def _pad_reduce(p: list[Fraction], lv: _Level) -> list[Fraction]:
    acc = [Fraction(0)] * lv.phi
    for j, c in enumerate(p):
        if c:
            for t, r in enumerate(_reduce_power(lv, j)):
                if r:
                    acc[t] += c * r
    return acc


# module-level helpers matching the operation names ---------------------------


@lru_cache(maxsize=None)
def root_of_unity(L: int, power: int) -> CycNum:
    """zeta_L ** power in canonical form."""
    lv = _level(L)
    num, den = _normalize(list(lv.powers[power % L]), 1)
    return CycNum(L, num, den, _canonical=True)


def zeta(L: int, e: int, power: int = 1) -> CycNum:
    """zeta_e ** power embedded at level L (e must divide L)."""
    if L % e:
        raise ValueError(f"{e} does not divide level {L}")
    return root_of_unity(L, (power % e) * (L // e))


def arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if a.level != b.level:
        raise LevelMismatch(f"level {a.level} vs {b.level}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def inv(a: CycNum) -> CycNum:
    return a.inv()


def conj(a: CycNum) -> CycNum:
    return a.conj()


def level_for(e: int) -> int:
    """Working level lcm(2, e) used for a group G(e,1,n)."""
    return e if e % 2 == 0 else 2 * e
