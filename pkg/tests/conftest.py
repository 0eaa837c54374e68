import cmath
import itertools

import numpy as np
import pytest

from braidcoinv.cyclo import CycNum


def as_complex(c: CycNum) -> complex:
    z = cmath.exp(2j * cmath.pi / c.level)
    return sum(float(q) * z**j for j, q in enumerate(c.coeffs))


class NumericModel:
    """Floating point rebuild of M_G straight from reflection matrices.

    Shares no code with the package: hyperplanes, g_H, cocycles and the
    braiding are recomputed from the definitions with numpy.
    """

    def __init__(self, e: int, n: int):
        self.e, self.n = e, n
        z = np.exp(2j * np.pi / e)
        planes = []
        for i in range(n):
            for j in range(i + 1, n):
                for a in range(e):
                    v = np.zeros(n, complex)
                    v[i], v[j] = 1, -(z ** (-a))
                    planes.append((v, 2))
        if e > 1:
            for i in range(n):
                v = np.zeros(n, complex)
                v[i] = 1
                planes.append((v, e))
        self.planes = planes
        self.basis = [(h, k) for h, (_, eh) in enumerate(planes) for k in range(1, eh)]
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)

    def g_H(self, h: int, k: int) -> np.ndarray:
        v, eh = self.planes[h]
        zh = np.exp(2j * np.pi * k / eh)
        return np.eye(self.n) - (1 - zh) * np.outer(v, v.conj()) / np.vdot(v, v).real

    def act(self, g: np.ndarray) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), complex)
        for (h, k), col in self.index.items():
            w = g @ self.planes[h][0]
            for h2, (v2, _) in enumerate(self.planes):
                lam = w[np.argmax(abs(v2))] / v2[np.argmax(abs(v2))]
                if np.allclose(w, lam * v2):
                    out[self.index[(h2, k)], col] = 1 / np.conj(lam)
                    break
            else:
                raise AssertionError("no matching hyperplane")
        return out

    def psi(self) -> np.ndarray:
        D = self.dim
        P = np.zeros((D * D, D * D), complex)
        for (h, k), b in self.index.items():
            A = self.act(self.g_H(h, k))
            for b2 in range(D):
                for r in range(D):
                    if abs(A[r, b2]) > 1e-12:
                        P[r * D + b, b * D + b2] += A[r, b2]
        return P

    def sigma(self, d: int) -> np.ndarray:
        D = self.dim
        P = self.psi()
        ops = [np.kron(np.kron(np.eye(D ** (i - 1)), P), np.eye(D ** (d - i - 1))) for i in range(1, d)]
        total = np.zeros((D**d, D**d), complex)
        for perm in itertools.permutations(range(d)):
            word = _reduced_word(perm)
            m = np.eye(D**d, dtype=complex)
            for i in word:
                m = m @ ops[i - 1]
            total += m
        return total

    def dim_B(self, d: int) -> int:
        if d == 0:
            return 1
        if d == 1:
            return self.dim
        return int(np.linalg.matrix_rank(self.sigma(d), tol=1e-8))


def _reduced_word(perm):
    w = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                changed = True
    return word


@pytest.fixture(scope="session")
def numeric_model():
    cache = {}

    def get(e, n):
        if (e, n) not in cache:
            cache[(e, n)] = NumericModel(e, n)
        return cache[(e, n)]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[i])
