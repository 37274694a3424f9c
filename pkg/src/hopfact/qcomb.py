"""Gaussian (q-binomial) coefficients and the identities built on them."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

from .scalar import FieldElement, Scalar, fpow, order_of_root, simplify


class NotARootOfUnity(ValueError):
    """q has no finite multiplicative order."""


class QBinomTable:
    """Memoized Pascal-type recurrence for a fixed q.

    C(n, m) = C(n-1, m) + q^(n-m) C(n-1, m-1), with C(0, 0) = 1 and
    C(n, m) = 0 outside 0 <= m <= n.
    """

    def __init__(self, q: FieldElement) -> None:
        self.q = simplify(q)
        self.memo: dict[tuple[int, int], FieldElement] = {(0, 0): 1}
        self._rows = 0
        self._lock = threading.Lock()

    def __call__(self, n: int, m: int) -> FieldElement:
        if n < 0 or m < 0 or m > n:
            return 0
        key = (n, m)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        with self._lock:
            while self._rows < n:
                r = self._rows + 1
                for col in range(r + 1):
                    left = self.memo.get((r - 1, col), 0)
                    diag = self.memo.get((r - 1, col - 1), 0)
                    self.memo[(r, col)] = simplify(left + fpow(self.q, r - col) * diag)
                self._rows = r
        return self.memo[key]


_tables: dict[object, QBinomTable] = {}
_tables_lock = threading.Lock()


def _key(q: FieldElement) -> object:
    return (q.conductor, q.nums, q.den) if isinstance(q, Scalar) else q


def table_for(q: FieldElement) -> QBinomTable:
    q = simplify(q)
    key = _key(q)
    with _tables_lock:
        t = _tables.get(key)
        if t is None:
            t = _tables[key] = QBinomTable(q)
    return t


def qbinom(n: int, m: int, q: FieldElement) -> FieldElement:
    """The q-binomial coefficient (n choose m)_q; zero when m < 0, m > n or n < 0."""
    return table_for(q)(n, m)


@lru_cache(maxsize=None)
def polynomial_gauss(n: int, m: int) -> tuple[int, ...]:
    """Gaussian binomial as integer coefficients in t (lowest degree first).

    Built by the same recurrence over Z[t]; the zero polynomial is ``()``.
    """
    if n < 0 or m < 0 or m > n:
        return ()
    if m == 0 or m == n:
        return (1,)
    left = polynomial_gauss(n - 1, m)
    diag = polynomial_gauss(n - 1, m - 1)
    shift = n - m
    size = max(len(left), len(diag) + shift)
    out = [0] * size
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(diag):
        out[i + shift] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def evaluate(poly: tuple[int, ...], q: FieldElement) -> FieldElement:
    acc: FieldElement = 0
    for c in reversed(poly):
        acc = acc * q + c
    return simplify(acc)


@dataclass(frozen=True)
class ModDecomposition:
    k: int
    N: int
    k_D: int
    k_R: int


def decompose(k: int, N: int) -> ModDecomposition:
    if N < 1:
        raise ValueError("N must be positive")
    k_D, k_R = divmod(k, N)
    return ModDecomposition(k, N, k_D, k_R)


def check_identity_idq(n: int, m: int, q: FieldElement) -> bool:
    """(n choose m)_q == q^(m(n-m)) (n choose m)_{1/q}."""
    if not q:
        raise ValueError("q must be nonzero")
    qi = fpow(q, -1)
    return qbinom(n, m, q) == fpow(q, m * (n - m)) * qbinom(n, m, qi)


def _binom(n: int, m: int) -> int:
    return math.comb(n, m) if 0 <= m <= n else 0


def check_radford(n: int, m: int, q: FieldElement) -> bool:
    """Lucas-type factorization at a primitive N-th root of unity."""
    N = order_of_root(q)
    if N is None:
        raise NotARootOfUnity(f"{q} is not a root of unity")
    dn, dm = decompose(n, N), decompose(m, N)
    return qbinom(n, m, q) == qbinom(dn.k_R, dm.k_R, q) * _binom(dn.k_D, dm.k_D)


def check_lemma_22(i: int, j: int, k: int, q: FieldElement) -> bool:
    """(j choose k)(j-k choose i-k) == (j choose i)(i choose k), all at q."""
    lhs = qbinom(j, k, q) * qbinom(j - k, i - k, q)
    rhs = qbinom(j, i, q) * qbinom(i, k, q)
    return simplify(lhs - rhs) == 0


def check_lemma_23(i: int, j: int, k: int, q: FieldElement) -> bool:
    """Alternating sum over s against q^(j(j+1)/2 + j(i-k)) (i choose k-j)."""
    lhs: FieldElement = 0
    for s in range(j + 1):
        sign = -1 if (j - s) % 2 else 1
        e = s * (s + 1) // 2 - s * j
        lhs = lhs + sign * fpow(q, e) * qbinom(j, s, q) * qbinom(s + i, k, q)
    rhs = fpow(q, j * (j + 1) // 2 + j * (i - k)) * qbinom(i, k - j, q)
    return simplify(lhs - rhs) == 0


def ext_coefficient(j: int, k: int, q: FieldElement) -> FieldElement:
    """(-1)^k q^(-k(k-1)/2) (j choose k)_{1/q}, the weight of the k-th term
    in the extension formula for x^j a acting on r."""
    sign = -1 if k % 2 else 1
    return simplify(sign * fpow(q, -(k * (k - 1) // 2)) * qbinom(j, k, fpow(q, -1)))
