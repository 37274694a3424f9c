"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial.  Conductors congruent to 2 mod 4 are folded onto
N/2, so zeta_6 and zeta_3 live in the same field without promotion.

Arithmetic operators return the simplest exact representative: a plain
``int`` or ``Fraction`` when the value is rational, a :class:`Scalar`
otherwise.  This keeps numpy object arrays over Q on the fast path.  The
named functions (:func:`add`, :func:`mul`, ...) always return a Scalar.
"""

from __future__ import annotations

import numbers

import math
import os
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]
FieldElement = Union[int, Fraction, "Scalar"]

DEFAULT_CONDUCTOR_LIMIT = 64


class DivisionByZero(ZeroDivisionError):
    """Raised when inverting the zero element."""


class ConductorLimitExceeded(ValueError):
    """Raised when promotion would exceed HOPFACT_CONDUCTOR_LIMIT."""


def conductor_limit() -> int:
    return int(os.environ.get("HOPFACT_CONDUCTOR_LIMIT", DEFAULT_CONDUCTOR_LIMIT))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for k, dk in enumerate(den):
                num[i + k] -= c * dk
    assert not any(num[: len(den) - 1]), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k is zeta_n^k reduced onto the power basis, for 0 <= k < n."""
    phi = totient(n)
    cyc = cyclotomic_polynomial(n)
    rows = []
    vec = [0] * phi
    vec[0] = 1
    for _ in range(n):
        rows.append(tuple(vec))
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [v - top * c for v, c in zip(vec, cyc[:phi])]
    return tuple(rows)


def _canonical_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


def _reduce_ints(n: int, conv: list[int]) -> list[int]:
    """Reduce an integer polynomial in zeta_n modulo Phi_n (in place)."""
    cyc = cyclotomic_polynomial(n)
    phi = len(cyc) - 1
    for k in range(len(conv) - 1, phi - 1, -1):
        c = conv[k]
        if c:
            base = k - phi
            for t in range(phi):
                if cyc[t]:
                    conv[base + t] -= c * cyc[t]
    out = conv[:phi]
    if len(out) < phi:
        out += [0] * (phi - len(out))
    return out


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums, den = [-v for v in nums], -den
    g = math.gcd(den, *nums)
    if g > 1:
        nums, den = [v // g for v in nums], den // g
    return tuple(nums), den


def _check_limit(n: int) -> None:
    if n > conductor_limit():
        raise ConductorLimitExceeded(
            f"conductor {n} exceeds limit {conductor_limit()} (HOPFACT_CONDUCTOR_LIMIT)"
        )


def _as_num_den(r: Rational) -> tuple[int, int]:
    if type(r) is int:
        return r, 1
    r = Fraction(r)
    return r.numerator, r.denominator


class Scalar:
    """An element of Q(zeta_N) on the power basis modulo Phi_N.

    Stored as integer numerators over one positive common denominator.
    """

    __slots__ = ("conductor", "nums", "den")

    def __init__(self, conductor: int, coeffs) -> None:
        if conductor < 1:
            raise ValueError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != totient(conductor):
            raise ValueError(
                f"expected {totient(conductor)} coefficients for conductor {conductor}"
            )
        den = math.lcm(1, *(c.denominator for c in fr))
        nums = [int(c * den) for c in fr]
        if conductor % 4 == 2:
            m = conductor // 2
            # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
            e = (m + 1) // 2
            conv = [0] * m
            for i, c in enumerate(nums):
                if c:
                    conv[(e * i) % m] += c if i % 2 == 0 else -c
            conductor, nums = m, _reduce_ints(m, conv)
        nums_t, den = _normalize(nums, den)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "nums", nums_t)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _raw(n: int, nums, den: int = 1) -> "Scalar":
        out = Scalar.__new__(Scalar)
        nums_t, den = _normalize(list(nums), den)
        object.__setattr__(out, "conductor", n)
        object.__setattr__(out, "nums", nums_t)
        object.__setattr__(out, "den", den)
        return out

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    # -- structure ---------------------------------------------------------

    def promote(self, n: int, check: bool = True) -> "Scalar":
        """The same value written over conductor ``n`` (a multiple of ours)."""
        n = _canonical_conductor(n)
        if n % self.conductor:
            raise ValueError(f"cannot promote conductor {self.conductor} to {n}")
        if n == self.conductor:
            return self
        if check:
            _check_limit(n)
        step = n // self.conductor
        table = _power_table(n)
        out = [0] * totient(n)
        for i, c in enumerate(self.nums):
            if c:
                for t, v in enumerate(table[(i * step) % n]):
                    if v:
                        out[t] += c * v
        return Scalar._raw(n, out, self.den)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def simplify(self) -> FieldElement:
        if not any(self.nums[1:]):
            if self.den == 1:
                return self.nums[0]
            return Fraction(self.nums[0], self.den)
        return self

    def _align(self, other, check: bool = True):
        if type(other) is Scalar:
            if other.conductor == self.conductor:
                return self.conductor, self, other
            n = _canonical_conductor(math.lcm(self.conductor, other.conductor))
            return n, self.promote(n, check), other.promote(n, check)
        if isinstance(other, (int, Fraction)):
            num, den = _as_num_den(other)
            o = Scalar.__new__(Scalar)
            object.__setattr__(o, "conductor", self.conductor)
            object.__setattr__(o, "nums", (num,) + (0,) * (len(self.nums) - 1))
            object.__setattr__(o, "den", den)
            return self.conductor, self, o
        return None

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        if a.den == b.den:
            return Scalar._raw(n, [x + y for x, y in zip(a.nums, b.nums)], a.den).simplify()
        return Scalar._raw(
            n, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den
        ).simplify()

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.conductor, [-c for c in self.nums], self.den)

    def __sub__(self, other):
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        return Scalar._raw(
            n, [x * b.den - y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den
        ).simplify()

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if type(other) is int:
            if not other:
                return 0
            return Scalar._raw(self.conductor, [c * other for c in self.nums], self.den).simplify()
        al = self._align(other)
        if al is None:
            return NotImplemented
        n, a, b = al
        phi = len(a.nums)
        conv = [0] * (2 * phi - 1)
        bn = b.nums
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        conv[i + j] += x * y
        return Scalar._raw(n, _reduce_ints(n, conv), a.den * b.den).simplify()

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not any(self.nums):
            raise DivisionByZero("inverse of zero")
        return _inverse(self.conductor, self.nums, self.den)

    def _inverse_uncached(self) -> FieldElement:
        n, phi = self.conductor, len(self.nums)
        # column i of the multiplication matrix is self * zeta^i
        cols = []
        for i in range(phi):
            conv = [0] * (i + phi)
            for j, c in enumerate(self.nums):
                conv[i + j] += c
            cols.append(_reduce_ints(n, conv))
        rows = [[Fraction(cols[j][i]) for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        sol = [rows[i][phi] * self.den for i in range(phi)]
        den = math.lcm(1, *(v.denominator for v in sol))
        return Scalar._raw(n, [int(v * den) for v in sol], den).simplify()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            num, den = _as_num_den(other)
            return Scalar._raw(self.conductor, [c * den for c in self.nums], self.den * num).simplify()
        if isinstance(other, Scalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base: FieldElement = self
        if k < 0:
            base, k = self.inverse(), -k
        result: FieldElement = 1
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        al = self._align(other, check=False)
        if al is None:
            return NotImplemented
        _, a, b = al
        return a.nums == b.nums and a.den == b.den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        # normalized trace is invariant under promotion
        if self.is_rational():
            return hash(Fraction(self.nums[0], self.den))
        n = self.conductor
        t = Fraction(0)
        for i, c in enumerate(self.nums):
            if c:
                m = n // math.gcd(n, i)
                t += Fraction(c * _mobius(m), totient(m) * self.den)
        return hash(("cyclo", t))

    def __bool__(self) -> bool:
        return any(self.nums)

    def __repr__(self) -> str:
        return f"Scalar({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return render_scalar(self)


@lru_cache(maxsize=4096)
def _inverse(n: int, nums: tuple[int, ...], den: int) -> FieldElement:
    return Scalar._raw(n, nums, den)._inverse_uncached()


@lru_cache(maxsize=65536)
def _scalar_pow(n: int, nums: tuple[int, ...], den: int, k: int) -> FieldElement:
    return simplify(Scalar._raw(n, nums, den) ** k)


# -- plain functions -----------------------------------------------------------


def to_scalar(x: FieldElement) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(1, [x])
    if isinstance(x, numbers.Integral):
        return Scalar(1, [int(x)])
    raise TypeError(f"not a field element: {x!r}")


def simplify(x: FieldElement) -> FieldElement:
    """Demote to int or Fraction whenever the value is rational."""
    if isinstance(x, Scalar):
        return x.simplify()
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    if isinstance(x, numbers.Integral) and type(x) is not int:
        return int(x)
    return x


def conductor(x: FieldElement) -> int:
    return x.conductor if isinstance(x, Scalar) else 1


def scalar_from_rational(r: Rational) -> Scalar:
    return Scalar(1, [Fraction(r)])


@lru_cache(maxsize=None)
def primitive_root(n: int) -> Scalar:
    """zeta_n = exp(2 pi i / n), in its canonical conductor."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Scalar(1, [1])
    _check_limit(_canonical_conductor(n))
    coeffs = [0] * totient(n)
    if totient(n) > 1:
        coeffs[1] = 1
        return Scalar(n, coeffs)
    # n == 2
    return Scalar(1, [-1])


def root_of_unity(n: int, k: int = 1) -> FieldElement:
    """zeta_n^k, simplified."""
    return simplify(to_scalar(primitive_root(n)) ** (k % n) if k % n else 1)


def add(s: FieldElement, t: FieldElement) -> Scalar:
    return to_scalar(to_scalar(s) + t)


def neg(s: FieldElement) -> Scalar:
    return to_scalar(-to_scalar(s))


def mul(s: FieldElement, t: FieldElement) -> Scalar:
    return to_scalar(to_scalar(s) * t)


def inv(s: FieldElement) -> Scalar:
    return to_scalar(to_scalar(s).inverse())


def eq(s: FieldElement, t: FieldElement) -> bool:
    return to_scalar(s) == t


def pow(s: FieldElement, k: int) -> Scalar:  # noqa: A001 - field operation name
    return to_scalar(to_scalar(s) ** k)


def fdiv(a: FieldElement, b: FieldElement) -> FieldElement:
    """Exact quotient a / b."""
    if isinstance(b, int) and isinstance(a, int):
        if b == 0:
            raise DivisionByZero("division by zero")
        q = Fraction(a, b)
        return q.numerator if q.denominator == 1 else q
    if not b:
        raise DivisionByZero("division by zero")
    return simplify(a / b)


def finv(a: FieldElement) -> FieldElement:
    return fdiv(1, a)


def fpow(a: FieldElement, k: int) -> FieldElement:
    """a**k for any integer k, simplified."""
    if isinstance(a, Scalar):
        return _scalar_pow(a.conductor, a.nums, a.den, k)
    if k < 0:
        if not a:
            raise DivisionByZero("negative power of zero")
        return simplify(Fraction(1, 1) / a ** (-k))
    return simplify(a**k)


def order_of_root(s: FieldElement) -> int | None:
    """Least d >= 1 with s^d = 1, or None when s is not a root of unity."""
    s = to_scalar(s)
    return _order(s.conductor, s.nums, s.den)


@lru_cache(maxsize=4096)
def _order(n: int, nums: tuple[int, ...], den: int) -> int | None:
    s = Scalar._raw(n, nums, den)
    bound = math.lcm(2, s.conductor)
    for d in _divisors(bound):
        if s**d == 1:
            return d
    return None


# -- text form -----------------------------------------------------------------


def _render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_scalar(x: FieldElement) -> str:
    """Canonical text: a rational ``p/q`` or ``cyclo(N)[c0, c1, ...]``."""
    x = simplify(x)
    if isinstance(x, (int, Fraction)):
        return _render_rational(Fraction(x))
    return f"cyclo({x.conductor})[" + ", ".join(_render_rational(c) for c in x.coeffs) + "]"


_CYCLO = re.compile(r"^cyclo\((\d+)\)\[(.*)\]$")


def parse_scalar(text: str) -> FieldElement:
    text = text.strip().replace(" ", "")
    m = _CYCLO.match(text)
    if m:
        n = int(m.group(1))
        parts = [p for p in m.group(2).split(",") if p]
        _check_limit(_canonical_conductor(n))
        return Scalar(n, [Fraction(p) for p in parts]).simplify()
    if text.startswith("zeta"):
        # convenience: zeta<N> or zeta<N>^<k>
        m2 = re.match(r"^zeta(\d+)(?:\^(-?\d+))?$", text)
        if not m2:
            raise ValueError(f"bad scalar: {text!r}")
        return root_of_unity(int(m2.group(1)), int(m2.group(2) or 1))
    return simplify(Fraction(text))
