"""Hopf-Ore extensions A[x, sigma, delta]: data, skew products, coproducts and
finite quotients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .algcore import (
    AlgElement,
    CapExceeded,
    FinHopf,
    Quotient,
    ValidationReport,
    _acc,
    _sparse,
    quotient_with_projection,
    validate_hopf,
)
from .qcomb import qbinom
from .scalar import FieldElement, finv, fpow, order_of_root, simplify


class PanovViolation(ValueError):
    """The (sigma, delta, g) data does not define a Hopf-Ore extension."""

    def __init__(self, index: int | tuple, identity: str, message: str = "") -> None:
        self.index = index
        self.identity = identity
        super().__init__(f"{identity} fails at basis index {index}" + (f": {message}" if message else ""))


class UnsupportedDelta(NotImplementedError):
    """Coproducts of x^j a with j >= 2 are only implemented for delta = 0."""


class BadOrder(ValueError):
    """q = chi(g) does not have the requested order."""


class CentralityViolation(ValueError):
    """g^d is not central in A."""


class CharacterOrderViolation(ValueError):
    """chi^d is not the counit."""


# -- helpers on the base Hopf algebra ----------------------------------------------------------


def _apply(mat: np.ndarray, v: Sequence[FieldElement]) -> list[FieldElement]:
    return linalg.tolist(linalg.matmul(mat, linalg.exact_array(list(v)).reshape(-1, 1)))


def _basis_vec(n: int, i: int) -> list[FieldElement]:
    v: list[FieldElement] = [0] * n
    v[i] = 1
    return v


def _convolve(H: FinHopf, f: Sequence[FieldElement], h: Sequence[FieldElement]) -> list[FieldElement]:
    """Convolution of two linear functionals given by their values on the basis."""
    out = []
    for i in range(H.dim):
        out.append(simplify(sum((c * f[j] * h[k] for c, j, k in H.coproduct_terms(i)), 0)))
    return out


def character_power(H: FinHopf, chi: Sequence[FieldElement], n: int) -> list[FieldElement]:
    """Convolution power chi^n; negative n uses chi o S as the inverse."""
    base = list(chi)
    if n < 0:
        base = [simplify(sum(chi[k] * H.antipode[k, i] for k in range(H.dim))) for i in range(H.dim)]
        n = -n
    out = [simplify(v) for v in H.counit]
    for _ in range(n):
        out = _convolve(H, out, base)
    return out


# -- the datum --------------------------------------------------------------------------------------


def panov_check(base: FinHopf, sigma, delta, g_index: int) -> list[FieldElement]:
    """Return chi = eps o sigma after checking the Hopf-Ore conditions.

    Checked per basis element a, in basis order: sigma(a) = chi(a1) a2,
    sigma(a) = g a1 g^-1 chi(a2) and Delta(delta(a)) = delta(a1) (x) a2 +
    g a1 (x) delta(a2).  Then chi(1) = 1, chi multiplicative, sigma an
    algebra automorphism and delta a sigma-derivation.
    """
    n = base.dim
    sigma = linalg.exact_array(sigma)
    delta = linalg.exact_array(delta) if delta is not None else linalg.exact_array(np.zeros((n, n), dtype=np.int64))
    eps = [simplify(v) for v in base.counit]
    chi = [simplify(sum(eps[k] * sigma[k, i] for k in range(n))) for i in range(n)]
    g = _basis_vec(n, g_index)
    g_inv = base.antipode_of(g_index)
    if linalg.rank([list(r) for r in sigma]) < n:
        raise PanovViolation((), "sigma invertible")
    for i in range(n):
        col = [simplify(v) for v in sigma[:, i]]
        left: dict = {}
        right: dict = {}
        for c, j, k in base.coproduct_terms(i):
            _acc(left, k, c * chi[j])
            conj = base.multiply(base.multiply(g, _basis_vec(n, j)), g_inv)
            for t, v in enumerate(conj):
                if v:
                    _acc(right, t, c * chi[k] * v)
        target = _sparse(col)
        if left != target:
            raise PanovViolation(i, "sigma(a) = chi(a1) a2")
        if right != target:
            raise PanovViolation(i, "sigma(a) = g a1 g^-1 chi(a2)")
        d = [simplify(v) for v in delta[:, i]]
        lhs: dict = {}
        for t, v in _sparse(d).items():
            for c, p, q in base.coproduct_terms(t):
                _acc(lhs, (p, q), v * c)
        rhs: dict = {}
        for c, j, k in base.coproduct_terms(i):
            for p, v in _sparse([simplify(x) for x in delta[:, j]]).items():
                _acc(rhs, (p, k), c * v)
            ga = base.multiply(g, _basis_vec(n, j))
            for p, v in _sparse(ga).items():
                for q, w in _sparse([simplify(x) for x in delta[:, k]]).items():
                    _acc(rhs, (p, q), c * v * w)
        if lhs != rhs:
            raise PanovViolation(i, "Delta(delta(a)) = delta(a1) (x) a2 + g a1 (x) delta(a2)")
    unit = list(base.unit)
    if simplify(sum(chi[i] * c for i, c in enumerate(unit) if c)) != 1:
        raise PanovViolation((), "chi(1) = 1")
    for i in range(n):
        for j in range(n):
            prod = base.product_terms(i, j)
            val = simplify(sum((c * chi[k] for k, c in prod), 0))
            if val != simplify(chi[i] * chi[j]):
                raise PanovViolation((i, j), "chi multiplicative")
            img = _apply(sigma, _dense_terms(prod, n))
            if _sparse(img) != _sparse(base.multiply(list(sigma[:, i]), list(sigma[:, j]))):
                raise PanovViolation((i, j), "sigma multiplicative")
            dl = _apply(delta, _dense_terms(prod, n))
            dr = [
                a + b
                for a, b in zip(
                    base.multiply(list(delta[:, i]), _basis_vec(n, j)),
                    base.multiply(list(sigma[:, i]), list(delta[:, j])),
                )
            ]
            if _sparse(dl) != _sparse(dr):
                raise PanovViolation((i, j), "delta(ab) = delta(a) b + sigma(a) delta(b)")
    return chi


def _dense_terms(terms, n: int) -> list[FieldElement]:
    v: list[FieldElement] = [0] * n
    for k, c in terms:
        v[k] = c
    return v


@dataclass(frozen=True)
class HopfOreDatum:
    """(A, sigma, delta, g, chi) with q = chi(g); build through ``create``."""

    base: FinHopf
    sigma: np.ndarray
    delta: np.ndarray
    g_index: int
    chi: tuple
    q: FieldElement
    var: str = "x"

    @classmethod
    def create(cls, base: FinHopf, sigma, g: int | str, delta=None, var: str = "x") -> "HopfOreDatum":
        g_index = base.index(g) if isinstance(g, str) else g
        n = base.dim
        if delta is None:
            delta = np.zeros((n, n), dtype=np.int64)
        chi = panov_check(base, sigma, delta, g_index)
        return cls(base, linalg.exact_array(sigma), linalg.exact_array(delta), g_index, tuple(chi), chi[g_index], var)

    @property
    def dim_base(self) -> int:
        return self.base.dim

    @property
    def has_delta(self) -> bool:
        return not linalg.is_zero(self.delta)

    @cached_property
    def sigma_inv(self) -> np.ndarray:
        return linalg.inverse(self.sigma)

    def g_vec(self) -> list[FieldElement]:
        return _basis_vec(self.base.dim, self.g_index)

    def g_power(self, k: int) -> list[FieldElement]:
        A = self.base
        step = self.g_vec() if k >= 0 else A.antipode_of(self.g_index)
        out = list(A.unit)
        for _ in range(abs(k)):
            out = A.multiply(out, step)
        return [simplify(v) for v in out]

    def order(self) -> int | None:
        return order_of_root(self.q)

    def default_cap(self) -> int:
        d = self.order()
        return 2 * d + 1 if d else 5


def sigma_inverse_power(datum: HopfOreDatum, a: AlgElement | Sequence[FieldElement], i: int) -> list[FieldElement]:
    """sigma^{-i}(a) = g^{-i} a1 g^i chi^{-i}(a2), computed from the Hopf data."""
    A = datum.base
    coeffs = a.coeffs if isinstance(a, AlgElement) else a
    chi_pow = character_power(A, list(datum.chi), -i)
    left = datum.g_power(-i)
    right = datum.g_power(i)
    out: dict = {}
    for t, c in _sparse(coeffs).items():
        for cc, j, k in A.coproduct_terms(t):
            w = simplify(c * cc * chi_pow[k])
            if not w:
                continue
            conj = A.multiply(A.multiply(left, _basis_vec(A.dim, j)), right)
            for p, v in _sparse(conj).items():
                _acc(out, p, w * v)
    return [out.get(p, 0) for p in range(A.dim)]


def sigma_power_matrix(datum: HopfOreDatum, k: int) -> np.ndarray:
    """Matrix of sigma^k by repeated multiplication (the independent route)."""
    step = datum.sigma if k >= 0 else datum.sigma_inv
    out = linalg.exact_array(linalg.identity(datum.base.dim))
    for _ in range(abs(k)):
        out = linalg.normalize(linalg.matmul(step, out))
    return out


# -- monomials ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class OreMonomial:
    """x^degree * coeff, with coeff an element of A given by its coefficients."""

    degree: int
    coeff: tuple

    @classmethod
    def of(cls, degree: int, coeff) -> "OreMonomial":
        c = coeff.coeffs if isinstance(coeff, AlgElement) else coeff
        return cls(degree, tuple(simplify(v) for v in c))

    def is_zero(self) -> bool:
        return not any(self.coeff)


def _right_x_terms(datum: HopfOreDatum, a: Sequence[FieldElement], i: int) -> list[list[FieldElement]]:
    """B with a x^i = sum_l x^l B[l], iterating a x = x sigma^-1(a) - delta(sigma^-1(a))."""
    n = datum.base.dim
    terms: list[list[FieldElement]] = [list(a)]
    for _ in range(i):
        nxt: list[list[FieldElement]] = [[0] * n for _ in range(len(terms) + 1)]
        for l, b in enumerate(terms):
            if not any(b):
                continue
            sb = _apply(datum.sigma_inv, b)
            for t, v in enumerate(sb):
                nxt[l + 1][t] = simplify(nxt[l + 1][t] + v)
            if datum.has_delta:
                db = _apply(datum.delta, sb)
                for t, v in enumerate(db):
                    nxt[l][t] = simplify(nxt[l][t] - v)
        terms = nxt
    return terms


def ore_multiply(datum: HopfOreDatum, m1: OreMonomial, m2: OreMonomial, cap: int | None = None) -> list[OreMonomial]:
    """Left-normalized product (x^j a)(x^i b) = sum_l x^{j+l} B_l(a) b."""
    j, i = m1.degree, m2.degree
    if cap is not None and i + j > cap:
        raise CapExceeded(f"degree {i + j} exceeds cap {cap}")
    A = datum.base
    out = []
    for l, b in enumerate(_right_x_terms(datum, m1.coeff, i)):
        if not any(b):
            continue
        c = A.multiply(b, m2.coeff)
        if any(c):
            out.append(OreMonomial.of(j + l, c))
    return out


def ore_coproduct(datum: HopfOreDatum, m: OreMonomial) -> list[tuple[FieldElement, OreMonomial, OreMonomial]]:
    """Delta(x^j a) = sum [x^j a1 (x) a2 + sum_{k>=1} (j k)_{1/q} x^{j-k} g^k a1 (x) x^k a2]."""
    j = m.degree
    if j >= 2 and datum.has_delta:
        raise UnsupportedDelta("coproduct of x^j a with j >= 2 requires delta = 0")
    A = datum.base
    n = A.dim
    qi = finv(datum.q)
    out = []
    for t, c in _sparse(m.coeff).items():
        for cc, p, r in A.coproduct_terms(t):
            w = simplify(c * cc)
            right_b = tuple(_basis_vec(n, r))
            for k in range(j + 1):
                coef = simplify(w * qbinom(j, k, qi))
                if not coef:
                    continue
                left = A.multiply(datum.g_power(k), _basis_vec(n, p))
                out.append((coef, OreMonomial.of(j - k, left), OreMonomial(k, right_b)))
    return out


# -- truncated extensions ------------------------------------------------------------------------------


class TruncatedOre:
    """The span of x^j e_i for j <= cap with products tracked against the cap.

    Basis index of x^j e_i is j * dim(A) + i.  Products whose degrees add up to
    more than ``cap`` raise CapExceeded and are never truncated silently.
    """

    def __init__(self, datum: HopfOreDatum, cap: int) -> None:
        if cap < 0:
            raise ValueError("cap must be nonnegative")
        self.datum = datum
        self.cap = cap
        self.dim_base = datum.base.dim
        self.dim = (cap + 1) * self.dim_base
        self.basis_labels = [self._label(j, lab) for j in range(cap + 1) for lab in datum.base.basis_labels]
        self._build()

    def _label(self, j: int, lab: str) -> str:
        if j == 0:
            return lab
        head = self.datum.var if j == 1 else f"{self.datum.var}^{j}"
        return head if lab == "1" else f"{head}*{lab}"

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def split(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.dim_base)

    def monomial(self, idx: int) -> OreMonomial:
        j, i = self.split(idx)
        return OreMonomial(j, tuple(_basis_vec(self.dim_base, i)))

    def embed(self, m: OreMonomial) -> dict[int, FieldElement]:
        if m.degree > self.cap:
            raise CapExceeded(f"degree {m.degree} exceeds cap {self.cap}")
        return {m.degree * self.dim_base + i: c for i, c in _sparse(m.coeff).items()}

    def _build(self) -> None:
        D, n, cap = self.dim, self.dim_base, self.cap
        datum = self.datum
        self._table: list[list[list | None]] = [[None] * D for _ in range(D)]
        mult = linalg.zeros((D, D, D))
        window = np.zeros((D, D), dtype=bool)
        for p in range(D):
            for r in range(D):
                if self.split(p)[0] + self.split(r)[0] > cap:
                    continue
                window[p, r] = True
                acc: dict = {}
                for mono in ore_multiply(datum, self.monomial(p), self.monomial(r)):
                    for k, c in self.embed(mono).items():
                        _acc(acc, k, c)
                self._table[p][r] = sorted(acc.items())
                for k, c in acc.items():
                    mult[p, r, k] = c
        self.mult = linalg.normalize(mult)
        self.window = window
        self.unit = linalg.exact_array(list(datum.base.unit) + [0] * (D - n))
        self.counit = linalg.exact_array([simplify(v) for v in datum.base.counit] + [0] * (D - n))
        self._cop: list[list] = []
        for p in range(D):
            if datum.has_delta and self.split(p)[0] >= 2:
                self._cop.append(None)
                continue
            acc = {}
            for c, m1, m2 in ore_coproduct(datum, self.monomial(p)):
                for a, ca in self.embed(m1).items():
                    for b, cb in self.embed(m2).items():
                        _acc(acc, (a, b), c * ca * cb)
            self._cop.append([(c, a, b) for (a, b), c in sorted(acc.items())])
        self._anti: list[list[FieldElement]] = [self._antipode(p) for p in range(D)]

    def _antipode(self, p: int) -> list[FieldElement]:
        """S(x^j a) = S(a) (-g^-1 x)^j."""
        j, i = self.split(p)
        A = self.datum.base
        s_a = self._vec({0: A.antipode_of(i)})
        if j == 0:
            return s_a
        step = self._vec({0: [simplify(-v) for v in A.antipode_of(self.datum.g_index)]})
        step = self.multiply(step, self._vec({1: list(A.unit)}))
        out = s_a
        for _ in range(j):
            out = self.multiply(out, step)
        return out

    def _vec(self, by_degree: dict[int, Sequence[FieldElement]]) -> list[FieldElement]:
        v: list[FieldElement] = [0] * self.dim
        for j, a in by_degree.items():
            for i, c in enumerate(a):
                v[j * self.dim_base + i] = simplify(c)
        return v

    # host protocol
    def in_window(self, p: int, r: int) -> bool:
        return bool(self.window[p, r])

    def product_terms(self, p: int, r: int) -> list[tuple[int, FieldElement]]:
        t = self._table[p][r]
        if t is None:
            raise CapExceeded(f"{self.basis_labels[p]} * {self.basis_labels[r]} leaves the window (cap {self.cap})")
        return t

    def coproduct_terms(self, p: int) -> list[tuple[FieldElement, int, int]]:
        t = self._cop[p]
        if t is None:
            raise UnsupportedDelta("coproduct of x^j a with j >= 2 requires delta = 0")
        return t

    def antipode_of(self, p: int) -> list[FieldElement]:
        return self._anti[p]

    @property
    def antipode(self) -> np.ndarray:
        return linalg.exact_array([[self._anti[c][r] for c in range(self.dim)] for r in range(self.dim)])

    def coproduct_tensor(self) -> np.ndarray:
        t = linalg.zeros((self.dim,) * 3)
        for i, terms in enumerate(self._cop):
            for c, a, b in terms or ():
                t[i, a, b] += c
        return linalg.normalize(t)

    def multiply(self, u: Sequence[FieldElement], v: Sequence[FieldElement]) -> list[FieldElement]:
        out: dict = {}
        for p, a in _sparse(u).items():
            for r, b in _sparse(v).items():
                for k, c in self.product_terms(p, r):
                    _acc(out, k, a * b * c)
        return [out.get(k, 0) for k in range(self.dim)]

    def basis(self, i: int | str) -> AlgElement:
        if isinstance(i, str):
            i = self.index(i)
        return AlgElement(self, _basis_vec(self.dim, i))

    def element(self, coeffs) -> AlgElement:
        return AlgElement(self, list(coeffs))

    def one(self) -> AlgElement:
        return AlgElement(self, list(self.unit))

    def __repr__(self) -> str:
        return f"TruncatedOre(dim_base={self.dim_base}, cap={self.cap})"


def build_truncated(datum: HopfOreDatum, cap: int | None = None) -> TruncatedOre:
    return TruncatedOre(datum, datum.default_cap() if cap is None else cap)


def validate_truncated(t: TruncatedOre) -> ValidationReport:
    """Hopf axioms on every instance that stays inside the window.

    Instances that would leave the window are counted under
    ``checked["out-of-window"]`` and are not failures.
    """
    return validate_hopf(t)


# -- finite quotients ------------------------------------------------------------------------------------


def quotient_of_truncated(t: TruncatedOre, d: int, generator_extra: Sequence[FieldElement] | None = None) -> Quotient:
    """Quotient of a truncated host by the ideal generated by x^d + extra.

    The host must hold every product of two quotient monomials, so its cap
    must be at least 2d - 1.
    """
    if t.cap < 2 * d - 1:
        raise ValueError(f"cap must be at least {2 * d - 1}")
    gen = t._vec({d: list(t.datum.base.unit)})
    if generator_extra is not None:
        gen = [simplify(a + b) for a, b in zip(gen, list(generator_extra) + [0] * (t.dim - len(generator_extra)))]
    labels = [t.basis_labels[j * t.dim_base + i] for j in range(d) for i in range(t.dim_base)]
    quo = quotient_with_projection(t, [gen], labels)
    if quo.section != list(range(d * t.dim_base)):
        raise ValueError("quotient basis is not {x^j e_i : j < d}")
    return quo


def _check_order(datum: HopfOreDatum, d: int) -> None:
    if datum.has_delta:
        raise ValueError("finite quotients are built for delta = 0 only")
    if order_of_root(datum.q) != d:
        raise BadOrder(f"chi(g) = {datum.q} does not have order {d}")


def quotient_nilpotent_data(datum: HopfOreDatum, d: int, cap: int | None = None, host: TruncatedOre | None = None) -> Quotient:
    """A[x, sigma] / <x^d> with its projection from the truncated host."""
    _check_order(datum, d)
    t = host if host is not None else TruncatedOre(datum, 2 * d + 1 if cap is None else cap)
    return quotient_of_truncated(t, d)


def quotient_nilpotent(datum: HopfOreDatum, d: int, cap: int | None = None) -> FinHopf:
    return quotient_nilpotent_data(datum, d, cap).hopf


def nonnilpotent_extra(datum: HopfOreDatum, d: int) -> list[FieldElement]:
    """Coefficients of g^d - 1 (degree zero part of the generator)."""
    A = datum.base
    gd = datum.g_power(d)
    for i in range(A.dim):
        e = _basis_vec(A.dim, i)
        if _sparse(A.multiply(gd, e)) != _sparse(A.multiply(e, gd)):
            raise CentralityViolation(f"g^{d} does not commute with {A.basis_labels[i]}")
    if _sparse(character_power(A, list(datum.chi), d)) != _sparse([simplify(v) for v in A.counit]):
        raise CharacterOrderViolation(f"chi^{d} is not the counit")
    return [simplify(c - u) for c, u in zip(gd, A.unit)]


def quotient_rank_one_nonnilp_data(
    datum: HopfOreDatum, d: int, cap: int | None = None, host: TruncatedOre | None = None
) -> Quotient:
    """A[x, sigma] / <x^d + g^d - 1> with its projection."""
    _check_order(datum, d)
    extra = nonnilpotent_extra(datum, d)
    t = host if host is not None else TruncatedOre(datum, 2 * d + 1 if cap is None else cap)
    return quotient_of_truncated(t, d, extra)


def quotient_rank_one_nonnilp(datum: HopfOreDatum, d: int, cap: int | None = None) -> FinHopf:
    return quotient_rank_one_nonnilp_data(datum, d, cap).hopf
