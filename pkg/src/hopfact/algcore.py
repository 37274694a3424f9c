"""Finite-dimensional algebras and Hopf algebras as structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .scalar import FieldElement, fdiv, render_scalar, simplify


class NotAHopfIdeal(ValueError):
    """The generated ideal fails a Hopf ideal condition."""


class CapExceeded(ArithmeticError):
    """A product left the finite window of a truncated host."""


Sparse = dict  # index or index tuple -> nonzero coefficient


def _acc(d: dict, key, c) -> None:
    v = simplify(d.get(key, 0) + c)
    if v:
        d[key] = v
    else:
        d.pop(key, None)


def _sparse(vec: Sequence[FieldElement]) -> dict[int, FieldElement]:
    return {i: simplify(c) for i, c in enumerate(vec) if c}


# -- algebras ------------------------------------------------------------------


class FinAlgebra:
    """A unital algebra with basis e_0..e_{d-1} and e_i e_j = sum_k c[i,j,k] e_k."""

    def __init__(self, labels: Sequence[str], mult, unit: Sequence[FieldElement]) -> None:
        self.basis_labels = list(labels)
        self.dim = len(self.basis_labels)
        self.mult = linalg.exact_array(mult)
        if self.mult.shape != (self.dim,) * 3:
            raise ValueError("structure tensor has the wrong shape")
        self.unit = linalg.exact_array(list(unit))
        self._table = [
            [[(k, simplify(self.mult[i, j, k])) for k in range(self.dim) if self.mult[i, j, k]] for j in range(self.dim)]
            for i in range(self.dim)
        ]

    # the host protocol shared with truncated Ore extensions
    def product_terms(self, i: int, j: int) -> list[tuple[int, FieldElement]]:
        return self._table[i][j]

    def in_window(self, i: int, j: int) -> bool:
        return True

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def basis(self, i: int | str) -> "AlgElement":
        if isinstance(i, str):
            i = self.index(i)
        v = [0] * self.dim
        v[i] = 1
        return AlgElement(self, v)

    def one(self) -> "AlgElement":
        return AlgElement(self, list(self.unit))

    def element(self, coeffs: Sequence[FieldElement]) -> "AlgElement":
        return AlgElement(self, list(coeffs))

    def multiply(self, u: Sequence[FieldElement], v: Sequence[FieldElement]) -> list[FieldElement]:
        out: dict[int, FieldElement] = {}
        su, sv = _sparse(u), _sparse(v)
        for i, a in su.items():
            for j, b in sv.items():
                for k, c in self.product_terms(i, j):
                    _acc(out, k, a * b * c)
        return [out.get(k, 0) for k in range(self.dim)]

    def left_matrix(self, u: Sequence[FieldElement]) -> np.ndarray:
        """Matrix of r -> u r (columns are images of basis vectors)."""
        u = linalg.exact_array(list(u))
        return linalg.normalize(linalg.einsum("i,ijk->kj", u, self.mult))

    def right_matrix(self, u: Sequence[FieldElement]) -> np.ndarray:
        """Matrix of r -> r u."""
        u = linalg.exact_array(list(u))
        return linalg.normalize(linalg.einsum("j,ijk->ki", u, self.mult))

    def power(self, u: Sequence[FieldElement], k: int) -> list[FieldElement]:
        out = list(self.unit)
        for _ in range(k):
            out = self.multiply(out, u)
        return out

    def is_central(self, u: Sequence[FieldElement]) -> bool:
        return linalg.equal(self.left_matrix(u), self.right_matrix(u))

    def __repr__(self) -> str:
        return f"FinAlgebra(dim={self.dim}, basis={self.basis_labels})"


class AlgElement:
    """A coefficient vector tied to its parent algebra."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent, coeffs: Sequence[FieldElement]) -> None:
        if len(coeffs) != parent.dim:
            raise ValueError(f"expected {parent.dim} coefficients, got {len(coeffs)}")
        self.parent = parent
        self.coeffs = tuple(simplify(c) for c in coeffs)

    def _check(self, other: "AlgElement") -> None:
        if other.parent is not self.parent:
            raise ValueError("elements of different algebras")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.parent, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.parent, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.parent, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(self.parent, self.parent.multiply(self.coeffs, other.coeffs))
        return AlgElement(self.parent, [a * other for a in self.coeffs])

    def __rmul__(self, other):
        return AlgElement(self.parent, [other * a for a in self.coeffs])

    def __pow__(self, k: int) -> "AlgElement":
        return AlgElement(self.parent, self.parent.power(self.coeffs, k))

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgElement) and other.parent is self.parent and all(
            not simplify(a - b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for c, lab in zip(self.coeffs, self.parent.basis_labels):
            if c:
                terms.append(lab if c == 1 else f"({render_scalar(c)})*{lab}")
        return " + ".join(terms) if terms else "0"


# -- Hopf algebras ----------------------------------------------------------------


class FinHopf:
    """A FinAlgebra with coproduct triples, counit vector and antipode matrix.

    ``coproduct[i]`` lists (c, j, k) with Delta(e_i) = sum c e_j (x) e_k.
    Column i of ``antipode`` is S(e_i).
    """

    def __init__(self, alg: FinAlgebra, coproduct, counit, antipode) -> None:
        self.alg = alg
        self.dim = alg.dim
        self.basis_labels = alg.basis_labels
        self.coproduct = [
            [(simplify(c), j, k) for c, j, k in terms if simplify(c)] for terms in coproduct
        ]
        if len(self.coproduct) != self.dim:
            raise ValueError("one coproduct entry per basis element is required")
        self.counit = linalg.exact_array(list(counit))
        self.antipode = linalg.exact_array(antipode)
        self.unit = alg.unit
        self.mult = alg.mult

    def product_terms(self, i: int, j: int):
        return self.alg.product_terms(i, j)

    def in_window(self, i: int, j: int) -> bool:
        return True

    def coproduct_terms(self, i: int) -> list[tuple[FieldElement, int, int]]:
        return self.coproduct[i]

    def antipode_of(self, i: int) -> list[FieldElement]:
        return [simplify(v) for v in self.antipode[:, i]]

    def coproduct_tensor(self) -> np.ndarray:
        t = linalg.zeros((self.dim,) * 3)
        for i, terms in enumerate(self.coproduct):
            for c, j, k in terms:
                t[i, j, k] += c
        return linalg.normalize(t)

    def index(self, label: str) -> int:
        return self.alg.index(label)

    def basis(self, i) -> AlgElement:
        return self.alg.basis(i)

    def one(self) -> AlgElement:
        return self.alg.one()

    def element(self, coeffs) -> AlgElement:
        return self.alg.element(coeffs)

    def multiply(self, u, v):
        return self.alg.multiply(u, v)

    def coproduct_of(self, u: Sequence[FieldElement]) -> dict[tuple[int, int], FieldElement]:
        out: dict = {}
        for i, a in _sparse(u).items():
            for c, j, k in self.coproduct[i]:
                _acc(out, (j, k), a * c)
        return out

    def __repr__(self) -> str:
        return f"FinHopf(dim={self.dim}, basis={self.basis_labels})"


# -- reports ----------------------------------------------------------------------


@dataclass
class Violation:
    axiom: str
    witness: tuple
    lhs: object = None
    rhs: object = None

    def __str__(self) -> str:
        return f"{self.axiom} at {self.witness}: {self.lhs!r} != {self.rhs!r}"


@dataclass
class ValidationReport:
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def witness(self) -> tuple | None:
        return self.violations[0].witness if self.violations else None

    def failed_axioms(self) -> list[str]:
        return sorted({v.axiom for v in self.violations})

    def __bool__(self) -> bool:
        return self.ok


def _mul_basis(A, i: int, j: int) -> dict[int, FieldElement]:
    return {k: c for k, c in A.product_terms(i, j)}


def _mul_sparse(A, u: dict, v: dict) -> dict:
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            for k, c in A.product_terms(i, j):
                _acc(out, k, a * b * c)
    return out


def _dense(d: dict, n: int) -> list:
    return [d.get(k, 0) for k in range(n)]


def validate_algebra(A: FinAlgebra, limit: int | None = None) -> ValidationReport:
    """Check the unit axiom and associativity on every basis instance."""
    A = A.alg if isinstance(A, FinHopf) else A
    rep = ValidationReport()
    n = A.dim
    unit = _sparse(A.unit)
    unit_idx = next(iter(unit)) if len(unit) == 1 else -1
    for j in range(n):
        e = {j: 1}
        for side, val in (("unit-left", _mul_sparse(A, unit, e)), ("unit-right", _mul_sparse(A, e, unit))):
            if val != e:
                k = next(k for k in sorted(set(val) | {j}) if val.get(k, 0) != e.get(k, 0))
                rep.violations.append(Violation(side, (unit_idx, j, k), _dense(val, n), _dense(e, n)))
    rep.checked["unit"] = 2 * n
    skipped = 0
    for i, j, k in product(range(n), repeat=3):
        try:
            lhs = _mul_sparse(A, _mul_basis(A, i, j), {k: 1})
            rhs = _mul_sparse(A, {i: 1}, _mul_basis(A, j, k))
        except CapExceeded:
            skipped += 1
            continue
        if lhs != rhs:
            rep.violations.append(Violation("associativity", (i, j, k), _dense(lhs, n), _dense(rhs, n)))
            if limit and len(rep.violations) >= limit:
                break
    rep.checked["associativity"] = n**3 - skipped
    rep.checked["out-of-window"] = skipped
    return rep


def _tensor_mul(H, x: dict, y: dict) -> dict:
    out: dict = {}
    for (a, b), c1 in x.items():
        for (p, q), c2 in y.items():
            left = H.product_terms(a, p)
            right = H.product_terms(b, q)
            for k1, d1 in left:
                for k2, d2 in right:
                    _acc(out, (k1, k2), c1 * c2 * d1 * d2)
    return out


def _cop(H, i: int) -> dict:
    out: dict = {}
    for c, j, k in H.coproduct_terms(i):
        _acc(out, (j, k), c)
    return out


def _cop_vec(H, u: dict) -> dict:
    out: dict = {}
    for i, a in u.items():
        for c, j, k in H.coproduct_terms(i):
            _acc(out, (j, k), a * c)
    return out


def validate_hopf(H: FinHopf) -> ValidationReport:
    """Coassociativity, counit, bialgebra compatibility and antipode axioms."""
    rep = validate_algebra(H)
    n = H.dim
    eps = [simplify(v) for v in H.counit]
    unit = _sparse(H.unit)
    # coassociativity
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for c, j, k in H.coproduct_terms(i):
            for d, a, b in H.coproduct_terms(j):
                _acc(left, (a, b, k), c * d)
            for d, a, b in H.coproduct_terms(k):
                _acc(right, (j, a, b), c * d)
        if left != right:
            rep.violations.append(Violation("coassociativity", (i,), left, right))
    rep.checked["coassociativity"] = n
    # counit
    for i in range(n):
        l: dict = {}
        r: dict = {}
        for c, j, k in H.coproduct_terms(i):
            _acc(l, k, c * eps[j])
            _acc(r, j, c * eps[k])
        if l != {i: 1}:
            rep.violations.append(Violation("counit-left", (i,), _dense(l, n), _dense({i: 1}, n)))
        if r != {i: 1}:
            rep.violations.append(Violation("counit-right", (i,), _dense(r, n), _dense({i: 1}, n)))
    rep.checked["counit"] = 2 * n
    # unit is grouplike, counit is unital
    one_one: dict = {}
    for a, c in unit.items():
        for b, d in unit.items():
            _acc(one_one, (a, b), c * d)
    if _cop_vec(H, unit) != one_one:
        rep.violations.append(Violation("coproduct-unit", (), _cop_vec(H, unit), one_one))
    if simplify(sum(eps[i] * c for i, c in unit.items())) != 1:
        rep.violations.append(Violation("counit-unit", (), None, 1))
    # multiplicativity of coproduct and counit
    cops = [_cop(H, i) for i in range(n)]
    skipped = 0
    for i, j in product(range(n), repeat=2):
        try:
            prod_ij = _mul_basis(H, i, j)
            lhs = _cop_vec(H, prod_ij)
            rhs = _tensor_mul(H, cops[i], cops[j])
        except CapExceeded:
            skipped += 1
            continue
        if lhs != rhs:
            rep.violations.append(Violation("coproduct-multiplicative", (i, j), lhs, rhs))
        e_lhs = simplify(sum(eps[k] * c for k, c in prod_ij.items()))
        if e_lhs != simplify(eps[i] * eps[j]):
            rep.violations.append(Violation("counit-multiplicative", (i, j), e_lhs, eps[i] * eps[j]))
    rep.checked["bialgebra"] = 2 * (n * n - skipped)
    rep.checked["out-of-window"] += skipped
    # antipode
    for i in range(n):
        target = {k: simplify(eps[i] * c) for k, c in unit.items() if simplify(eps[i] * c)}
        l: dict = {}
        r: dict = {}
        for c, j, k in H.coproduct_terms(i):
            sj = _sparse(H.antipode_of(j))
            sk = _sparse(H.antipode_of(k))
            for key, v in _mul_sparse(H, sj, {k: c}).items():
                _acc(l, key, v)
            for key, v in _mul_sparse(H, {j: c}, sk).items():
                _acc(r, key, v)
        if l != target:
            rep.violations.append(Violation("antipode-left", (i,), _dense(l, n), _dense(target, n)))
        if r != target:
            rep.violations.append(Violation("antipode-right", (i,), _dense(r, n), _dense(target, n)))
    rep.checked["antipode"] = 2 * n
    return rep


# -- distinguished elements -------------------------------------------------------------


def is_grouplike(H: FinHopf, u: Sequence[FieldElement]) -> bool:
    su = _sparse(u)
    if simplify(sum(H.counit[i] * c for i, c in su.items())) != 1:
        return False
    gg: dict = {}
    for a, c in su.items():
        for b, d in su.items():
            _acc(gg, (a, b), c * d)
    return _cop_vec(H, su) == gg


def grouplikes(H: FinHopf, max_support: int = 2, pool: Sequence[FieldElement] = (1, -1)) -> list[AlgElement]:
    """Grouplike elements found among coefficient patterns on small supports.

    Supports of size <= ``max_support`` are searched with leading coefficient
    1 and the remaining coefficients drawn from ``pool``; each candidate is
    rescaled to counit 1 and checked exactly.  This finds every grouplike of
    the pointed families built here, but is not a general solver.
    """
    found: list[list[FieldElement]] = []
    n = H.dim
    for size in range(1, max_support + 1):
        for support in combinations(range(n), size):
            for tail in product(pool, repeat=size - 1):
                v: list[FieldElement] = [0] * n
                v[support[0]] = 1
                for idx, c in zip(support[1:], tail):
                    v[idx] = c
                e = simplify(sum(H.counit[i] * c for i, c in enumerate(v) if c))
                if not e:
                    continue
                v = [fdiv(c, e) for c in v]
                if is_grouplike(H, v) and v not in found:
                    found.append(v)
    return [H.element(v) for v in found]


def skew_primitives(H: FinHopf, g: AlgElement, h: AlgElement) -> list[AlgElement]:
    """Basis of {x : Delta(x) = x (x) h + g (x) x}."""
    n = H.dim
    cols = []
    for i in range(n):
        d = _cop(H, i)
        for k, c in _sparse(h.coeffs).items():
            _acc(d, (i, k), -c)
        for k, c in _sparse(g.coeffs).items():
            _acc(d, (k, i), -c)
        cols.append(d)
    rows = [[cols[i].get((a, b), 0) for i in range(n)] for a in range(n) for b in range(n)]
    return [H.element(v) for v in linalg.nullspace(rows, n)]


def center(R: FinAlgebra) -> list[AlgElement]:
    """Basis of Z(R): kernel of r -> (e_i r - r e_i)_i."""
    R = R.alg if isinstance(R, FinHopf) else R
    n = R.dim
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        m = linalg.add(R.right_matrix(e), linalg.scale(-1, R.left_matrix(e)))
        # (r e_i - e_i r) as a linear map of r
        rows.extend(list(m[a]) for a in range(n))
    return [R.element(v) for v in linalg.nullspace(rows, n)]


# -- ideals and quotients ------------------------------------------------------------------


@dataclass
class IdealSpan:
    basis: list[list[FieldElement]]
    pivots: list[int]
    window_hits: int = 0


def ideal_span(H, generators: Iterable[Sequence[FieldElement]]) -> IdealSpan:
    """Smallest subspace containing the generators and closed under left and
    right multiplication by basis elements.  Pivots are taken from the last
    basis element backwards so the quotient keeps the low monomials.
    """
    n = H.dim
    order = list(range(n - 1, -1, -1))
    rows, pivots = linalg.rref([list(g) for g in generators], order)
    hits = 0
    while True:
        new = []
        for v in rows:
            sv = _sparse(v)
            for i in range(n):
                for side in (0, 1):
                    out: dict = {}
                    ok = True
                    for j, c in sv.items():
                        a, b = (i, j) if side == 0 else (j, i)
                        if not H.in_window(a, b):
                            ok = False
                            break
                        for k, d in H.product_terms(a, b):
                            _acc(out, k, c * d)
                    if not ok:
                        hits += 1
                        continue
                    if out:
                        new.append(_dense(out, n))
        red, piv = linalg.rref(rows + new, order)
        if len(piv) == len(pivots):
            return IdealSpan(red, piv, hits)
        rows, pivots = red, piv


@dataclass
class Quotient:
    hopf: FinHopf
    section: list[int]
    projection: np.ndarray  # dim(H/I) x dim(H)
    ideal: IdealSpan
    host: object = None


def _project(proj_cols: list[dict], u: dict) -> dict:
    out: dict = {}
    for i, c in u.items():
        for k, d in proj_cols[i].items():
            _acc(out, k, c * d)
    return out


def quotient_with_projection(H, ideal_generators: Sequence, labels: Sequence[str] | None = None) -> Quotient:
    """Hopf quotient H/I together with the projection and coset section."""
    gens = [g.coeffs if isinstance(g, AlgElement) else list(g) for g in ideal_generators]
    n = H.dim
    span = ideal_span(H, gens)
    pivset = set(span.pivots)
    section = [i for i in range(n) if i not in pivset]
    pos = {b: t for t, b in enumerate(section)}
    proj_cols: list[dict] = []
    row_of = dict(zip(span.pivots, span.basis))
    for i in range(n):
        if i in pos:
            proj_cols.append({pos[i]: 1})
        else:
            row = row_of[i]
            proj_cols.append({pos[j]: simplify(-row[j]) for j in section if row[j]})
    m = len(section)
    eps = [simplify(v) for v in H.counit]
    # Hopf ideal conditions on the ideal basis
    for v in span.basis:
        sv = _sparse(v)
        if simplify(sum(eps[i] * c for i, c in sv.items())):
            raise NotAHopfIdeal(f"counit does not vanish on the ideal (element {v})")
        dv = _cop_vec(H, sv)
        img: dict = {}
        for (a, b), c in dv.items():
            for ka, ca in proj_cols[a].items():
                for kb, cb in proj_cols[b].items():
                    _acc(img, (ka, kb), c * ca * cb)
        if img:
            raise NotAHopfIdeal(f"ideal is not a coideal (element {v})")
        sv_img: dict = {}
        for i, c in sv.items():
            for k, d in _sparse(H.antipode_of(i)).items():
                _acc(sv_img, k, c * d)
        if _project(proj_cols, sv_img):
            raise NotAHopfIdeal(f"antipode does not preserve the ideal (element {v})")
    mult = linalg.zeros((m, m, m))
    for a, i in enumerate(section):
        for b, j in enumerate(section):
            if not H.in_window(i, j):
                raise CapExceeded(f"product of {H.basis_labels[i]} and {H.basis_labels[j]} leaves the window")
            for k, c in _project(proj_cols, _mul_basis(H, i, j)).items():
                mult[a, b, k] += c
    unit = _project(proj_cols, _sparse(H.unit))
    cop = []
    for i in section:
        terms: dict = {}
        for c, j, k in H.coproduct_terms(i):
            for ka, ca in proj_cols[j].items():
                for kb, cb in proj_cols[k].items():
                    _acc(terms, (ka, kb), c * ca * cb)
        cop.append([(c, a, b) for (a, b), c in sorted(terms.items())])
    counit = [eps[i] for i in section]
    anti = linalg.zeros((m, m))
    for a, i in enumerate(section):
        for k, c in _project(proj_cols, _sparse(H.antipode_of(i))).items():
            anti[k, a] = c
    labs = list(labels) if labels is not None else [H.basis_labels[i] for i in section]
    alg = FinAlgebra(labs, mult, _dense(unit, m))
    proj = linalg.zeros((m, n))
    for i, col in enumerate(proj_cols):
        for k, c in col.items():
            proj[k, i] = c
    return Quotient(FinHopf(alg, cop, counit, anti), section, linalg.normalize(proj), span, H)


def quotient_hopf(H, ideal_generators: Sequence) -> FinHopf:
    """H / I for the two-sided ideal I generated by ``ideal_generators``."""
    return quotient_with_projection(H, ideal_generators).hopf


# -- small constructors --------------------------------------------------------------------


def matrix_algebra(n: int = 2) -> FinAlgebra:
    """M_n with basis e_ij in row-major order."""
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    d = n * n
    mult = linalg.zeros((d, d, d))
    for i, j, k, l in product(range(n), repeat=4):
        if j == k:
            mult[i * n + j, k * n + l, i * n + l] = 1
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return FinAlgebra(labels, mult, unit)


def diagonal_algebra(n: int = 2) -> FinAlgebra:
    """k^n with orthogonal idempotent basis."""
    mult = linalg.zeros((n, n, n))
    for i in range(n):
        mult[i, i, i] = 1
    return FinAlgebra([f"e{i + 1}" for i in range(n)], mult, [1] * n)


def upper_triangular_algebra() -> FinAlgebra:
    """Upper-triangular 2x2 matrices with basis e11, e12, e22."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
    mult = linalg.zeros((3, 3, 3))
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                mult[a, b, idx[(i, l)]] = 1
    return FinAlgebra(["e11", "e12", "e22"], mult, [1, 0, 1])
