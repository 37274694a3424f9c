"""Concrete Hopf algebras and the example partial actions built on them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import linalg
from .algcore import (
    FinAlgebra,
    FinHopf,
    _acc,
    _sparse,
    _tensor_mul,
    diagonal_algebra,
    matrix_algebra,
    upper_triangular_algebra,
)
from .hopfore import (
    HopfOreDatum,
    TruncatedOre,
    quotient_nilpotent,
    quotient_nilpotent_data,
    quotient_rank_one_nonnilp,
)
from .paction import PartialActionMap, host_vector
from .qcomb import qbinom
from .scalar import FieldElement, finv, fpow, order_of_root, primitive_root, root_of_unity, simplify


class NotAGroup(ValueError):
    """The multiplication table does not define a group."""


class InvalidDatum(ValueError):
    """The rank-one datum violates one of its conditions."""


class OmegaSquareNotCentral(ValueError):
    """The Sweedler action needs Omega^2 in the center of R."""


class WNotCentral(ValueError):
    """The Nichols action needs every w_i in the center of R."""


class RelationViolated(ValueError):
    """An operator relation required for a global action fails."""

    def __init__(self, relation: str) -> None:
        self.relation = relation
        super().__init__(f"relation violated: {relation}")


# -- groups ----------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class FinGroup:
    """A finite group by labels and multiplication table; the identity comes first."""

    labels: tuple
    table: tuple

    @classmethod
    def from_table(cls, labels: Sequence[str], table: Sequence[Sequence[int]]) -> "FinGroup":
        n = len(labels)
        tab = tuple(tuple(int(v) for v in row) for row in table)
        if len(tab) != n or any(len(r) != n for r in tab):
            raise NotAGroup("table must be square with one row per label")
        if any(not 0 <= v < n for r in tab for v in r):
            raise NotAGroup("table entries must be element indices")
        if any(tab[0][i] != i or tab[i][0] != i for i in range(n)):
            raise NotAGroup("the first element must be the identity")
        for a, b, c in product(range(n), repeat=3):
            if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                raise NotAGroup(f"associativity fails at ({a}, {b}, {c})")
        for a in range(n):
            if 0 not in tab[a]:
                raise NotAGroup(f"{labels[a]} has no inverse")
        return cls(tuple(labels), tab)

    @classmethod
    def cyclic(cls, n: int, name: str = "g") -> "FinGroup":
        if n < 1:
            raise NotAGroup("order must be positive")
        labels = ["1", name] + [f"{name}^{k}" for k in range(2, n)]
        return cls.from_table(labels[:n], [[(a + b) % n for b in range(n)] for a in range(n)])

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def power(self, a: int, k: int) -> int:
        out = 0
        step = a if k >= 0 else self.inverse(a)
        for _ in range(abs(k)):
            out = self.mul(out, step)
        return out

    def is_central(self, a: int) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for b in range(self.order))


def group_algebra(group: FinGroup | Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FinHopf:
    """kG with grouplike basis."""
    if not isinstance(group, FinGroup):
        labs = labels if labels is not None else [str(i) for i in range(len(group))]
        group = FinGroup.from_table(labs, group)
    n = group.order
    mult = linalg.zeros((n, n, n))
    for a, b in product(range(n), repeat=2):
        mult[a, b, group.mul(a, b)] = 1
    alg = FinAlgebra(list(group.labels), mult, [1] + [0] * (n - 1))
    anti = linalg.zeros((n, n))
    for a in range(n):
        anti[group.inverse(a), a] = 1
    return FinHopf(alg, [[(1, a, a)] for a in range(n)], [1] * n, anti)


def cyclic_group_algebra(n: int) -> FinHopf:
    return group_algebra(FinGroup.cyclic(n))


# -- algebras presented by words in generators --------------------------------------------------------------


def _hopf_from_words(alg: FinAlgebra, words, gen_cop: dict, gen_counit: dict, gen_anti: dict) -> FinHopf:
    """Extend coproduct, counit and antipode from generators along basis words.

    ``words[i]`` lists generator basis indices whose ordered product is e_i.
    """
    n = alg.dim
    unit = _sparse(alg.unit)
    one_one = {(a, b): c * d for a, c in unit.items() for b, d in unit.items()}
    cop, counit = [], []
    anti = linalg.zeros((n, n))
    for i, word in enumerate(words):
        d = dict(one_one)
        e: FieldElement = 1
        s = dict(unit)
        for gen in word:
            d = _tensor_mul(alg, d, gen_cop[gen])
            e = e * gen_counit[gen]
            s = _sparse(alg.multiply([gen_anti[gen].get(k, 0) for k in range(n)], [s.get(k, 0) for k in range(n)]))
        cop.append([(c, a, b) for (a, b), c in sorted(d.items())])
        counit.append(simplify(e))
        for k, c in s.items():
            anti[k, i] = c
    return FinHopf(alg, cop, counit, anti)


def _sign_sort(seq: list[int]) -> tuple[int, list[int]] | None:
    """Sign of the permutation sorting distinct entries, or None on a repeat."""
    if len(set(seq)) != len(seq):
        return None
    inv = sum(1 for a, b in combinations(range(len(seq)), 2) if seq[a] > seq[b])
    return (-1 if inv % 2 else 1), sorted(seq)


def sweedler() -> FinHopf:
    """The 4-dimensional Sweedler algebra with basis 1, g, x, gx."""
    return nichols(2)


# -- rank one ------------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class RankOneDatum:
    """(G, chi, g, beta) with d the order of chi(g)."""

    group: FinGroup
    chi: tuple
    g: int
    beta: int
    d: int

    @classmethod
    def create(cls, group: FinGroup, chi: Sequence[FieldElement], g: int, beta: int) -> "RankOneDatum":
        chi = tuple(simplify(c) for c in chi)
        n = group.order
        if len(chi) != n:
            raise InvalidDatum("one character value per group element is required")
        for a, b in product(range(n), repeat=2):
            if simplify(chi[group.mul(a, b)] - chi[a] * chi[b]):
                raise InvalidDatum(f"chi is not multiplicative at ({group.labels[a]}, {group.labels[b]})")
        if not group.is_central(g):
            raise InvalidDatum("g must be central")
        if beta not in (0, 1):
            raise InvalidDatum("beta must be 0 or 1")
        d = order_of_root(chi[g])
        if d is None or d < 2:
            raise InvalidDatum("chi(g) must be a root of unity of order at least 2")
        chi_d_trivial = all(fpow(c, d) == 1 for c in chi)
        if beta == 1 and not chi_d_trivial and group.power(g, d) != 0:
            raise InvalidDatum("need chi^d = 1 or beta (1 - g^d) = 0")
        return cls(group, chi, g, beta, d)

    @classmethod
    def cyclic(cls, n: int, q: FieldElement, beta: int) -> "RankOneDatum":
        group = FinGroup.cyclic(n)
        if fpow(q, n) != 1:
            raise InvalidDatum("q^n must be 1 for a character of C_n")
        return cls.create(group, [fpow(q, k) for k in range(n)], 1, beta)

    @property
    def q(self) -> FieldElement:
        return self.chi[self.g]

    @property
    def nilpotent(self) -> bool:
        return self.beta == 0 or self.group.power(self.g, self.d) == 0


def _rank_one_labels(group: FinGroup, d: int, var: str = "x") -> list[str]:
    out = []
    for j in range(d):
        head = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        for lab in group.labels:
            if not head:
                out.append(lab)
            else:
                out.append(head if lab == "1" else f"{head}*{lab}")
    return out


def rank_one(datum: RankOneDatum) -> FinHopf:
    """H_D from its relations, basis x^j h (group first, then powers of x).

    x^j h x^i k = chi(h)^-i x^{i+j} hk, reduced with x^d = beta (1 - g^d).
    """
    G, d, n = datum.group, datum.d, datum.group.order
    dim = d * n
    gd = G.power(datum.g, d)

    def reduce(deg: int, h: int, c: FieldElement, acc: dict) -> None:
        # x^deg h with deg possibly >= d
        if deg < d:
            _acc(acc, deg * n + h, c)
            return
        if not datum.beta:
            return
        reduce(deg - d, h, c, acc)
        reduce(deg - d, G.mul(gd, h), -c, acc)

    mult = linalg.zeros((dim, dim, dim))
    for (j, h), (i, k) in product(product(range(d), range(n)), repeat=2):
        acc: dict = {}
        reduce(i + j, G.mul(h, k), fpow(datum.chi[h], -i), acc)
        for t, c in acc.items():
            mult[j * n + h, i * n + k, t] = c
    alg = FinAlgebra(_rank_one_labels(G, d), mult, [1] + [0] * (dim - 1))
    x = n  # basis index of x
    gens_cop = {h: {(h, h): 1} for h in range(n)}
    gens_cop[x] = {(x, 0): 1, (datum.g, x): 1}
    counit = {h: 1 for h in range(n)}
    counit[x] = 0
    anti = {h: {G.inverse(h): 1} for h in range(n)}
    g_inv = G.inverse(datum.g)
    s_x = _sparse(alg.multiply([1 if t == g_inv else 0 for t in range(dim)], [1 if t == x else 0 for t in range(dim)]))
    anti[x] = {k: -c for k, c in s_x.items()}
    words = [tuple([x] * j + ([h] if h else [])) for j in range(d) for h in range(n)]
    return _hopf_from_words(alg, words, gens_cop, counit, anti)


def group_ore_datum(group: FinGroup, chi: Sequence[FieldElement], g: int, var: str = "x") -> HopfOreDatum:
    """kG[x, sigma] with sigma(h) = chi(h) g h g^-1."""
    A = group_algebra(group)
    n = group.order
    sigma = linalg.zeros((n, n))
    gi = group.inverse(g)
    for h in range(n):
        sigma[group.mul(group.mul(g, h), gi), h] = chi[h]
    return HopfOreDatum.create(A, sigma, g, var=var)


def cyclic_ore_datum(n: int, q: FieldElement, var: str = "x") -> HopfOreDatum:
    """kC_n[x, sigma] with sigma(g) = q g."""
    return group_ore_datum(FinGroup.cyclic(n), [fpow(q, k) for k in range(n)], 1, var)


def rank_one_via_ore(datum: RankOneDatum) -> FinHopf:
    """H_D as the quotient of kG[x, sigma] by <x^d> or <x^d + g^d - 1>."""
    ore = group_ore_datum(datum.group, datum.chi, datum.g)
    if datum.beta == 0:
        return quotient_nilpotent(ore, datum.d)
    return quotient_rank_one_nonnilp(ore, datum.d)


def taft(n: int, d: int, q: FieldElement) -> FinHopf:
    datum = RankOneDatum.cyclic(n, q, 0)
    if datum.d != d:
        raise InvalidDatum(f"q has order {datum.d}, not {d}")
    return rank_one(datum)


def radford(n: int, d: int, q: FieldElement) -> FinHopf:
    datum = RankOneDatum.cyclic(n, q, 1)
    if datum.d != d:
        raise InvalidDatum(f"q has order {datum.d}, not {d}")
    return rank_one(datum)


# -- Nichols algebras ---------------------------------------------------------------------------------------


def _nichols_names(n: int) -> list[str]:
    return ["x"] if n == 2 else [f"x{i}" for i in range(1, n)]


def _nichols_monomials(n: int) -> list[tuple[int, tuple[int, ...]]]:
    """(a, S) for g^a x_S, x-monomials graded then lexicographic, g^0 before g^1."""
    m = n - 1
    subsets = [s for size in range(m + 1) for s in combinations(range(m), size)]
    return [(a, s) for s in subsets for a in (0, 1)]


def nichols(n: int) -> FinHopf:
    """The 2^n-dimensional Nichols Hopf algebra from its relations.

    g^2 = 1, x_i g = -g x_i, x_i x_j = -x_j x_i; basis g^a x_S.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    names = _nichols_names(n)
    monos = _nichols_monomials(n)
    pos = {mono: i for i, mono in enumerate(monos)}
    dim = len(monos)
    labels = []
    for a, s in monos:
        word = ("g" if a else "") + "".join(names[i] for i in s)
        labels.append(word or "1")
    mult = linalg.zeros((dim, dim, dim))
    for (i, (a, s)), (j, (b, t)) in product(enumerate(monos), repeat=2):
        sorted_ = _sign_sort(list(s) + list(t))
        if sorted_ is None:
            continue
        sign, merged = sorted_
        if b and len(s) % 2:
            sign = -sign
        mult[i, j, pos[((a + b) % 2, tuple(merged))]] = sign
    alg = FinAlgebra(labels, mult, [1] + [0] * (dim - 1))
    g = pos[(1, ())]
    xs = [pos[(0, (i,))] for i in range(n - 1)]
    gen_cop = {0: {(0, 0): 1}, g: {(g, g): 1}}
    counit = {0: 1, g: 1}
    anti = {0: {0: 1}, g: {g: 1}}
    for i, x in enumerate(xs):
        gen_cop[x] = {(x, 0): 1, (g, x): 1}
        counit[x] = 0
        anti[x] = {pos[(1, (i,))]: -1}
    words = [tuple(([g] if a else []) + [xs[i] for i in s]) for a, s in monos]
    return _hopf_from_words(alg, words, gen_cop, counit, anti)


def nichols_sigma(H: FinHopf, parity: Sequence[int]) -> np.ndarray:
    """The automorphism g -> -g, x_i -> -x_i on a basis of signed monomials."""
    return linalg.exact_array(np.diag([(-1) ** p for p in parity]).astype(np.int64))


@dataclass
class NicholsTower:
    """The iterated construction with one Ore datum and quotient per step."""

    algebras: list
    data: list
    quotients: list
    parities: list


def nichols_iterative(n: int) -> NicholsTower:
    """H_{2^{k+1}} = H_{2^k}[x_k, sigma_k] / <x_k^2>, starting from Sweedler."""
    if n < 2:
        raise ValueError("n must be at least 2")
    H = nichols(2)
    if n > 2:
        # rename x to x1 so generator names match the direct construction
        H = FinHopf(
            FinAlgebra(["1", "g", "x1", "gx1"], H.alg.mult, H.unit), H.coproduct, H.counit, H.antipode
        )
    parity = [0, 1, 1, 0]
    tower = NicholsTower([H], [], [], [parity])
    for k in range(2, n):
        datum = HopfOreDatum.create(H, nichols_sigma(H, parity), "g", var=f"x{k}")
        quo = quotient_nilpotent_data(datum, 2)
        H = quo.hopf
        parity = parity + [(p + 1) % 2 for p in parity]
        tower.data.append(datum)
        tower.quotients.append(quo)
        tower.algebras.append(H)
        tower.parities.append(parity)
    return tower


def nichols_isomorphism(n: int, tower: NicholsTower | None = None) -> np.ndarray:
    """Change of basis T from the direct basis to the iterated one.

    Column i of T is the product, in the iterated algebra, of the generator
    images making up the i-th direct basis monomial.
    """
    tower = tower or nichols_iterative(n)
    H = tower.algebras[-1]
    names = _nichols_names(n)
    gens = {"g": H.index("g")}
    for name in names:
        gens[name] = H.index(name)
    cols = []
    for a, s in _nichols_monomials(n):
        v = list(H.unit)
        word = (["g"] if a else []) + [names[i] for i in s]
        for w in word:
            e = [0] * H.dim
            e[gens[w]] = 1
            v = H.multiply(v, e)
        cols.append(v)
    return linalg.exact_array([[cols[c][r] for c in range(len(cols))] for r in range(H.dim)])


def check_isomorphism(H1: FinHopf, H2: FinHopf, T: np.ndarray) -> bool:
    """T (columns = images of H1's basis in H2) is a Hopf algebra isomorphism."""
    n = H1.dim
    if H2.dim != n or linalg.rank([list(r) for r in T]) < n:
        return False
    cols = [linalg.tolist(T[:, i]) for i in range(n)]

    def img(v: dict) -> dict:
        out: dict = {}
        for i, c in v.items():
            for k, d in _sparse(cols[i]).items():
                _acc(out, k, c * d)
        return out

    for i, j in product(range(n), repeat=2):
        left = img({k: c for k, c in H1.product_terms(i, j)})
        right = _sparse(H2.multiply(cols[i], cols[j]))
        if left != right:
            return False
    if img(_sparse(H1.unit)) != _sparse(H2.unit):
        return False
    for i in range(n):
        left: dict = {}
        for c, a, b in H1.coproduct_terms(i):
            for ka, ca in _sparse(cols[a]).items():
                for kb, cb in _sparse(cols[b]).items():
                    _acc(left, (ka, kb), c * ca * cb)
        right: dict = {}
        for k, c in _sparse(cols[i]).items():
            for d, a, b in H2.coproduct_terms(k):
                _acc(right, (a, b), c * d)
        if left != right:
            return False
        if simplify(sum(H2.counit[k] * c for k, c in _sparse(cols[i]).items()) - H1.counit[i]):
            return False
        s_left = img(_sparse(H1.antipode_of(i)))
        s_right: dict = {}
        for k, c in _sparse(cols[i]).items():
            for t, d in _sparse(H2.antipode_of(k)).items():
                _acc(s_right, t, c * d)
        if s_left != s_right:
            return False
    return True


# -- example partial actions ---------------------------------------------------------------------------------


def sweedler_partial_action(R: FinAlgebra, omega) -> PartialActionMap:
    """1.r = r, g.r = 0, x.r = omega r, gx.r = r omega."""
    H = sweedler()
    w = host_vector(R, omega)
    if not R.is_central(R.multiply(w, w)):
        raise OmegaSquareNotCentral("Omega^2 is not central")
    m = R.dim
    mats = linalg.zeros((4, m, m))
    mats[0] = linalg.identity(m)
    mats[2] = R.left_matrix(w)
    mats[3] = R.right_matrix(w)
    return PartialActionMap(H, R, mats, {"kind": "sweedler", "omega": tuple(w)})


def nichols_partial_action(n: int, R: FinAlgebra, w_list, H: FinHopf | None = None) -> PartialActionMap:
    """g.r = 0, x_i.r = g x_i.r = w_i r, longer x-monomials act as 0."""
    H = H if H is not None else nichols(n)
    if len(w_list) != n - 1:
        raise ValueError(f"expected {n - 1} elements w_i")
    ws = [host_vector(R, w) for w in w_list]
    for i, w in enumerate(ws):
        if not R.is_central(w):
            raise WNotCentral(f"w_{i + 1} is not central")
    m = R.dim
    mats = linalg.zeros((H.dim, m, m))
    mats[0] = linalg.identity(m)
    names = _nichols_names(n)
    for name, w in zip(names, ws):
        L = R.left_matrix(w)
        mats[H.index(name)] = L
        mats[H.index("g" + name)] = L
    return PartialActionMap(H, R, mats, {"kind": "nichols", "w": tuple(tuple(w) for w in ws)})


def sweedler_ore_datum(var: str = "y") -> HopfOreDatum:
    """Sweedler[y, sigma] with sigma(g) = -g and sigma(x) = -x."""
    H = sweedler()
    return HopfOreDatum.create(H, nichols_sigma(H, [0, 1, 1, 0]), "g", var=var)


def inner_derivation(R: FinAlgebra, alpha, u) -> np.ndarray:
    """Matrix of r -> u r - alpha(r) u, an alpha-derivation."""
    uv = host_vector(R, u)
    return linalg.normalize(
        linalg.add(R.left_matrix(uv), linalg.scale(-1, linalg.matmul(R.right_matrix(uv), linalg.exact_array(alpha))))
    )


def conjugation(R: FinAlgebra, u, u_inv) -> np.ndarray:
    """Matrix of r -> u r u^-1."""
    return linalg.normalize(linalg.matmul(R.left_matrix(host_vector(R, u)), R.right_matrix(host_vector(R, u_inv))))


def _is_twisted_derivation(R: FinAlgebra, D: np.ndarray, alpha: np.ndarray) -> bool:
    """D(rs) = D(r) s + alpha(r) D(s) on basis pairs."""
    C = R.mult
    lhs = linalg.einsum("rst,at->rsa", C, D)
    rhs = linalg.add(
        linalg.einsum("pr,pst->rst", D, C),
        linalg.einsum("pr,qs,pqt->rst", alpha, D, C),
    )
    return linalg.equal(lhs, rhs)


def _is_automorphism(R: FinAlgebra, alpha: np.ndarray) -> bool:
    C = R.mult
    lhs = linalg.einsum("rst,at->rsa", C, alpha)
    rhs = linalg.einsum("pr,qs,pqt->rst", alpha, alpha, C)
    unit = linalg.exact_array(list(R.unit))
    return linalg.equal(lhs, rhs) and linalg.equal(linalg.matmul(alpha, unit), unit)


def global_sweedler_ore_action(
    R: FinAlgebra, alpha_g, d_x, d_y, cap: int | None = None, host: TruncatedOre | None = None
) -> PartialActionMap:
    """The global action y^j a . r = d_y^j (a . r) with g -> alpha_g, x -> d_x."""
    m = R.dim
    I = linalg.exact_array(linalg.identity(m))
    al, dx, dy = (linalg.exact_array(np.asarray(M)) for M in (alpha_g, d_x, d_y))
    mm = linalg.matmul
    neg = lambda M: linalg.scale(-1, M)  # noqa: E731
    relations = [
        ("alpha_g is an algebra automorphism", _is_automorphism(R, al)),
        ("alpha_g^2 = id", linalg.equal(mm(al, al), I)),
        ("d_x is an alpha_g-derivation", _is_twisted_derivation(R, dx, al)),
        ("alpha_g d_x = -d_x alpha_g", linalg.equal(mm(al, dx), neg(mm(dx, al)))),
        ("d_x^2 = 0", linalg.is_zero(mm(dx, dx))),
        ("d_y is an alpha_g-derivation", _is_twisted_derivation(R, dy, al)),
        ("d_y alpha_g = -alpha_g d_y", linalg.equal(mm(dy, al), neg(mm(al, dy)))),
        ("d_y d_x = -d_x d_y", linalg.equal(mm(dy, dx), neg(mm(dx, dy)))),
    ]
    for name, ok in relations:
        if not ok:
            raise RelationViolated(name)
    datum = sweedler_ore_datum()
    t = host if host is not None else TruncatedOre(datum, datum.default_cap() if cap is None else cap)
    base = [I, al, dx, mm(al, dx)]
    mats = []
    power = I
    for _ in range(t.cap + 1):
        mats.extend(linalg.normalize(mm(power, b)) for b in base)
        power = linalg.normalize(mm(dy, power))
    return PartialActionMap(t, R, linalg.exact_array(mats), {"kind": "global"})


# -- small target algebras ----------------------------------------------------------------------------------


TARGETS = {
    "k1": lambda: diagonal_algebra(1),
    "k2": lambda: diagonal_algebra(2),
    "k3": lambda: diagonal_algebra(3),
    "ut2": upper_triangular_algebra,
    "m2": lambda: matrix_algebra(2),
}


def target_algebra(name: str) -> FinAlgebra:
    try:
        return TARGETS[name]()
    except KeyError:
        raise ValueError(f"unknown target algebra {name!r}; choose from {sorted(TARGETS)}") from None
