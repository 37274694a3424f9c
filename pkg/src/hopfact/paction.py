"""Partial actions of Hopf algebras as explicit matrices.

A partial action of a host H on an algebra R is stored as one dim(R) x dim(R)
matrix per basis element of H (columns are images of R's basis).  All checks
are exhaustive over basis tuples and exact.  On truncated Ore hosts a check is
performed only where every product it needs lies inside the window; the rest
is counted as out-of-window and never reported as passed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .algcore import (
    AlgElement,
    CapExceeded,
    FinAlgebra,
    Quotient,
    _sparse,
    ideal_span,
    quotient_with_projection,
)
from .hopfore import (
    HopfOreDatum,
    TruncatedOre,
    character_power,
    quotient_of_truncated,
    nonnilpotent_extra,
    sigma_power_matrix,
)
from .qcomb import ext_coefficient
from .scalar import FieldElement, order_of_root, render_scalar, simplify


class DimensionMismatch(ValueError):
    """An element does not belong to the declared parent."""


class PreconditionFailed(ValueError):
    """A hypothesis required by a check or construction does not hold."""


class JActsNonzero(ValueError):
    """The ideal generated by delta(A) does not annihilate R."""

    def __init__(self, witness, message: str = "") -> None:
        self.witness = witness
        super().__init__(message or f"ideal generated by delta(A) acts nonzero at {witness}")


class IdealActsNonzero(ValueError):
    """An ideal element acts nonzero, so the action does not factor."""

    def __init__(self, witness, message: str = "") -> None:
        self.witness = witness
        super().__init__(message or f"ideal element acts nonzero at {witness}")


# -- the map itself --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PartialActionMap:
    """h . r = sum_i h_i L_i(r) for h = sum_i h_i e_i."""

    hopf: object
    target: FinAlgebra
    matrices: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        mats = linalg.normalize(np.asarray(self.matrices))
        m = self.target.dim
        if mats.shape != (self.hopf.dim, m, m):
            raise DimensionMismatch(f"expected matrices of shape {(self.hopf.dim, m, m)}, got {mats.shape}")
        object.__setattr__(self, "matrices", mats)

    @property
    def dim_host(self) -> int:
        return self.hopf.dim

    def matrix_of(self, h) -> np.ndarray:
        v = linalg.exact_array(host_vector(self.hopf, h))
        return linalg.normalize(linalg.einsum("i,iab->ab", v, self.matrices))

    def one_image(self, h) -> list[FieldElement]:
        return linalg.tolist(linalg.matmul(self.matrix_of(h), linalg.exact_array(list(self.target.unit))))

    def restrict(self, indices: Sequence[int], host) -> "PartialActionMap":
        return PartialActionMap(host, self.target, self.matrices[list(indices)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartialActionMap):
            return NotImplemented
        return (
            self.hopf.basis_labels == other.hopf.basis_labels
            and self.target.basis_labels == other.target.basis_labels
            and linalg.equal(self.matrices, other.matrices)
        )

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        lines = []
        for i, lab in enumerate(self.hopf.basis_labels):
            lines.append(f"[{lab}]")
            for row in self.matrices[i]:
                lines.append("  " + " ".join(render_scalar(simplify(v)) for v in row))
        return "\n".join(lines)


def host_vector(H, h) -> list[FieldElement]:
    """Coefficients of h in H, from an index, a label, an AlgElement or a vector."""
    if isinstance(h, AlgElement):
        if h.parent is not H and getattr(h.parent, "basis_labels", None) != H.basis_labels:
            raise DimensionMismatch("element does not belong to this host")
        return list(h.coeffs)
    if isinstance(h, (int, np.integer)):
        v: list[FieldElement] = [0] * H.dim
        v[int(h)] = 1
        return v
    if isinstance(h, str):
        return host_vector(H, H.index(h))
    v = [simplify(c) for c in h]
    if len(v) != H.dim:
        raise DimensionMismatch(f"vector of length {len(v)} for a host of dimension {H.dim}")
    return v


def act(pa: PartialActionMap, h, r) -> AlgElement:
    """h . r as an element of the target."""
    if isinstance(h, AlgElement) and len(h.coeffs) != pa.hopf.dim:
        raise DimensionMismatch("h does not belong to the host")
    if isinstance(r, AlgElement) and (r.parent is not pa.target and len(r.coeffs) != pa.target.dim):
        raise DimensionMismatch("r does not belong to the target")
    rv = host_vector(pa.target, r)
    out = linalg.matmul(pa.matrix_of(h), linalg.exact_array(rv))
    return pa.target.element(linalg.tolist(out))


def action_from_function(H, R: FinAlgebra, fn) -> PartialActionMap:
    """Build the matrices from fn(i) -> matrix of e_i acting."""
    return PartialActionMap(H, R, linalg.exact_array([np.asarray(fn(i)) for i in range(H.dim)]))


# -- tensors shared by the checks ------------------------------------------------


def _lmul(R: FinAlgebra, V: np.ndarray) -> np.ndarray:
    """Left multiplication matrices of a stack of vectors: [..., c] -> [..., a, b]."""
    return linalg.einsum("...c,cba->...ab", V, R.mult)


def _rmul(R: FinAlgebra, V: np.ndarray) -> np.ndarray:
    return linalg.einsum("...c,bca->...ab", V, R.mult)


class _HostData:
    """Coproduct tensor, product tensor and window masks of a host, cached."""

    def __init__(self, H) -> None:
        n = H.dim
        self.D = H.coproduct_tensor()
        self.C = H.mult
        W = getattr(H, "window", None)
        self.W = np.ones((n, n), dtype=bool) if W is None else np.asarray(W, dtype=bool)
        nz = np.vectorize(bool, otypes=[bool])(self.D) if self.D.size else np.zeros(self.D.shape, bool)
        self.left_supp = nz.any(axis=2)
        self.right_supp = nz.any(axis=1)
        outside = (~self.W).astype(np.int64)
        # (h, k) is checkable when h_2 k (resp. h_1 k) stays in the window
        self.valid_right = (self.right_supp.astype(np.int64) @ outside) == 0
        self.valid_left = (self.left_supp.astype(np.int64) @ outside) == 0
        self.unit_index = _unit_index(H)


def _unit_index(H) -> int | None:
    s = _sparse(list(H.unit))
    if len(s) == 1 and list(s.values())[0] == 1:
        return next(iter(s))
    return None


def _host_data(H) -> _HostData:
    cached = getattr(H, "_pa_host_data", None)
    if cached is None:
        cached = _HostData(H)
        try:
            H._pa_host_data = cached
        except AttributeError:
            pass
    return cached


# -- axioms ------------------------------------------------------------------------


@dataclass
class AxiomResult:
    name: str
    holds: bool
    checked: int
    out_of_window: int = 0
    witness: tuple | None = None
    lhs: list | None = None
    rhs: list | None = None

    def describe(self, H=None, R=None) -> str:
        status = "pass" if self.holds else "FAIL"
        line = f"{self.name}: {status} (checked {self.checked}, out-of-window {self.out_of_window})"
        if self.witness is not None:
            line += f"; witness {self.witness} lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"
        return line


def _fmt(v) -> str:
    if v is None:
        return "-"
    return "[" + ", ".join(render_scalar(simplify(x)) for x in v) + "]"


@dataclass
class AxiomReport:
    pa1: AxiomResult
    pa2: AxiomResult
    pa3: AxiomResult
    pa2prime: AxiomResult | None
    pas: AxiomResult | None
    symmetric: bool

    @property
    def results(self) -> list[AxiomResult]:
        return [r for r in (self.pa1, self.pa2, self.pa3, self.pa2prime, self.pas) if r is not None]

    @property
    def ok(self) -> bool:
        core = self.pa1.holds and self.pa2.holds and self.pa3.holds
        if self.symmetric:
            core = core and self.pas is not None and self.pas.holds
        return core

    @property
    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.holds]

    @property
    def witness(self) -> tuple | None:
        for r in self.results:
            if not r.holds:
                return (r.name,) + tuple(r.witness or ())
        return None

    def __bool__(self) -> bool:
        return self.ok

    def render(self) -> str:
        return "\n".join(r.describe() for r in self.results)


def _first(mask: np.ndarray) -> tuple | None:
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def _result(name: str, lhs: np.ndarray, rhs: np.ndarray, axes: int, valid: np.ndarray | None) -> AxiomResult:
    bad = linalg.mismatch_mask(lhs, rhs, axes)
    if valid is None:
        valid = np.ones(bad.shape, dtype=bool)
    bad = bad & valid
    checked = int(valid.sum())
    skipped = int(valid.size - checked)
    w = _first(bad)
    if w is None:
        return AxiomResult(name, True, checked, skipped)
    return AxiomResult(name, False, checked, skipped, w, linalg.tolist(lhs[w]), linalg.tolist(rhs[w]))


def verify_axioms(pa: PartialActionMap, symmetric: bool = False, prime: bool = True) -> AxiomReport:
    """Exhaustive check of the partial-action axioms on basis tuples.

    Witness layouts: pa1 (r,), pa2 (h, r, s), pa3/pas (h, k, r), pa2prime
    (h, k, r, s).  ``lhs``/``rhs`` are the two unequal vectors in R.
    """
    H, R = pa.hopf, pa.target
    hd = _host_data(H)
    L = pa.matrices
    m = R.dim
    CR = R.mult
    u1 = linalg.exact_array(list(R.unit))
    n = H.dim

    # PA.1
    if hd.unit_index is not None:
        Lone = L[hd.unit_index]
    else:
        Lone = linalg.einsum("i,iab->ab", linalg.exact_array(list(H.unit)), L)
    pa1 = _result("PA.1", Lone.T, linalg.exact_array(linalg.identity(m)), 1, None)

    # PA.2: h.(rs) = (h1.r)(h2.s)
    lhs2 = linalg.einsum("rst,hat->hrsa", CR, L)
    pair = linalg.einsum("pbr,qcs,bca->pqrsa", L, L, CR)
    rhs2 = linalg.einsum("hpq,pqrsa->hrsa", hd.D, pair)
    pa2 = _result("PA.2", lhs2, rhs2, 3, None)

    # PA.3: h.(k.r) = (h1.1)(h2 k.r)
    P = linalg.einsum("qkt,tab->qkab", hd.C, L)  # (qk).r, zero outside the window
    U = linalg.einsum("hab,b->ha", L, u1)  # h.1
    Mu = _lmul(R, U)
    lhs3 = linalg.einsum("hab,kbc->hkca", L, L)
    MD = linalg.einsum("hpq,pab->hqab", hd.D, Mu)
    rhs3 = linalg.einsum("hqab,qkbc->hkca", MD, P)
    valid3 = np.broadcast_to(hd.valid_right[:, :, None], (n, n, m))
    pa3 = _result("PA.3", lhs3, rhs3, 3, valid3)

    pas = None
    if symmetric:
        Ru = _rmul(R, U)
        MD2 = linalg.einsum("hpq,qab->hpab", hd.D, Ru)
        rhss = linalg.einsum("hpab,pkbc->hkca", MD2, P)
        valids = np.broadcast_to(hd.valid_left[:, :, None], (n, n, m))
        pas = _result("PA.S", lhs3, rhss, 3, valids)

    pa2p = None
    if prime:
        # PA.2': h.(r (k.s)) = (h1.r)(h2 k.s)
        X = linalg.einsum("rbt,kbs->rkts", CR, L)
        lhsp = linalg.einsum("hat,rkts->hkrsa", L, X)
        Z = linalg.einsum("hpq,pbr->hqbr", hd.D, L)
        Q = linalg.einsum("qkcs,bca->qkbsa", P, CR)
        rhsp = linalg.einsum("hqbr,qkbsa->hkrsa", Z, Q)
        validp = np.broadcast_to(hd.valid_right[:, :, None, None], (n, n, m, m))
        pa2p = _result("PA.2'", lhsp, rhsp, 4, validp)

    return AxiomReport(pa1, pa2, pa3, pa2p, pas, symmetric)


# -- idempotent and skew-primitive identities ------------------------------------


@dataclass
class Check:
    name: str
    holds: bool | None  # None: hypotheses of the item do not hold
    witness: tuple | None = None
    lhs: list | None = None
    rhs: list | None = None
    note: str = ""

    def describe(self) -> str:
        status = {True: "pass", False: "FAIL", None: "n/a"}[self.holds]
        line = f"{self.name}: {status}"
        if self.note:
            line += f" ({self.note})"
        if self.witness is not None:
            line += f"; witness {self.witness} lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"
        return line


@dataclass
class CheckReport:
    title: str
    checks: list[Check]
    hypotheses: dict[str, bool] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.holds is not False for c in self.checks)

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def __bool__(self) -> bool:
        return self.ok

    def render(self) -> str:
        lines = [self.title]
        for k, v in self.hypotheses.items():
            lines.append(f"  hypothesis {k}: {v}")
        lines.extend("  " + c.describe() for c in self.checks)
        return "\n".join(lines)


def _compare(name: str, lhs: np.ndarray, rhs: np.ndarray, axes: int, valid=None) -> Check:
    r = _result(name, lhs, rhs, axes, valid)
    return Check(name, r.holds, r.witness, r.lhs, r.rhs)


def _mat(pa: PartialActionMap, h) -> np.ndarray:
    return pa.matrix_of(h)


def _is_zero_vec(v) -> bool:
    return all(not simplify(c) for c in v)


def check_lemma_21(pa: PartialActionMap, g, symmetric: bool = False) -> bool:
    """(g.1) r (g.1) == (g.1) r for all basis r, and g.1 central when symmetric."""
    R = pa.target
    e = linalg.exact_array(pa.one_image(g))
    Le, Re = R.left_matrix(e), R.right_matrix(e)
    ok = linalg.equal(linalg.matmul(Le, Re), Le)
    if symmetric:
        ok = ok and linalg.equal(Le, Re)
    return ok


def check_globalization_lemma(pa: PartialActionMap, g, x) -> bool:
    """With g.1 = 1: g and x act globally and x.1 = 0."""
    H, R = pa.hopf, pa.target
    if pa.one_image(g) != linalg.tolist(R.unit):
        raise PreconditionFailed("g.1_R is not 1_R")
    gv, xv = host_vector(H, g), host_vector(H, x)
    if not _is_zero_vec(pa.one_image(x)):
        return False
    Lg, Lx = _mat(pa, g), _mat(pa, x)
    for i in range(H.dim):
        e = host_vector(H, i)
        for left, Lleft in ((gv, Lg), (xv, Lx)):
            try:
                prod = H.multiply(left, e)
            except CapExceeded:
                continue
            if not linalg.equal(linalg.matmul(Lleft, pa.matrices[i]), _mat(pa, prod)):
                return False
    return True


def _require_grouplike(H, g) -> list[FieldElement]:
    gv = host_vector(H, g)
    cop = H.coproduct_of(gv) if hasattr(H, "coproduct_of") else _coproduct(H, gv)
    s = _sparse(gv)
    want: dict = {}
    for i, a in s.items():
        for j, b in s.items():
            want[(i, j)] = simplify(a * b)
    if {k: v for k, v in cop.items() if v} != {k: v for k, v in want.items() if v}:
        raise PreconditionFailed("g is not grouplike")
    return gv


def _coproduct(H, v) -> dict:
    out: dict = {}
    for i, a in _sparse(v).items():
        for c, j, k in H.coproduct_terms(i):
            key = (j, k)
            out[key] = simplify(out.get(key, 0) + a * c)
    return out


def _require_skew(H, x, gv) -> list[FieldElement]:
    xv = host_vector(H, x)
    cop = _coproduct(H, xv)
    one = _sparse(list(H.unit))
    want: dict = {}
    for i, a in _sparse(xv).items():
        for j, b in one.items():
            want[(i, j)] = simplify(want.get((i, j), 0) + a * b)
    for i, a in _sparse(gv).items():
        for j, b in _sparse(xv).items():
            want[(i, j)] = simplify(want.get((i, j), 0) + a * b)
    if {k: v for k, v in cop.items() if v} != {k: v for k, v in want.items() if v}:
        raise PreconditionFailed("x is not (1, g)-primitive")
    return xv


def _inverse_grouplike(H, gv) -> list[FieldElement]:
    out: dict = {}
    for i, a in _sparse(gv).items():
        for k, c in enumerate(H.antipode_of(i)):
            if c:
                out[k] = simplify(out.get(k, 0) + a * c)
    return [out.get(k, 0) for k in range(H.dim)]


def _lin(*pairs) -> list[FieldElement]:
    n = len(pairs[0][1])
    return [simplify(sum(c * v[i] for c, v in pairs)) for i in range(n)]


def check_lemma_23(pa: PartialActionMap, g, x, q: FieldElement) -> CheckReport:
    """x.r = (x.1) r and g^{-1}x.r = -q r (x.1); (x.1)^2 central when g^2 = 1,
    q = -1 and x^2 = 0."""
    H, R = pa.hopf, pa.target
    gv = _require_grouplike(H, g)
    xv = _require_skew(H, x, gv)
    if not _is_zero_vec(pa.one_image(gv)):
        raise PreconditionFailed("g.1_R is not 0")
    if _lin((1, H.multiply(xv, gv)), (-q, H.multiply(gv, xv))) != [0] * H.dim:
        raise PreconditionFailed("xg != q gx")
    w = linalg.exact_array(pa.one_image(xv))
    gi = _inverse_grouplike(H, gv)
    checks = [
        _compare("x.r = (x.1)r", _mat(pa, xv).T, R.left_matrix(w).T, 1),
        _compare(
            "g^-1 x.r = -q r(x.1)",
            _mat(pa, H.multiply(gi, xv)).T,
            linalg.scale(-q, R.right_matrix(w)).T,
            1,
        ),
    ]
    try:
        hyp2 = (
            _lin((1, H.multiply(gv, gv)), (-1, list(H.unit))) == [0] * H.dim
            and simplify(q + 1) == 0
            and _is_zero_vec(H.multiply(xv, xv))
        )
    except CapExceeded:
        hyp2 = False
    w2 = R.multiply(list(w), list(w))
    if hyp2:
        ok = R.is_central(w2)
        checks.append(Check("(x.1)^2 central", ok, None if ok else (0,), w2, None))
    else:
        checks.append(Check("(x.1)^2 central", None, note="requires g^2 = 1, q = -1, x^2 = 0"))
    return CheckReport("skew-primitive action formulas", checks, {"g.1 = 0": True, "xg = q gx": True})


def check_lemma_24(pa: PartialActionMap, g, x, y) -> CheckReport:
    """Vanishing of products of two anticommuting skew-primitives."""
    H, R = pa.hopf, pa.target
    gv = _require_grouplike(H, g)
    xv = _require_skew(H, x, gv)
    yv = _require_skew(H, y, gv)
    one = list(H.unit)
    if _lin((1, H.multiply(gv, gv)), (-1, one)) != [0] * H.dim:
        raise PreconditionFailed("g^2 != 1")
    for v in (xv, yv):
        if _lin((1, H.multiply(v, gv)), (1, H.multiply(gv, v))) != [0] * H.dim:
            raise PreconditionFailed("skew-primitive does not anticommute with g")
    wx, wy = pa.one_image(xv), pa.one_image(yv)
    g0 = _is_zero_vec(pa.one_image(gv))
    central = R.is_central(wx) and R.is_central(wy)
    checks: list[Check] = []
    xy = H.multiply(xv, yv)
    gxy = H.multiply(gv, xy)
    zero = linalg.zeros((R.dim, R.dim))
    if g0 and central:
        checks.append(_compare("xy.r = 0", _mat(pa, xy).T, zero, 1))
        checks.append(_compare("gxy.r = 0", _mat(pa, gxy).T, zero, 1))
    else:
        checks.append(Check("xy.r = gxy.r = 0", None, note="requires g.1 = 0 and x.1, y.1 central"))
    # item (ii): whenever h.r = gh.r = 0 then xh.r = gxh.r = 0
    bad = None
    for i in range(H.dim):
        e = host_vector(H, i)
        try:
            gh = H.multiply(gv, e)
            xh = H.multiply(xv, e)
            gxh = H.multiply(gv, xh)
        except CapExceeded:
            continue
        Lh, Lgh, Lxh, Lgxh = pa.matrices[i], _mat(pa, gh), _mat(pa, xh), _mat(pa, gxh)
        for r in range(R.dim):
            if _is_zero_vec(Lh[:, r]) and _is_zero_vec(Lgh[:, r]):
                if not (_is_zero_vec(Lxh[:, r]) and _is_zero_vec(Lgxh[:, r])):
                    bad = (i, r, linalg.tolist(Lxh[:, r]), linalg.tolist(Lgxh[:, r]))
                    break
        if bad:
            break
    if bad:
        checks.append(Check("h.r = gh.r = 0 implies xh.r = gxh.r = 0", False, bad[:2], bad[2], bad[3]))
    else:
        checks.append(Check("h.r = gh.r = 0 implies xh.r = gxh.r = 0", True))
    return CheckReport("vanishing of skew-primitive products", checks, {"g.1 = 0": g0, "x.1, y.1 central": central})


# -- extensions to Ore hosts ------------------------------------------------------------


def _check_base(pa_A: PartialActionMap, datum: HopfOreDatum) -> None:
    if pa_A.hopf.dim != datum.base.dim or pa_A.hopf.basis_labels != datum.base.basis_labels:
        raise DimensionMismatch("base action is not on the datum's base algebra")


def extend_trivial(pa_A: PartialActionMap, datum: HopfOreDatum, cap: int | None = None, host=None) -> PartialActionMap:
    """x^j a acts as delta_{j0} (a . r), valid when delta(A) generates an ideal
    that annihilates R."""
    _check_base(pa_A, datum)
    A = datum.base
    gens = [linalg.tolist(datum.delta[:, i]) for i in range(A.dim)]
    gens = [v for v in gens if not _is_zero_vec(v)]
    if gens:
        J = ideal_span(A, gens)
        for v in J.basis:
            M = _mat(pa_A, v)
            for r in range(pa_A.target.dim):
                if not _is_zero_vec(M[:, r]):
                    raise JActsNonzero((tuple(v), r))
    t = host if host is not None else TruncatedOre(datum, datum.default_cap() if cap is None else cap)
    m = pa_A.target.dim
    mats = linalg.zeros((t.dim, m, m))
    mats[: A.dim] = pa_A.matrices
    return PartialActionMap(t, pa_A.target, mats, {"kind": "trivial"})


def _w_powers(R: FinAlgebra, w: Sequence[FieldElement], top: int) -> np.ndarray:
    out = [list(R.unit)]
    for _ in range(top):
        out.append(R.multiply(out[-1], w))
    return linalg.exact_array(out)


def _g_stack(datum: HopfOreDatum, top: int) -> np.ndarray:
    """[k, b, t]: coefficients of g^k e_b for 0 <= k <= top."""
    A = datum.base
    out = []
    for k in range(top + 1):
        gk = datum.g_power(k)
        out.append([A.multiply(gk, [int(i == b) for i in range(A.dim)]) for b in range(A.dim)])
    return linalg.exact_array(out)


def formula_matrices(pa_A: PartialActionMap, datum: HopfOreDatum, w, top: int) -> np.ndarray:
    """[j, i] -> matrix of x^j e_i . r = sum_k c_jk w^{j-k} (g^k e_i . r) w^k."""
    R = pa_A.target
    wv = host_vector(R, w)
    Wp = _w_powers(R, wv, top)
    LW, RW = _lmul(R, Wp), _rmul(R, Wp)
    G = _g_stack(datum, top)
    LG = linalg.einsum("kbt,tac->kbac", G, pa_A.matrices)
    out = []
    for j in range(top + 1):
        acc = linalg.zeros((datum.base.dim, R.dim, R.dim))
        for k in range(j + 1):
            c = ext_coefficient(j, k, datum.q)
            if not c:
                continue
            sand = linalg.matmul(LW[j - k], RW[k])
            acc = linalg.add(acc, linalg.scale(c, linalg.einsum("ab,ibc->iac", sand, LG[k])))
        out.append(linalg.normalize(acc))
    return linalg.exact_array(out) if out else linalg.zeros((0, datum.base.dim, R.dim, R.dim))


def _require_formula_hyp(pa_A: PartialActionMap, datum: HopfOreDatum) -> None:
    _check_base(pa_A, datum)
    if datum.has_delta:
        raise PreconditionFailed("delta != 0")
    if not _is_zero_vec(pa_A.one_image(datum.g_index)):
        raise PreconditionFailed("g.1_R != 0")


def extend_formula(pa_A: PartialActionMap, datum: HopfOreDatum, w, cap: int | None = None, host=None) -> PartialActionMap:
    """The extension of pa_A to the truncated Ore host with x . 1_R = w."""
    _require_formula_hyp(pa_A, datum)
    t = host if host is not None else TruncatedOre(datum, datum.default_cap() if cap is None else cap)
    F = formula_matrices(pa_A, datum, w, t.cap)
    m = pa_A.target.dim
    mats = F.reshape(t.dim, m, m)
    return PartialActionMap(t, pa_A.target, mats, {"kind": "formula", "w": tuple(host_vector(pa_A.target, w))})


def extend_by_operator(pa_A: PartialActionMap, datum: HopfOreDatum, D, cap: int | None = None, host=None) -> PartialActionMap:
    """x^j a . r = D^j (a . r); a global action when pa_A is one and D is a
    compatible twisted derivation.  Validity is left to verify_axioms."""
    _check_base(pa_A, datum)
    t = host if host is not None else TruncatedOre(datum, datum.default_cap() if cap is None else cap)
    m = pa_A.target.dim
    Dm = linalg.exact_array(D)
    power = linalg.exact_array(linalg.identity(m))
    mats = []
    for _ in range(t.cap + 1):
        mats.append(linalg.einsum("ab,ibc->iac", power, pa_A.matrices))
        power = linalg.normalize(linalg.matmul(Dm, power))
    return PartialActionMap(t, pa_A.target, linalg.exact_array(mats).reshape(t.dim, m, m), {"kind": "operator"})


def degree_zero(pa: PartialActionMap) -> PartialActionMap:
    """Restriction of an action on a truncated host to the base algebra."""
    t = pa.hopf
    return PartialActionMap(t.datum.base, pa.target, pa.matrices[: t.dim_base])


def x_one(pa: PartialActionMap) -> list[FieldElement]:
    t = pa.hopf
    return pa.one_image(t.dim_base + _unit_index(t.datum.base))


@dataclass
class CodVoltaReport:
    degree_bound: int
    summation: bool
    pointwise: bool
    symmetric_summation: bool
    symmetric_pointwise: bool
    symmetric: bool
    summation_witness: tuple | None = None
    pointwise_witness: tuple | None = None
    symmetric_witness: tuple | None = None

    @property
    def status(self) -> str:
        s, p = self._pair()
        if s and p:
            return "both hold"
        if s:
            return "summation holds, pointwise fails"
        return "both fail" if not p else "pointwise holds, summation fails"

    def _pair(self) -> tuple[bool, bool]:
        if self.symmetric:
            return self.summation and self.symmetric_summation, self.pointwise and self.symmetric_pointwise
        return self.summation, self.pointwise

    @property
    def ok(self) -> bool:
        return self._pair()[0]

    def render(self) -> str:
        lines = [
            f"degree bound: {self.degree_bound}",
            f"summation condition: {'pass' if self.summation else 'FAIL'}"
            + (f" witness (j, a, b, r) = {self.summation_witness}" if self.summation_witness else ""),
            f"pointwise condition: {'pass' if self.pointwise else 'FAIL'}"
            + (f" witness (j, k, a, b, r) = {self.pointwise_witness}" if self.pointwise_witness else ""),
        ]
        if self.symmetric:
            lines.append(
                f"symmetric summation condition: {'pass' if self.symmetric_summation else 'FAIL'}"
                + (f" witness (j, a, b, r) = {self.symmetric_witness}" if self.symmetric_witness else "")
            )
            lines.append(f"symmetric pointwise condition: {'pass' if self.symmetric_pointwise else 'FAIL'}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


def check_cod_volta(
    pa_A: PartialActionMap,
    datum: HopfOreDatum,
    w,
    symmetric: bool = False,
    degree_bound: int | None = None,
) -> CodVoltaReport:
    """Summation and pointwise conditions for the extension with x . 1 = w.

    For 1 <= j <= bound and 0 <= k <= j, with matrices acting on r:
      P_k[a, b]  = sum (a1 . w^{j-k}) (a2 g^k b . r) (a3 . w^k)
      Q_k[a, b]  = sum (a1 . 1) w^{j-k} (g^k s^{-j}(a2) b . r) w^k
      Qs_k[a, b] = sum w^{j-k} (g^k s^{-j}(a1) b . r) w^k (a2 . 1)
    summation: sum_k c_jk (P_k - Q_k) = 0; pointwise: P_k = Q_k for every k.
    """
    _require_formula_hyp(pa_A, datum)
    A, R = datum.base, pa_A.target
    if degree_bound is None:
        d = datum.order()
        degree_bound = 2 * d if d else datum.default_cap()
    top = degree_bound
    L = pa_A.matrices
    D = A.coproduct_tensor()
    D2 = linalg.einsum("apz,pxy->axyz", D, D)
    CA = A.mult
    u1 = linalg.exact_array(list(R.unit))
    U = linalg.einsum("hab,b->ha", L, u1)
    MU, RU = _lmul(R, U), _rmul(R, U)
    Wp = _w_powers(R, host_vector(R, w), top)
    LWp, RWp = _lmul(R, Wp), _rmul(R, Wp)
    AW = linalg.einsum("xbc,pc->xpb", L, Wp)  # a . w^p
    LAW, RAW = _lmul(R, AW), _rmul(R, AW)  # [a, p, ., .]
    G = _g_stack(datum, top)  # g^k b
    Gk = linalg.exact_array([datum.g_power(k) for k in range(top + 1)])
    # a2 g^k b . r
    E = linalg.einsum("yst,kbs->kybt", CA, G)
    M2 = linalg.einsum("kybt,tac->kybac", E, L)
    MD = linalg.einsum("axy,xpq->aypq", D, MU)
    RD = linalg.einsum("axy,ypq->axpq", D, RU)
    shape = (A.dim, A.dim, R.dim, R.dim)
    sum_bad = pt_bad = sym_bad = None
    sym_pt_ok = True
    for j in range(1, top + 1):
        S = sigma_power_matrix(datum, -j)
        X = linalg.einsum("sy,sbv->ybv", S, CA)  # s^{-j}(e_y) e_b
        Y = linalg.einsum("ku,uvt,ybv->kybt", Gk, CA, X)
        Lsig = linalg.einsum("kybt,tac->kybac", Y, L)
        acc = linalg.zeros(shape)
        acc_s = linalg.zeros(shape)
        for k in range(j + 1):
            A1 = linalg.einsum("axyz,xpq->ayzpq", D2, LAW[:, j - k])
            B1 = linalg.einsum("ayzpq,zqr->aypr", A1, RAW[:, k])
            P = linalg.einsum("aypr,ybrs->abps", B1, M2[k])
            mid = linalg.matmul(LWp[j - k], RWp[k])
            Q = linalg.einsum("aypq,qr,ybrs->abps", MD, mid, Lsig[k])
            c = ext_coefficient(j, k, datum.q)
            diff = linalg.add(P, linalg.scale(-1, Q))
            acc = linalg.add(acc, linalg.scale(c, diff))
            if pt_bad is None:
                w_ = _first(linalg.mismatch_mask(P.transpose(0, 1, 3, 2), Q.transpose(0, 1, 3, 2), 3))
                if w_ is not None:
                    pt_bad = (j, k) + w_
            if symmetric:
                Qs = linalg.einsum("axpq,qr,xbrs->abps", RD, mid, Lsig[k])
                acc_s = linalg.add(acc_s, linalg.scale(c, linalg.add(P, linalg.scale(-1, Qs))))
                if sym_pt_ok and not linalg.equal(P, Qs):
                    sym_pt_ok = False
        if sum_bad is None:
            w_ = _first(linalg.mismatch_mask(acc.transpose(0, 1, 3, 2), linalg.zeros(shape), 3))
            if w_ is not None:
                sum_bad = (j,) + w_
        if symmetric and sym_bad is None:
            w_ = _first(linalg.mismatch_mask(acc_s.transpose(0, 1, 3, 2), linalg.zeros(shape), 3))
            if w_ is not None:
                sym_bad = (j,) + w_
    return CodVoltaReport(
        top,
        sum_bad is None,
        pt_bad is None,
        sym_bad is None if symmetric else False,
        sym_pt_ok if symmetric else False,
        symmetric,
        sum_bad,
        pt_bad,
        sym_bad,
    )


def check_corollary_34(pa_ext: PartialActionMap, datum: HopfOreDatum) -> CheckReport:
    """a . (x . r) = (a1 . 1)(x . 1)(s^{-1}(a2) . r) for basis a, r."""
    t = pa_ext.hopf
    A, R = datum.base, pa_ext.target
    nA = A.dim
    L = pa_ext.matrices[:nA]
    Lx = pa_ext.matrices[nA + _unit_index(A)]
    lhs = linalg.einsum("aij,jk->aik", L, Lx)
    U = linalg.einsum("hab,b->ha", L, linalg.exact_array(list(R.unit)))
    MU = _lmul(R, U)
    Lw = R.left_matrix(x_one(pa_ext))
    Sinv = sigma_power_matrix(datum, -1)
    Ls = linalg.einsum("ty,tab->yab", Sinv, L)
    D = A.coproduct_tensor()
    rhs = linalg.einsum("axy,xij,jk,ykl->ail", D, MU, Lw, Ls)
    c = _compare("a.(x.r) = (a1.1)(x.1)(s^-1(a2).r)", lhs.transpose(0, 2, 1), rhs.transpose(0, 2, 1), 2)
    return CheckReport("action of the base on x . r", [c], {"host cap >= 1": t.cap >= 1})


# -- characterizations ----------------------------------------------------------------


def _compat(pa_A: PartialActionMap, datum: HopfOreDatum, w, power: int = 1) -> Check:
    """a . w^p = (s^{-p}(a) . 1) w^p for basis a."""
    R = pa_A.target
    wp = R.power(host_vector(R, w), power)
    lhs = linalg.einsum("hab,b->ha", pa_A.matrices, linalg.exact_array(wp))
    S = sigma_power_matrix(datum, -power)
    U = linalg.einsum("hab,b->ha", pa_A.matrices, linalg.exact_array(list(R.unit)))
    Us = linalg.einsum("th,ta->ha", S, U)
    rhs = linalg.einsum("hc,ca->ha", Us, _rw(R, wp))
    return _compare(f"a.w^{power} = (s^-{power}(a).1)w^{power}", lhs, rhs, 1)


def _rw(R: FinAlgebra, v) -> np.ndarray:
    """[c, a]: coefficient a of e_c v."""
    return linalg.einsum("b,cba->ca", linalg.exact_array(list(v)), R.mult)


def _ga_ag(pa_A: PartialActionMap, datum: HopfOreDatum) -> bool:
    A = datum.base
    g = datum.g_vec()
    for i in range(A.dim):
        e = host_vector(A, i)
        if not linalg.equal(_mat(pa_A, A.multiply(g, e)), _mat(pa_A, A.multiply(e, g))):
            return False
    return True


def _characterize(pa: PartialActionMap, datum: HopfOreDatum, symmetric: bool) -> tuple[list[Check], dict, dict]:
    t = pa.hopf
    R = pa.target
    pa_A = degree_zero(pa)
    w = x_one(pa)
    g0 = _is_zero_vec(pa_A.one_image(datum.g_index))
    valid = verify_axioms(pa, symmetric, prime=False).ok
    base_valid = verify_axioms(pa_A, symmetric, prime=False).ok
    compat = _compat(pa_A, datum, w)
    info = {"valid": valid, "base valid": base_valid, "w": w}
    checks = []
    # (a) a valid action satisfies the compatibility
    checks.append(Check("valid implies compatibility", (compat.holds if valid else None), compat.witness, compat.lhs, compat.rhs))
    # (b) compatibility and a valid base action give a valid extension
    if compat.holds and base_valid and g0 and not datum.has_delta:
        ext = extend_formula(pa_A, datum, w, host=t)
        ext_ok = verify_axioms(ext, symmetric, prime=False).ok
        checks.append(Check("compatibility implies valid extension", ext_ok))
        if valid:
            checks.append(
                Check("valid action equals the formula extension", linalg.equal(ext.matrices, pa.matrices))
            )
    else:
        checks.append(Check("compatibility implies valid extension", None, note="compatibility or base validity fails"))
    return checks, {"g.1 = 0": g0}, info


def _lemma_items(pa_A: PartialActionMap, datum: HopfOreDatum, w, top: int, symmetric: bool, group: bool) -> list[Check]:
    """Compatibility of w^j and the two sandwich identities, on j <= top, 0 <= k <= top."""
    A, R = datum.base, pa_A.target
    L = pa_A.matrices
    wv = host_vector(R, w)
    Wp = _w_powers(R, wv, top)
    LWp, RWp = _lmul(R, Wp), _rmul(R, Wp)
    U = linalg.einsum("hab,b->ha", L, linalg.exact_array(list(R.unit)))
    MU, RU = _lmul(R, U), _rmul(R, U)
    AW = linalg.einsum("xbc,pc->xpb", L, Wp)
    LAW, RAW = _lmul(R, AW), _rmul(R, AW)
    G = _g_stack(datum, top)
    Gk = linalg.exact_array([datum.g_power(k) for k in range(top + 1)])
    CA = A.mult
    D = A.coproduct_tensor()
    out: list[Check] = []
    item1 = None
    for j in range(1, top + 1):
        c = _compat(pa_A, datum, wv, j)
        if not c.holds:
            item1 = Check("(i) a.w^j = (s^-j(a).1)w^j", False, (j,) + c.witness, c.lhs, c.rhs)
            break
    out.append(item1 or Check("(i) a.w^j = (s^-j(a).1)w^j", True))
    E = linalg.einsum("yst,kbs->kybt", CA, G)
    M2 = linalg.einsum("kybt,tac->kybac", E, L)
    bad2 = bad3 = None
    for j in range(0, top + 1):
        S = sigma_power_matrix(datum, -j)
        X = linalg.einsum("sy,sbv->ybv", S, CA)
        Y = linalg.einsum("ku,uvt,ybv->kybt", Gk, CA, X)
        Lsig = linalg.einsum("kybt,tac->kybac", Y, L)
        for k in range(0, top + 1):
            if group:
                if k > j:
                    continue
                # (a.w^{j-k})(a g^k b.r)(a.w^k) vs (a.1) w^{j-k} (g^k s^-j(a) b.r) w^k
                lhs = linalg.einsum("apq,aqr,abrs->abps", LAW[:, j - k], RAW[:, k], M2[k])
                mid = linalg.matmul(LWp[j - k], RWp[k])
                rhs = linalg.einsum("apq,qr,abrs->abps", MU, mid, Lsig[k])
                rhs_s = linalg.einsum("apq,qr,abrs->abps", RU, mid, Lsig[k])
            else:
                # (a1.w^j)(a2 g^k b.r) vs (a1.1)(g^k s^-j(a2) b.r) w^j
                lhs = linalg.einsum("axy,xpq,ybqr->abpr", D, LAW[:, j], M2[k])
                rhs = linalg.einsum("axy,xpq,qr,ybrs->abps", D, MU, RWp[j], Lsig[k])
                rhs_s = None
                if symmetric:
                    lhs_s = linalg.einsum("axy,ypq,xbqr->abpr", D, RAW[:, j], M2[k])
                    rhs_s = linalg.einsum("axy,ypq,qr,xbrs->abps", D, RU, LWp[j], Lsig[k])
            if bad2 is None:
                w_ = _first(linalg.mismatch_mask(lhs.transpose(0, 1, 3, 2), rhs.transpose(0, 1, 3, 2), 3))
                if w_ is not None:
                    bad2 = (j, k) + w_
            if symmetric and bad3 is None:
                ls = lhs if group else lhs_s
                w_ = _first(linalg.mismatch_mask(ls.transpose(0, 1, 3, 2), rhs_s.transpose(0, 1, 3, 2), 3))
                if w_ is not None:
                    bad3 = (j, k) + w_
    out.append(Check("(ii) left sandwich identity", bad2 is None, bad2))
    if symmetric:
        out.append(Check("(iii) right sandwich identity", bad3 is None, bad3))
    else:
        out.append(Check("(iii) right sandwich identity", None, note="requires a symmetric base action"))
    return out


def check_central_case(pa: PartialActionMap, datum: HopfOreDatum, symmetric: bool = False, top: int | None = None) -> CheckReport:
    """Characterization of extensions when x . 1 is central, g . 1 = 0 and
    ga . r = ag . r."""
    R = pa.target
    pa_A = degree_zero(pa)
    w = x_one(pa)
    hyps = {
        "x.1 central": R.is_central(w),
        "g.1 = 0": _is_zero_vec(pa_A.one_image(datum.g_index)),
        "ga.r = ag.r": _ga_ag(pa_A, datum),
    }
    if not all(hyps.values()):
        return CheckReport("central case", [Check("characterization", None, note="hypotheses fail")], hyps)
    checks, _, info = _characterize(pa, datum, symmetric)
    if top is None:
        top = pa.hopf.cap
    base_ok = info["base valid"]
    compat = _compat(pa_A, datum, w).holds
    if base_ok and compat:
        checks.extend(_lemma_items(pa_A, datum, w, top, symmetric, group=False))
    else:
        checks.append(Check("lemma items", None, note="require a valid base action and compatibility"))
    return CheckReport("central case", checks, hyps, info)


def _is_group_algebra(A) -> bool:
    for i in range(A.dim):
        if A.coproduct_terms(i) != [(1, i, i)] or simplify(A.counit[i]) != 1:
            return False
    return True


def check_group_case(pa: PartialActionMap, datum: HopfOreDatum, symmetric: bool = False, top: int | None = None) -> CheckReport:
    """Characterization of extensions over a group algebra base with g . 1 = 0."""
    A, R = datum.base, pa.target
    pa_A = degree_zero(pa)
    w = x_one(pa)
    hyps = {"base is a group algebra": _is_group_algebra(A), "g.1 = 0": _is_zero_vec(pa_A.one_image(datum.g_index))}
    if not all(hyps.values()):
        return CheckReport("group case", [Check("characterization", None, note="hypotheses fail")], hyps)
    checks, _, info = _characterize(pa, datum, symmetric)
    if top is None:
        top = pa.hopf.cap
    if info["base valid"] and _compat(pa_A, datum, w).holds:
        checks.extend(_lemma_items(pa_A, datum, w, top, symmetric, group=True))
    else:
        checks.append(Check("lemma items", None, note="require a valid base action and compatibility"))
    return CheckReport("group case", checks, hyps, info)


# -- quotients ----------------------------------------------------------------------------


def ideal_annihilates(pa: PartialActionMap, basis: Sequence[Sequence[FieldElement]]) -> tuple | None:
    """First (ideal basis index, r) with a nonzero action, or None."""
    for i, v in enumerate(basis):
        M = _mat(pa, v)
        for r in range(pa.target.dim):
            if not _is_zero_vec(M[:, r]):
                return (i, r)
    return None


def induce_quotient_action(
    pa: PartialActionMap,
    ideal_generators: Sequence | None = None,
    quotient: Quotient | None = None,
    labels: Sequence[str] | None = None,
) -> PartialActionMap:
    """The action of H/I induced by an action with I . R = 0."""
    H = pa.hopf
    if quotient is None:
        if ideal_generators is None:
            raise ValueError("ideal generators or a quotient are required")
        quotient = quotient_with_projection(H, [host_vector(H, g) for g in ideal_generators], labels)
    if quotient.projection.shape[1] != H.dim:
        raise DimensionMismatch("quotient does not come from this host")
    bad = ideal_annihilates(pa, quotient.ideal.basis)
    if bad is not None:
        v = quotient.ideal.basis[bad[0]]
        raise IdealActsNonzero((tuple(v), bad[1]))
    mats = pa.matrices[list(quotient.section)]
    return PartialActionMap(quotient.hopf, pa.target, mats, {"kind": "quotient"})


def induce_nilpotent(pa: PartialActionMap, d: int) -> PartialActionMap:
    """Induced action of A[x, s]/<x^d> from an action on a truncated host."""
    return induce_quotient_action(pa, quotient=quotient_of_truncated(pa.hopf, d))


def induce_nonnilpotent(pa: PartialActionMap, d: int) -> PartialActionMap:
    """Induced action of A[x, s]/<x^d + g^d - 1>."""
    t = pa.hopf
    return induce_quotient_action(pa, quotient=quotient_of_truncated(t, d, nonnilpotent_extra(t.datum, d)))


def pullback(pa_q: PartialActionMap, quotient: Quotient, host=None) -> PartialActionMap:
    """The action of H given by h . r = pi(h) . r."""
    H = host if host is not None else quotient.host
    P = linalg.exact_array(quotient.projection)
    mats = linalg.einsum("kh,kab->hab", P, pa_q.matrices)
    return PartialActionMap(H, pa_q.target, mats, {"kind": "pullback"})


def transport(pa: PartialActionMap, T: np.ndarray, new_host) -> PartialActionMap:
    """Action of new_host through T, whose column i is the image of its i-th
    basis element in pa.hopf."""
    mats = linalg.einsum("pi,pab->iab", linalg.exact_array(T), pa.matrices)
    return PartialActionMap(new_host, pa.target, mats)


def _lift(t, v: Sequence[FieldElement]) -> list[FieldElement]:
    """A base-algebra vector as a degree-zero element of the truncated host."""
    return list(v) + [0] * (t.dim - len(v))


def _require_order(datum: HopfOreDatum, d: int) -> None:
    if order_of_root(datum.q) != d:
        raise PreconditionFailed(f"q is not a primitive {d}-th root of unity")


def _quotient_check(pa: PartialActionMap, quo: Quotient) -> tuple[bool, tuple | None]:
    bad = ideal_annihilates(pa, quo.ideal.basis)
    return bad is None, bad


def check_factorization_nilp(
    pa_ext: PartialActionMap, datum: HopfOreDatum, d: int, quotient: Quotient | None = None
) -> CheckReport:
    """Which sufficient condition for <x^d> . R = 0 applies, and whether it does."""
    _require_order(datum, d)
    t = pa_ext.hopf
    if t.cap < 2 * d - 1:
        raise PreconditionFailed(f"cap must be at least {2 * d - 1}")
    R = pa_ext.target
    A = datum.base
    m = R.dim
    one = linalg.tolist(R.unit)
    g1 = pa_ext.one_image(datum.g_index)
    gd1 = pa_ext.one_image(_lift(t, datum.g_power(d)))
    xi = t.dim_base + _unit_index(A)
    Lx = pa_ext.matrices[xi]
    w = x_one(pa_ext)
    xpow = linalg.exact_array(linalg.identity(m))
    for _ in range(d):
        xpow = linalg.matmul(Lx, xpow)
    wd = R.power(w, d)
    Lgd = _mat(pa_ext, _lift(t, datum.g_power(d)))
    lhs = linalg.matmul(R.left_matrix(wd), linalg.exact_array(linalg.identity(m)))
    rhs = linalg.matmul(R.right_matrix(wd), Lgd)
    cases = {
        "(i) g.1 = 1 and x is d-nilpotent": g1 == one and linalg.is_zero(xpow),
        "(ii) g.1 = 0 and x.1 = 0": _is_zero_vec(g1) and _is_zero_vec(w),
        "(iii) g.1 = 0, g^d.1 = 1, w^d r = (g^d.r) w^d": _is_zero_vec(g1) and gd1 == one and linalg.equal(lhs, rhs),
    }
    quo = quotient if quotient is not None else quotient_of_truncated(t, d)
    holds, bad = _quotient_check(pa_ext, quo)
    applies = [k for k, v in cases.items() if v]
    checks = [
        Check("<x^d> . R = 0", holds, bad),
        Check("case implies conclusion", (holds if applies else None), note=", ".join(applies) or "no case applies"),
    ]
    return CheckReport("factorization through <x^d>", checks, cases, {"cases": applies, "annihilates": holds})


def check_factorization_nonnilp(
    pa_ext: PartialActionMap, datum: HopfOreDatum, d: int, quotient: Quotient | None = None
) -> CheckReport:
    """Which sufficient condition for <x^d + g^d - 1> . R = 0 applies, and whether it does."""
    _require_order(datum, d)
    t = pa_ext.hopf
    if t.cap < 2 * d - 1:
        raise PreconditionFailed(f"cap must be at least {2 * d - 1}")
    extra = nonnilpotent_extra(datum, d)  # raises on the structural hypotheses
    R = pa_ext.target
    A = datum.base
    m = R.dim
    one = linalg.tolist(R.unit)
    I = linalg.exact_array(linalg.identity(m))
    g1 = pa_ext.one_image(datum.g_index)
    gd = datum.g_power(d)
    gd1 = pa_ext.one_image(_lift(t, gd))
    Lgd = _mat(pa_ext, _lift(t, gd))
    xd = t._vec({d: list(A.unit)})
    Lxd = _mat(pa_ext, xd)
    w = x_one(pa_ext)
    wd1 = _lin((1, R.power(w, d)), (-1, one))
    case1 = g1 == one and linalg.equal(linalg.add(Lxd, Lgd), I)
    case2 = (
        _is_zero_vec(g1)
        and gd1 == one
        and linalg.equal(R.left_matrix(wd1), linalg.matmul(R.right_matrix(wd1), Lgd))
    )
    cases = {
        "(i) g.1 = 1 and (x^d + g^d).r = r": case1,
        "(ii) g.1 = 0, g^d.1 = 1, [w^d - 1] r = (g^d.r)[w^d - 1]": case2,
    }
    quo = quotient if quotient is not None else quotient_of_truncated(t, d, extra)
    holds, bad = _quotient_check(pa_ext, quo)
    applies = [k for k, v in cases.items() if v]
    checks = [
        Check("<x^d + g^d - 1> . R = 0", holds, bad),
        Check("case implies conclusion", (holds if applies else None), note=", ".join(applies) or "no case applies"),
    ]
    return CheckReport("factorization through <x^d + g^d - 1>", checks, cases, {"cases": applies, "annihilates": holds})


def check_truncation_lemma(pa_A: PartialActionMap, w, datum: HopfOreDatum, M: int) -> CheckReport:
    """Regrouping of the formula by multiples of M, the value of x^M on 1, and
    vanishing above degree M - 1 when g^M = 1 and w^M is central."""
    _check_base(pa_A, datum)
    _require_order(datum, M)
    A, R = datum.base, pa_A.target
    top = 2 * M
    F = formula_matrices(pa_A, datum, w, top)
    wv = host_vector(R, w)
    Wp = _w_powers(R, wv, top)
    LWp, RWp = _lmul(R, Wp), _rmul(R, Wp)
    G = _g_stack(datum, top)
    bad = None
    for j in range(top + 1):
        jD, jR = divmod(j, M)
        acc = linalg.zeros((A.dim, R.dim, R.dim))
        for l in range(jD + 1):
            c = (-1) ** l * math.comb(jD, l)
            sand = linalg.matmul(LWp[M * (jD - l)], RWp[M * l])
            inner = linalg.einsum("bt,tac->bac", G[M * l], F[jR])
            acc = linalg.add(acc, linalg.scale(c, linalg.einsum("ab,ibc->iac", sand, inner)))
        w_ = _first(linalg.mismatch_mask(F[j].transpose(0, 2, 1), acc.transpose(0, 2, 1), 2))
        if w_ is not None:
            bad = (j,) + w_
            break
    checks = [Check("(i) regrouped formula", bad is None, bad)]
    one = linalg.exact_array(list(R.unit))
    unit_i = _unit_index(A)
    lhs = linalg.tolist(linalg.matmul(F[M][unit_i], one))
    gM1 = pa_A.one_image(datum.g_power(M))
    rhs = R.multiply(_lin((1, list(R.unit)), (-1, gM1)), list(Wp[M]))
    rhs = [simplify(v) for v in rhs]
    checks.append(Check("(ii) x^M . 1 = (1 - g^M . 1) w^M", lhs == rhs, None if lhs == rhs else (M,), lhs, rhs))
    gM_one = datum.g_power(M) == [simplify(v) for v in A.unit]
    wM_central = R.is_central(list(Wp[M]))
    if gM_one and wM_central:
        bad3 = None
        for j in range(M, top + 1):
            w_ = _first(linalg.mismatch_mask(F[j], linalg.zeros(F[j].shape), 1))
            if w_ is not None:
                bad3 = (j,) + w_
                break
        checks.append(Check("(iii) vanishing for j >= M", bad3 is None, bad3))
    else:
        checks.append(Check("(iii) vanishing for j >= M", None, note="requires g^M = 1 and w^M central"))
    return CheckReport(
        "truncation by multiples of M", checks, {"g^M = 1": gM_one, "w^M central": wM_central}, {"M": M, "top": top}
    )


def formula_agrees(pa: PartialActionMap, datum: HopfOreDatum) -> Check:
    """The action equals the extension formula with w = x . 1 on all of its window."""
    t = pa.hopf
    F = formula_matrices(degree_zero(pa), datum, x_one(pa), t.cap)
    m = pa.target.dim
    got = pa.matrices.reshape(t.cap + 1, t.dim_base, m, m)
    return _compare("formula with w = x.1", got.transpose(0, 1, 3, 2), F.transpose(0, 1, 3, 2), 3)


__all__ = [
    "AxiomReport",
    "AxiomResult",
    "Check",
    "CheckReport",
    "CodVoltaReport",
    "DimensionMismatch",
    "IdealActsNonzero",
    "JActsNonzero",
    "PartialActionMap",
    "PreconditionFailed",
    "act",
    "action_from_function",
    "check_central_case",
    "check_cod_volta",
    "check_corollary_34",
    "check_factorization_nilp",
    "check_factorization_nonnilp",
    "check_globalization_lemma",
    "check_group_case",
    "check_lemma_21",
    "check_lemma_23",
    "check_lemma_24",
    "check_truncation_lemma",
    "degree_zero",
    "extend_by_operator",
    "extend_formula",
    "extend_trivial",
    "formula_agrees",
    "formula_matrices",
    "host_vector",
    "ideal_annihilates",
    "induce_nilpotent",
    "induce_nonnilpotent",
    "induce_quotient_action",
    "pullback",
    "transport",
    "verify_axioms",
    "x_one",
]
