"""The ten acceptance criteria as runnable checks with memoized results."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, Iterable

from . import linalg, qcomb
from .algcore import validate_hopf
from .families import (
    RankOneDatum,
    check_isomorphism,
    cyclic_group_algebra,
    cyclic_ore_datum,
    nichols,
    nichols_partial_action,
    nichols_sigma,
    rank_one,
    rank_one_via_ore,
    sweedler,
    sweedler_ore_datum,
    sweedler_partial_action,
    target_algebra,
)
from .fixtures import (
    c2_datum,
    group_base_action,
    k4_cycle,
    m2_inner_e12,
    m2_sign_conjugation,
    nichols3_identification,
    nichols3_on_truncated,
    ore_quotient_images_of,
    sweedler_on_truncated,
    sweedler_quotient,
)
from .hopfore import HopfOreDatum, PanovViolation, TruncatedOre, panov_check, quotient_of_truncated
from .paction import (
    PartialActionMap,
    check_cod_volta,
    check_factorization_nilp,
    check_factorization_nonnilp,
    check_lemma_24,
    check_truncation_lemma,
    extend_by_operator,
    extend_formula,
    extend_trivial,
    formula_agrees,
    induce_nilpotent,
    induce_nonnilpotent,
    induce_quotient_action,
    transport,
    verify_axioms,
)
from .scalar import fpow, root_of_unity


@dataclass
class CriterionResult:
    number: int
    group: str
    title: str
    passed: bool
    seconds: float
    budget: float
    details: list[str] = field(default_factory=list)

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number} [{self.group}] {self.title} ({self.seconds:.1f}s, budget {self.budget:g}s)"


@dataclass(frozen=True)
class Criterion:
    number: int
    group: str
    title: str
    budget: float
    run: Callable[[list[str]], bool]


class _Log(list):
    def fail(self, msg: str) -> bool:
        self.append("FAIL " + msg)
        return False

    def note(self, msg: str) -> None:
        self.append(msg)


# -- 1: q-combinatorics ------------------------------------------------------------------------------


def _primitive_roots(top: int) -> list:
    return [root_of_unity(N, k) for N in range(1, top + 1) for k in range(N) if gcd(k, N) == 1]


def criterion_qcomb(log: _Log) -> bool:
    ok = True
    qs = [root_of_unity(N) for N in range(1, 13)] + [2, Fraction(-3, 2)]
    count = 0
    for q in qs:
        for n in range(21):
            for m in range(n + 1):
                count += 1
                if qcomb.qbinom(n, m, q) != qcomb.evaluate(qcomb.polynomial_gauss(n, m), q):
                    ok = log.fail(f"qbinom({n}, {m}, {q}) disagrees with the polynomial oracle")
    log.note(f"oracle agreement on {count} triples")
    roots = _primitive_roots(8)
    count = 0
    for q in roots:
        for n, m in product(range(13), repeat=2):
            count += 2
            if not qcomb.check_identity_idq(n, m, q):
                ok = log.fail(f"inversion identity at ({n}, {m}, {q})")
            if not qcomb.check_radford(n, m, q):
                ok = log.fail(f"Lucas-type factorization at ({n}, {m}, {q})")
        for i, j, k in product(range(13), repeat=3):
            count += 2
            if not qcomb.check_lemma_22(i, j, k, q):
                ok = log.fail(f"product identity at ({i}, {j}, {k}, {q})")
            if not qcomb.check_lemma_23(i, j, k, q):
                ok = log.fail(f"alternating-sum identity at ({i}, {j}, {k}, {q})")
    log.note(f"{count} identity checks over {len(roots)} primitive roots of order <= 8")
    return ok


# -- 2: Hopf validation --------------------------------------------------------------------------------


def _same_structure(H1, H2) -> bool:
    return (
        H1.basis_labels == H2.basis_labels
        and linalg.equal(H1.mult, H2.mult)
        and linalg.equal(H1.unit, H2.unit)
        and H1.coproduct == H2.coproduct
        and linalg.equal(H1.counit, H2.counit)
        and linalg.equal(H1.antipode, H2.antipode)
    )


def rank_one_parameters(limit: int = 16) -> list[tuple[int, int, int, int]]:
    """(n, d, k, beta) with q = zeta_d^k, d | n and n d <= limit."""
    out = []
    for n in range(2, limit + 1):
        for d in range(2, limit + 1):
            if n * d > limit or n % d:
                continue
            for k in range(1, d):
                if gcd(k, d) == 1:
                    out.extend((n, d, k, beta) for beta in (0, 1))
    return out


def criterion_hopf(log: _Log) -> bool:
    ok = True
    cases = [("sweedler", sweedler())]
    cases += [(f"kC_{n}", cyclic_group_algebra(n)) for n in range(1, 7)]
    cases += [(f"nichols({n})", nichols(n)) for n in range(2, 5)]
    for name, H in cases:
        rep = validate_hopf(H)
        if not rep.ok:
            ok = log.fail(f"{name}: {rep.failed_axioms()} witness {rep.witness}")
    params = rank_one_parameters()
    for n, d, k, beta in params:
        D = RankOneDatum.cyclic(n, root_of_unity(d, k), beta)
        H1, H2 = rank_one(D), rank_one_via_ore(D)
        name = f"{'R' if beta else 'H'}_{{{n},{d}}}(zeta_{d}^{k})"
        rep = validate_hopf(H1)
        if not rep.ok:
            ok = log.fail(f"{name}: {rep.failed_axioms()} witness {rep.witness}")
        if not _same_structure(H1, H2):
            ok = log.fail(f"{name}: the two constructions differ")
    log.note(f"{len(cases)} named Hopf algebras and {len(params)} rank-one algebras, both construction paths")
    return ok


# -- 3: Ore data ------------------------------------------------------------------------------------------


def criterion_panov(log: _Log) -> bool:
    ok = True
    H = sweedler()
    chi = panov_check(H, nichols_sigma(H, [0, 1, 1, 0]), None, 1)
    if chi != [1, -1, 0, 0]:
        ok = log.fail(f"character of the Sweedler datum is {chi}")
    for n in range(2, 7):
        q = root_of_unity(n)
        A = cyclic_group_algebra(n)
        sigma = linalg.zeros((n, n))
        for k in range(n):
            sigma[k, k] = fpow(q, k)
        chi = panov_check(A, sigma, None, 1)
        if chi[1] != q:
            ok = log.fail(f"kC_{n}: chi(g) = {chi[1]}")
        bad = linalg.to_object(sigma)
        bad[2 % n, 1] += 1
        try:
            panov_check(A, bad, None, 1)
            ok = log.fail(f"kC_{n}: mutated sigma accepted")
        except PanovViolation as e:
            if e.index != 1:
                ok = log.fail(f"kC_{n}: witness {e.index}, expected 1")
    mutated = linalg.to_object(nichols_sigma(H, [0, 1, 1, 0]))
    mutated[2, 2] = 1
    try:
        panov_check(H, mutated, None, 1)
        ok = log.fail("Sweedler datum with sigma(x) = x accepted")
    except PanovViolation as e:
        if e.index != 2:
            ok = log.fail(f"Sweedler mutation witness {e.index}, expected 2")
        log.note(f"mutation rejected: {e}")
    return ok


# -- 4: necessity of the formula ----------------------------------------------------------------------


def necessity_fixtures() -> list[tuple[str, PartialActionMap]]:
    out = []
    t = TruncatedOre(c2_datum(), 5)
    for name, omegas in [("k2", [[0, 0], [1, 0], [1, -1]]), ("ut2", [[0, 0, 0], [0, 1, 0], [1, 0, -1]]),
                         ("m2", [[0, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, -1]])]:
        R = target_algebra(name)
        for om in omegas:
            out.append((f"Sweedler on {name}, Omega = {om}", sweedler_on_truncated(R, om, t)))
    k2 = target_algebra("k2")
    for w1, w2 in [([1, -1], [2, 0]), ([0, 0], [1, 1]), ([1, 0], [0, -1])]:
        out.append((f"H_8 on k2, w = {w1}, {w2}", nichols3_on_truncated(k2, w1, w2)))
    c3 = cyclic_ore_datum(3, root_of_unity(3))
    m2 = target_algebra("m2")
    out.append(("kC_3 trivial extension on M_2", extend_trivial(group_base_action(c3.base, m2, [1, 0, 0]), c3, cap=4)))
    return out


def criterion_necessity(log: _Log) -> bool:
    ok = True
    used = 0
    for name, pa in necessity_fixtures():
        t = pa.hopf
        if not verify_axioms(pa).ok:
            log.note(f"skipped (not a partial action): {name}")
            continue
        if any(pa.one_image(t.datum.g_index)):
            log.note(f"skipped (g.1 != 0): {name}")
            continue
        used += 1
        c = formula_agrees(pa, t.datum)
        if not c.holds:
            ok = log.fail(f"{name}: action differs from the formula at {c.witness}")
    log.note(f"{used} verified fixtures agree with the formula up to their cap")
    return ok and used > 0


# -- 5: the Sweedler equivalence grid -----------------------------------------------------------------


@dataclass
class GridSummary:
    points: int = 0
    agree: int = 0
    valid: int = 0
    summation_only: int = 0
    mismatches: list = field(default_factory=list)


def sweedler_grid(targets: Iterable[str] = ("k2", "ut2", "m2"), pool=(0, 1, -1)) -> GridSummary:
    datum = sweedler_ore_datum()
    host = TruncatedOre(datum, datum.default_cap())
    out = GridSummary()
    for name in targets:
        R = target_algebra(name)
        vecs = list(product(pool, repeat=R.dim))
        for om in vecs:
            if not R.is_central(R.multiply(list(om), list(om))):
                continue
            pa = sweedler_partial_action(R, list(om))
            for w in vecs:
                w = list(w)
                verified = verify_axioms(extend_formula(pa, datum, w, host=host), prime=False).ok
                anti = [a + b for a, b in zip(R.multiply(list(om), w), R.multiply(w, list(om)))]
                central = R.is_central(anti)
                cv = check_cod_volta(pa, datum, w)
                out.points += 1
                out.valid += verified
                if verified == central == cv.summation:
                    out.agree += 1
                else:
                    out.mismatches.append((name, om, tuple(w), verified, central, cv.summation))
                out.summation_only += cv.status == "summation holds, pointwise fails"
    return out


def criterion_sweedler(log: _Log) -> bool:
    s = sweedler_grid()
    log.note(f"{s.points} grid points, {s.agree} agree, {s.valid} valid, {s.summation_only} with summation only")
    for m in s.mismatches[:5]:
        log.fail(f"disagreement at {m}")
    if s.summation_only == 0:
        return log.fail("no grid point separates the summation and pointwise conditions")
    return not s.mismatches


# -- 6: truncation ------------------------------------------------------------------------------------


def truncation_fixtures() -> list[tuple[str, PartialActionMap, list, HopfOreDatum, int]]:
    out = []
    c2 = c2_datum()
    for name in ("k2", "ut2", "m2"):
        R = target_algebra(name)
        pa = group_base_action(c2.base, R, [1, 0])
        for w in product((0, 1, -1), repeat=R.dim):
            out.append((f"kC_2 on {name}, w = {list(w)}", pa, list(w), c2, 2))
    sw = sweedler_ore_datum()
    m2 = target_algebra("m2")
    for om in ([0, 1, 0, 0], [0, 0, 0, 0]):
        pa = sweedler_partial_action(m2, om)
        for w in product((0, 1, -1), repeat=4):
            out.append((f"Sweedler on M_2, Omega = {om}, w = {list(w)}", pa, list(w), sw, 2))
    c3 = cyclic_ore_datum(3, root_of_unity(3))
    pa = group_base_action(c3.base, m2, [1, 0, 0])
    for w in ([0, 1, 0, 0], [0, -1, 1, -1], [0, 0, 0, 0]):
        out.append((f"kC_3 on M_2, w = {w}", pa, w, c3, 3))
    return out


def criterion_truncation(log: _Log) -> bool:
    ok = True
    applied = {2: 0, 3: 0}
    for name, pa, w, datum, M in truncation_fixtures():
        rep = check_truncation_lemma(pa, w, datum, M)
        for c in rep.checks:
            if c.holds is False:
                ok = log.fail(f"{name}: {c.name} at {c.witness}")
        if rep.checks[2].holds:
            applied[M] += 1
    log.note(f"vanishing above degree M - 1 applied to {applied[2]} fixtures with M = 2 and {applied[3]} with M = 3")
    if not applied[2] or not applied[3]:
        return log.fail("the vanishing item was never exercised for one of the orders")
    return ok


# -- 7: factorization through the finite quotients ------------------------------------------------------


@dataclass
class FactorizationFixture:
    name: str
    pa: PartialActionMap
    datum: HopfOreDatum
    d: int
    nilpotent: bool
    case: str
    quotient_name: str


def factorization_fixtures() -> list[FactorizationFixture]:
    m2 = target_algebra("m2")
    c2 = c2_datum()
    t2 = TruncatedOre(c2, 3)
    alpha = m2_sign_conjugation()
    glob = extend_by_operator(group_base_action(c2.base, m2, [1, 1], alpha), c2, m2_inner_e12(), host=t2)
    base0 = group_base_action(c2.base, m2, [1, 0])
    flip = [0, 1, 1, 0]
    sw = sweedler_ore_datum()
    t8 = TruncatedOre(sw, 3)
    pa_sw = sweedler_partial_action(m2, [0, 1, 0, 0])
    c4 = cyclic_ore_datum(4, -1)
    t4 = TruncatedOre(c4, 3)
    k4, al4, D4 = k4_cycle()
    glob4 = extend_by_operator(group_base_action(c4.base, k4, [1, 1, 1, 1], al4), c4, D4, host=t4)
    k2 = target_algebra("k2")
    base4 = group_base_action(c4.base, k2, [1, 0, 1, 0])
    F = FactorizationFixture
    return [
        F("kC_2 global, alpha sign conjugation, D inner by e12", glob, c2, 2, True, "(i)", "H_4 = H_{2,2}(-1)"),
        F("kC_2 with g.1 = 0 and w = 0", extend_formula(base0, c2, [0] * 4, host=t2), c2, 2, True, "(ii)", "H_4"),
        F("kC_2 with g.1 = 0 and w^2 = 1", extend_formula(base0, c2, flip, host=t2), c2, 2, True, "(iii)", "H_4"),
        F("Sweedler with Omega = w = e12", extend_formula(pa_sw, sw, [0, 1, 0, 0], host=t8), sw, 2, True, "(iii)", "H_8"),
        F("Sweedler with Omega = e12, w = 0", extend_formula(pa_sw, sw, [0] * 4, host=t8), sw, 2, True, "(ii)", "H_8"),
        F("kC_2 global as R_{2,2}(-1)", glob, c2, 2, False, "(i)", "R_{2,2}(-1)"),
        F("kC_2 with w^2 = 1 as R_{2,2}(-1)", extend_formula(base0, c2, flip, host=t2), c2, 2, False, "(ii)", "R_{2,2}(-1)"),
        F("kC_4 global on k^4 with D^2 + alpha^2 = id", glob4, c4, 2, False, "(i)", "R_{4,2}(-1)"),
        F("kC_4 with g.1 = 0, g^2.1 = 1 on k^2", extend_formula(base4, c4, [1, 0], host=t4), c4, 2, False, "(ii)", "R_{4,2}(-1)"),
    ]


def _quotient_reference(name: str, quo_hopf) -> bool:
    """The induced host is the named Hopf algebra."""
    if name.startswith("H_4"):
        return check_isomorphism(quo_hopf, sweedler(), sweedler_quotient(TruncatedOre(c2_datum(), 3))[1])
    if name == "H_8":
        H8 = nichols(3)
        e = [[int(k == i) for k in range(8)] for i in range(8)]
        base = [e[0], e[1], e[H8.index("x1")], e[H8.index("gx1")]]
        T = ore_quotient_images_of(quo_hopf, 4, H8, base, e[H8.index("x2")])
        return check_isomorphism(quo_hopf, H8, T)
    if name == "R_{2,2}(-1)":
        return _same_structure(quo_hopf, rank_one(RankOneDatum.cyclic(2, -1, 1)))
    if name == "R_{4,2}(-1)":
        return _same_structure(quo_hopf, rank_one(RankOneDatum.cyclic(4, -1, 1)))
    return False


def criterion_quotient(log: _Log) -> bool:
    ok = True
    seen = set()
    for f in factorization_fixtures():
        if not verify_axioms(f.pa).ok:
            ok = log.fail(f"{f.name}: the fixture is not a partial action")
            continue
        check = check_factorization_nilp if f.nilpotent else check_factorization_nonnilp
        rep = check(f.pa, f.datum, f.d)
        cases = rep.info["cases"]
        if not any(c.startswith(f.case) for c in cases):
            ok = log.fail(f"{f.name}: case {f.case} does not apply ({cases})")
            continue
        if not rep.info["annihilates"]:
            ok = log.fail(f"{f.name}: ideal acts nonzero at {rep.checks[0].witness}")
            continue
        induced = (induce_nilpotent if f.nilpotent else induce_nonnilpotent)(f.pa, f.d)
        if not verify_axioms(induced, symmetric=False).ok:
            ok = log.fail(f"{f.name}: the induced action fails the axioms")
        if not _quotient_reference(f.quotient_name, induced.hopf):
            ok = log.fail(f"{f.name}: the quotient is not {f.quotient_name}")
        seen.add(("nilp" if f.nilpotent else "nonnilp", f.case))
    expected = {("nilp", "(i)"), ("nilp", "(ii)"), ("nilp", "(iii)"), ("nonnilp", "(i)"), ("nonnilp", "(ii)")}
    if seen != expected:
        ok = log.fail(f"cases exercised {sorted(seen)}")
    log.note(f"{len(seen)} cases exercised with induced actions verified on the finite quotients")
    return ok


# -- 8: classification ----------------------------------------------------------------------------------


CLASSIFICATION_FAMILIES = {
    "sweedler": (2, -1, 0),
    "taft(4,2,q2)": (4, -1, 0),
    "radford(2,2,q2)": (2, -1, 1),
}


def criterion_classify(log: _Log) -> bool:
    from .oracle import SearchGrid, classify_rank_one

    ok = True
    for fam, (n, q, beta) in CLASSIFICATION_FAMILIES.items():
        D = RankOneDatum.cyclic(n, q, beta)
        for target in ("k2", "k3", "m2"):
            R = target_algebra(target)
            cert = classify_rank_one(D, R, SearchGrid.create(R, [0, 1, -1]), fam, target)
            counts = ", ".join(f"{len(c.found)}/{c.checked}" for c in cert.cases)
            log.note(f"{fam} on {target}: match={cert.match} found {counts}")
            if not cert.match:
                ok = log.fail(f"{fam} on {target}: certificate does not match")
    return ok


# -- 9: Nichols path equality ---------------------------------------------------------------------------


def nichols_composite(R, w1, w2, tower, T, H8, host=None) -> PartialActionMap:
    """extend_formula on H_4[x2, sigma], induce to the quotient, transport to H_8."""
    datum = tower.data[0]
    H4 = tower.algebras[0]
    base = transport(nichols_partial_action(2, R, [w1]), linalg.identity(H4.dim), H4)
    t = host if host is not None else TruncatedOre(datum, 3)
    ext = extend_formula(base, datum, w2, host=t)
    induced = induce_quotient_action(ext, quotient=quotient_of_truncated(t, 2))
    return transport(induced, T, H8)


def criterion_nichols(log: _Log) -> bool:
    ok = True
    tower, T, H8 = nichols3_identification()
    R = target_algebra("k2")
    t = TruncatedOre(tower.data[0], 3)
    count = 0
    long_monomials = [i for i, lab in enumerate(H8.basis_labels) if lab.count("x") >= 2]
    for w1, w2 in product(product((0, 1, -1), repeat=2), repeat=2):
        direct = nichols_partial_action(3, R, [list(w1), list(w2)])
        comp = nichols_composite(R, list(w1), list(w2), tower, T, H8, host=t)
        count += 1
        if not linalg.equal(direct.matrices, comp.matrices):
            ok = log.fail(f"w = {w1}, {w2}: direct and composite differ")
        if not all(linalg.is_zero(comp.matrices[i]) for i in long_monomials):
            ok = log.fail(f"w = {w1}, {w2}: a monomial of length >= 2 acts nonzero")
        rep = check_lemma_24(comp, "g", "x1", "x2")
        if not rep.ok:
            ok = log.fail(f"w = {w1}, {w2}: {rep.render()}")
        if not verify_axioms(direct, symmetric=True).ok:
            ok = log.fail(f"w = {w1}, {w2}: direct action fails the axioms")
    log.note(f"{count} parameter pairs, monomials of length >= 2: {[H8.basis_labels[i] for i in long_monomials]}")
    return ok


# -- 10: derived examples -------------------------------------------------------------------------------


def criterion_derived(log: _Log) -> bool:
    from .oracle import derived_tags, verify_derived_example

    ok = True
    tags = derived_tags()
    for tag in tags:
        try:
            good = verify_derived_example(tag)
        except Exception as e:  # a crash is a failure of that example
            good = False
            log.note(f"{tag}: {type(e).__name__}: {e}")
        if not good:
            ok = log.fail(f"derived example {tag}")
    log.note(f"{len(tags)} derived examples recomputed")
    return ok


CRITERIA: list[Criterion] = [
    Criterion(1, "qcomb", "q-binomial oracle and identities", 10, criterion_qcomb),
    Criterion(2, "hopf", "Hopf validation of the families", 30, criterion_hopf),
    Criterion(3, "panov", "Ore data accepted and mutations rejected", 1, criterion_panov),
    Criterion(4, "necessity", "verified extensions follow the formula", 10, criterion_necessity),
    Criterion(5, "sweedler", "three-way equivalence on the Sweedler grid", 120, criterion_sweedler),
    Criterion(6, "truncation", "truncation by multiples of the order", 10, criterion_truncation),
    Criterion(7, "quotient", "factorization through the finite quotients", 30, criterion_quotient),
    Criterion(8, "classify", "rank-one classification certificates", 300, criterion_classify),
    Criterion(9, "nichols", "direct and composite H_8 actions agree", 60, criterion_nichols),
    Criterion(10, "derived", "derived examples recomputed", 600, criterion_derived),
]

_MEMO: dict[int, CriterionResult] = {}


def criterion(number: int) -> Criterion:
    for c in CRITERIA:
        if c.number == number:
            return c
    raise KeyError(number)


def select(filter_text: str | None) -> list[Criterion]:
    """Criteria whose group name or number appears in a comma-separated filter."""
    if not filter_text:
        return list(CRITERIA)
    keys = {k.strip() for k in filter_text.split(",") if k.strip()}
    out = [c for c in CRITERIA if c.group in keys or str(c.number) in keys]
    unknown = keys - {c.group for c in CRITERIA} - {str(c.number) for c in CRITERIA}
    if unknown:
        raise ValueError(f"unknown criterion filter {sorted(unknown)}")
    return out


def run_criterion(number: int, fresh: bool = False) -> CriterionResult:
    if not fresh and number in _MEMO:
        return _MEMO[number]
    c = criterion(number)
    log = _Log()
    start = time.perf_counter()
    try:
        passed = bool(c.run(log))
    except Exception as e:  # reported, never swallowed silently
        passed = False
        log.append(f"FAIL {type(e).__name__}: {e}")
    seconds = time.perf_counter() - start
    result = CriterionResult(c.number, c.group, c.title, passed and seconds <= c.budget, seconds, c.budget, list(log))
    if seconds > c.budget:
        result.details.append(f"FAIL over the time budget of {c.budget:g}s")
    if not fresh:
        _MEMO[number] = result
    return result


def run_all(filter_text: str | None = None, fresh: bool = False) -> list[CriterionResult]:
    return [run_criterion(c.number, fresh) for c in select(filter_text)]


def memoized() -> list[CriterionResult]:
    return [_MEMO[k] for k in sorted(_MEMO)]
