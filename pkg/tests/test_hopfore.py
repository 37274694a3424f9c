from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfact import linalg
from hopfact.families import (
    RankOneDatum,
    check_isomorphism,
    cyclic_group_algebra,
    cyclic_ore_datum,
    nichols,
    nichols_sigma,
    rank_one,
    sweedler,
    sweedler_ore_datum,
)
from hopfact.fixtures import c2_datum, ore_quotient_images_of, sweedler_quotient
from hopfact.hopfore import (
    BadOrder,
    HopfOreDatum,
    OreMonomial,
    PanovViolation,
    TruncatedOre,
    ore_coproduct,
    ore_multiply,
    panov_check,
    quotient_nilpotent,
    quotient_rank_one_nonnilp,
    sigma_inverse_power,
    sigma_power_matrix,
    validate_truncated,
)
from hopfact.algcore import CapExceeded
from hopfact.oracle import verify_derived_example
from hopfact.scalar import fpow, root_of_unity


def e(n: int, i: int) -> list[int]:
    return [int(k == i) for k in range(n)]


@pytest.mark.parametrize("tag", [
    "panov-sweedler-chi", "panov-cyclic-chi", "panov-sweedler-rejects-plus-x", "taft-sigma-inverse-x",
    "ore-product-y-g", "ore-coproduct-x2-minus1", "truncated-sweedler-cap3", "truncated-c2-cap4",
])
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_sweedler_character():
    H = sweedler()
    assert panov_check(H, nichols_sigma(H, [0, 1, 1, 0]), None, 1) == [1, -1, 0, 0]


def test_rejected_sigma_names_the_identity():
    H = sweedler()
    bad = linalg.to_object(nichols_sigma(H, [0, 1, 1, 0]))
    bad[2, 2] = 1
    with pytest.raises(PanovViolation) as info:
        HopfOreDatum.create(H, bad, "g")
    assert info.value.index == 2
    assert info.value.identity == "sigma(a) = chi(a1) a2"


@pytest.mark.parametrize("i", range(5))
def test_sigma_inverse_on_grouplikes(i):
    datum = sweedler_ore_datum()
    g = e(4, 1)
    assert sigma_inverse_power(datum, g, i) == [fpow(-1, i) * c for c in g]


def test_coproduct_of_x():
    datum = c2_datum()
    terms = ore_coproduct(datum, OreMonomial.of(1, e(2, 0)))
    got = {(l.degree, l.coeff, r.degree, r.coeff): c for c, l, r in terms}
    assert got == {(1, (1, 0), 0, (1, 0)): 1, (0, (0, 1), 1, (1, 0)): 1}


def test_product_with_a_twisted_derivation():
    A = cyclic_group_algebra(2)
    sigma = [[1, 0], [0, -1]]
    delta = [[0, 1], [0, -1]]
    datum = HopfOreDatum.create(A, sigma, 1, delta)
    h = e(2, 1)
    xa = ore_multiply(datum, OreMonomial.of(1, e(2, 0)), OreMonomial.of(0, h))
    sa_x = ore_multiply(datum, OreMonomial.of(0, [0, -1]), OreMonomial.of(1, e(2, 0)))
    # x h = sigma(h) x + delta(h), with delta(h) = 1 - h
    total: dict = {}
    for m in sa_x + [OreMonomial.of(0, [1, -1])]:
        total[m.degree] = [a + b for a, b in zip(total.get(m.degree, [0, 0]), m.coeff)]
    assert {m.degree: list(m.coeff) for m in xa} == {k: v for k, v in total.items() if any(v)}


def test_cap_is_enforced():
    t = TruncatedOre(c2_datum(), 2)
    x = t.index("x")
    with pytest.raises(CapExceeded):
        t.multiply(e(t.dim, x), e(t.dim, t.index("x^2")))


@pytest.mark.parametrize("make, cap", [
    (sweedler_ore_datum, 4),
    (lambda: cyclic_ore_datum(2, -1), 4),
    (lambda: cyclic_ore_datum(3, root_of_unity(3)), 4),
    (lambda: cyclic_ore_datum(4, root_of_unity(4)), 3),
])
def test_truncated_hosts_validate(make, cap):
    rep = validate_truncated(TruncatedOre(make(), cap))
    assert rep.ok, rep.violations[:3]


def test_nilpotent_quotient_is_sweedler():
    quo, T = sweedler_quotient(TruncatedOre(c2_datum(), 3))
    assert quo.hopf.dim == 4
    assert check_isomorphism(quo.hopf, sweedler(), T)


def test_nonnilpotent_quotient_is_radford():
    Q = quotient_rank_one_nonnilp(c2_datum(), 2)
    R = rank_one(RankOneDatum.cyclic(2, -1, 1))
    assert linalg.equal(Q.mult, R.mult)


def test_iterated_quotient_is_h8():
    Q = quotient_nilpotent(sweedler_ore_datum(), 2)
    H8 = nichols(3)
    base = [e(8, 0), e(8, 1), e(8, H8.index("x1")), e(8, H8.index("gx1"))]
    T = ore_quotient_images_of(Q, 4, H8, base, e(8, H8.index("x2")))
    assert Q.dim == 8 and check_isomorphism(Q, H8, T)


def test_quotient_needs_the_order():
    with pytest.raises(BadOrder):
        quotient_nilpotent(cyclic_ore_datum(4, root_of_unity(4)), 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_quotient_relations(n):
    q = root_of_unity(n)
    datum = cyclic_ore_datum(n, q)
    Q = quotient_nilpotent(datum, n)
    x = e(Q.dim, n)
    xp = x
    for _ in range(n - 1):
        xp = Q.multiply(xp, x)
    assert not any(xp)
    for k in range(n):
        h = e(Q.dim, k)
        assert Q.multiply(x, h) == [fpow(q, k) * c for c in Q.multiply(h, x)]


@given(st.integers(0, 6), st.integers(0, 3))
def test_sigma_inverse_two_routes(i, b):
    datum = sweedler_ore_datum()
    v = e(4, b)
    direct = sigma_inverse_power(datum, v, i)
    by_matrix = linalg.tolist(linalg.matmul(sigma_power_matrix(datum, -i), linalg.exact_array(v)))
    assert direct == by_matrix


@given(st.integers(0, 2), st.integers(0, 3), st.integers(0, 2), st.integers(0, 3), st.integers(0, 1), st.integers(0, 3))
def test_ore_products_associate(j1, a1, j2, a2, j3, a3):
    datum = sweedler_ore_datum()
    ms = [OreMonomial.of(j, e(4, a)) for j, a in ((j1, a1), (j2, a2), (j3, a3))]

    def mul(us, vs):
        out: dict = {}
        for u in us:
            for v in vs:
                for m in ore_multiply(datum, u, v):
                    out[m.degree] = [p + r for p, r in zip(out.get(m.degree, [0] * 4), m.coeff)]
        return {k: v for k, v in out.items() if any(v)}

    def as_list(d):
        return [OreMonomial.of(k, v) for k, v in sorted(d.items())]

    left = mul(as_list(mul([ms[0]], [ms[1]])), [ms[2]])
    right = mul([ms[0]], as_list(mul([ms[1]], [ms[2]])))
    assert left == right
