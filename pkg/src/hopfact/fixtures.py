"""Named example actions shared by the acceptance runner, the derived-example
registry and the tests."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import linalg
from .algcore import FinAlgebra, FinHopf, Quotient
from .families import (
    check_isomorphism,
    conjugation,
    cyclic_ore_datum,
    diagonal_algebra,
    inner_derivation,
    matrix_algebra,
    nichols,
    nichols_isomorphism,
    nichols_iterative,
    nichols_partial_action,
    sweedler,
    sweedler_partial_action,
)
from .hopfore import HopfOreDatum, TruncatedOre, quotient_of_truncated
from .paction import PartialActionMap, pullback, transport
from .scalar import FieldElement


def group_base_action(
    A: FinHopf, R: FinAlgebra, lam: Sequence[FieldElement], alpha=None
) -> PartialActionMap:
    """g^k . r = lam_k alpha^k(r) on a cyclic group algebra."""
    m = R.dim
    al = linalg.exact_array(linalg.identity(m) if alpha is None else alpha)
    power = linalg.exact_array(linalg.identity(m))
    mats = []
    for k in range(A.dim):
        mats.append(linalg.scale(lam[k], power))
        power = linalg.normalize(linalg.matmul(al, power))
    return PartialActionMap(A, R, linalg.exact_array(mats))


def ore_quotient_images(quo: Quotient, dim_base: int, H: FinHopf, base_cols: Sequence, x_vec: Sequence) -> np.ndarray:
    """Columns: images in H of the quotient basis x^j e_i, given the images of
    e_i and of x."""
    return ore_quotient_images_of(quo.hopf, dim_base, H, base_cols, x_vec)


def ore_quotient_images_of(Q: FinHopf, dim_base: int, H: FinHopf, base_cols: Sequence, x_vec: Sequence) -> np.ndarray:
    cols = []
    d = Q.dim // dim_base
    xpow = list(H.unit)
    for _ in range(d):
        for i in range(dim_base):
            cols.append(H.multiply(xpow, list(base_cols[i])))
        xpow = H.multiply(xpow, list(x_vec))
    return linalg.exact_array([[cols[c][r] for c in range(len(cols))] for r in range(H.dim)])


def _unit_vec(n: int, i: int) -> list[int]:
    return [int(k == i) for k in range(n)]


# -- the Sweedler algebra as a quotient of kC_2[x, sigma] ------------------------------------


def c2_datum() -> HopfOreDatum:
    return cyclic_ore_datum(2, -1)


def sweedler_quotient(t: TruncatedOre) -> tuple[Quotient, np.ndarray]:
    """kC_2[x, sigma] / <x^2> on the host t and its identification with sweedler()."""
    quo = quotient_of_truncated(t, 2)
    H = sweedler()
    T = ore_quotient_images(quo, 2, H, [_unit_vec(4, 0), _unit_vec(4, 1)], _unit_vec(4, 2))
    if not check_isomorphism(quo.hopf, H, T):
        raise AssertionError("kC_2[x, sigma] / <x^2> is not identified with the Sweedler algebra")
    return quo, T


def sweedler_on_truncated(R: FinAlgebra, omega, t: TruncatedOre) -> PartialActionMap:
    """The Sweedler action with parameter omega, pulled back to kC_2[x, sigma]."""
    quo, T = sweedler_quotient(t)
    pa = transport(sweedler_partial_action(R, omega), T, quo.hopf)
    return pullback(pa, quo, host=t)


def nichols3_on_truncated(R: FinAlgebra, w1, w2) -> PartialActionMap:
    """The H_8 action with x_i . 1 = w_i, pulled back to the Sweedler Ore extension."""
    tower = nichols_iterative(3)
    T = nichols_isomorphism(3, tower)
    pa = transport(nichols_partial_action(3, R, [w1, w2]), linalg.inverse(T), tower.algebras[-1])
    quo = tower.quotients[0]
    return pullback(pa, quo, host=quo.host)


def nichols3_identification() -> tuple:
    tower = nichols_iterative(3)
    return tower, nichols_isomorphism(3, tower), nichols(3)


# -- operators on small targets -----------------------------------------------------------


def m2_sign_conjugation() -> np.ndarray:
    """r -> diag(1, -1) r diag(1, -1) on M_2."""
    R = matrix_algebra(2)
    u = [1, 0, 0, -1]
    return conjugation(R, u, u)


def m2_inner_e12() -> np.ndarray:
    """r -> e12 r - alpha(r) e12 for the sign conjugation alpha."""
    return inner_derivation(matrix_algebra(2), m2_sign_conjugation(), [0, 1, 0, 0])


def k4_cycle() -> tuple[FinAlgebra, np.ndarray, np.ndarray]:
    """k^4 with the cyclic shift alpha and D(r) = u (r - alpha(r)), u = (1, -1, 1, -1).

    D is an alpha-derivation with D alpha = -alpha D and D^2 + alpha^2 = id.
    """
    R = diagonal_algebra(4)
    alpha = linalg.zeros((4, 4))
    for i in range(4):
        alpha[(i + 1) % 4, i] = 1
    alpha = linalg.normalize(alpha)
    D = inner_derivation(R, alpha, [1, -1, 1, -1])
    return R, alpha, D
