"""Exact computations with partial actions of finite-dimensional Hopf algebras
and their extensions along Hopf-Ore extensions."""

from __future__ import annotations

from .algcore import FinAlgebra, FinHopf, ValidationReport, validate_algebra, validate_hopf
from .families import RankOneDatum, nichols, rank_one, sweedler, target_algebra
from .hopfore import HopfOreDatum, TruncatedOre, panov_check
from .paction import PartialActionMap, check_cod_volta, extend_formula, verify_axioms
from .qcomb import qbinom
from .scalar import Scalar, root_of_unity

__all__ = [
    "FinAlgebra",
    "FinHopf",
    "HopfOreDatum",
    "PartialActionMap",
    "RankOneDatum",
    "Scalar",
    "TruncatedOre",
    "ValidationReport",
    "check_cod_volta",
    "extend_formula",
    "nichols",
    "panov_check",
    "qbinom",
    "rank_one",
    "root_of_unity",
    "sweedler",
    "target_algebra",
    "validate_algebra",
    "validate_hopf",
    "verify_axioms",
]
