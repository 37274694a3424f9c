from __future__ import annotations

import pytest

from hopfact.families import RankOneDatum, sweedler_ore_datum, sweedler_partial_action, target_algebra
from hopfact.oracle import (
    SearchGrid,
    UnknownTag,
    base_partial_actions,
    classify_rank_one,
    derived_tags,
    enumerate_extensions,
    verify_derived_example,
)
from hopfact.paction import check_cod_volta

E12 = [0, 1, 0, 0]


@pytest.mark.parametrize("tag", ["sweedler-e12-grid", "outside-predicted-fails", "classify-sweedler-k2", "classify-r22-k2"])
def test_derived_examples(tag):
    assert verify_derived_example(tag)


def test_registry_examples():
    for tag in ("qbinom-2-1", "panov-sweedler-chi"):
        assert verify_derived_example(tag)


def test_unknown_tag():
    with pytest.raises(UnknownTag):
        verify_derived_example("no-such-example")


def test_tags_are_unique_and_cover_every_module():
    from hopfact.oracle import derived_example

    tags = derived_tags()
    assert len(tags) == len(set(tags))
    modules = {derived_example(t).module for t in tags}
    assert modules == {"scalar", "qcomb", "algcore", "hopfore", "paction", "families", "oracle", "cli"}


def test_pool_must_be_duplicate_free():
    with pytest.raises(ValueError):
        SearchGrid(target_algebra("k2"), (0, 1, 1))
    assert SearchGrid.create(target_algebra("k2"), [0, 1, 1]).pool == (0, 1)


def test_grid_validity_matches_the_summation_condition():
    R = target_algebra("ut2")
    datum = sweedler_ore_datum()
    pa = sweedler_partial_action(R, [0, 1, 0])
    for w, rep in enumerate_extensions(pa, datum, SearchGrid.create(R)):
        assert rep.ok == check_cod_volta(pa, datum, list(w)).summation


def test_zero_w_is_always_found():
    R = target_algebra("k2")
    cert = classify_rank_one(RankOneDatum.cyclic(2, -1, 0), R, SearchGrid.create(R, [0, 1, -1]))
    partial = cert.cases[1]
    assert all((i, (0, 0)) in partial.found for i in range(len(base_partial_actions(RankOneDatum.cyclic(2, -1, 0), R, [0, 1]))))


def test_certificate_is_deterministic():
    R = target_algebra("k2")
    D = RankOneDatum.cyclic(2, -1, 1)
    a = classify_rank_one(D, R, SearchGrid.create(R, [0, 1, -1]), "radford(2,2,q2)", "k2").render()
    b = classify_rank_one(D, R, SearchGrid.create(R, [0, 1, -1]), "radford(2,2,q2)", "k2").render()
    assert a == b
    assert "schema: 1" in a and "scope: set equality over the declared grid only" in a
    assert a.rstrip().endswith("match: true")


def test_taft_on_m2_matches():
    R = target_algebra("m2")
    cert = classify_rank_one(RankOneDatum.cyclic(4, -1, 0), R, SearchGrid.create(R, [0, 1, -1]))
    assert cert.match
