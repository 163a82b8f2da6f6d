import logging
from fractions import Fraction

import pytest

from multijoints import (Dir3, EmptyThresholdSet, LineFamilies, Point3, SearchBudgetExceeded,
                         ThresholdQuery, ValidationError, build_incidences, canonicalize_line,
                         has_transversal_subcollections, is_multijoint, is_transversal,
                         j_threshold, multijoints, multiplicity, subsample_reduction)
from multijoints.lab import bush_config, grid_config, random_config
from multijoints.search import has_transversal

from oracles import brute_multijoints, brute_multiplicity, brute_threshold, fams_of, pts_of

O = Point3(0, 0, 0)


def through_origin(*dirs):
    return [canonicalize_line(O, Dir3.of(*d)) for d in dirs]


E1, E2, E3 = through_origin((1, 0, 0), (0, 1, 0), (0, 0, 1))
AXES = LineFamilies((E1,), (E2,), (E3,))


def test_build_incidences_axes():
    inc = build_incidences(AXES)
    assert inc.points == (O,)
    assert inc.through == (((0,), (0,), (0,)),)


def test_build_incidences_shifted():
    shifted = canonicalize_line(Point3(0, 0, 1), Dir3(1, 0, 0))
    inc = build_incidences(LineFamilies((E1,), (shifted,), (E3,)))
    assert set(inc.points) == {O, Point3(0, 0, 1)}
    assert not any(is_multijoint(i, inc) for i in range(len(inc.points)))


def test_grid2_candidates():
    inc = build_incidences(grid_config(2))
    assert len(inc.points) == 8
    assert set(multijoints(grid_config(2))) == {Point3(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)}


def test_is_multijoint_examples():
    inc = build_incidences(AXES)
    assert is_multijoint(O, inc)
    two = build_incidences(LineFamilies((E1,), (E2,), (canonicalize_line(Point3(5, 5, 0), Dir3(0, 0, 1)),)))
    assert not any(is_multijoint(i, two) for i in range(len(two.points)))
    flat = LineFamilies(tuple(through_origin((1, 0, 0))), tuple(through_origin((0, 1, 0))),
                        tuple(through_origin((1, 1, 0))))
    assert multijoints(flat) == []


def test_parallel_third_family_gives_nothing():
    far = canonicalize_line(Point3(7, 7, 0), Dir3(1, 1, 0))
    assert multijoints(LineFamilies((E1,), (E2,), (far,))) == []


def test_multiplicity_examples():
    assert multiplicity(O, AXES) == 1
    bush = LineFamilies(tuple(through_origin((1, 0, 0), (1, 2, 3))),
                        tuple(through_origin((0, 1, 0), (3, 1, 2))),
                        tuple(through_origin((0, 0, 1), (2, 3, 1))))
    assert multiplicity(O, bush) == 8 == brute_multiplicity((0, 0, 0), fams_of(bush))
    extra = LineFamilies(tuple(through_origin((1, 0, 0), (1, 1, 0))), (E2,), (E3,))
    # (1,1,0) with e2, e3 spans as well; (1,1,0),(0,1,0) with e3 spans
    assert multiplicity(O, extra) == brute_multiplicity((0, 0, 0), fams_of(extra)) == 2
    coplanar_extra = LineFamilies(tuple(through_origin((1, 0, 0), (0, 1, 0))), (E2,), (E3,))
    assert multiplicity(O, coplanar_extra) == 1


def test_is_transversal_examples():
    assert is_transversal([E1], [E2], [E3])
    assert not is_transversal([E1, E2], [E2], [E3])
    assert is_transversal([], [E2], [E3])


def test_has_transversal_examples():
    inc = build_incidences(AXES)
    assert has_transversal_subcollections(O, inc, ThresholdQuery(1, 1, 1))
    f = LineFamilies((E1, E2), (E2,), (E3,))
    inc = build_incidences(f)
    assert not has_transversal_subcollections(O, inc, ThresholdQuery(2, 1, 1))
    assert has_transversal_subcollections(O, inc, ThresholdQuery(1, 1, 1))


def test_j_threshold_examples():
    g2 = grid_config(2)
    assert j_threshold(g2, ThresholdQuery(1, 1, 1)) == multijoints(g2)
    assert j_threshold(g2, ThresholdQuery(2, 1, 1)) == []
    bush = bush_config(2, 2, 2, seed=1)
    assert j_threshold(bush, ThresholdQuery(2, 2, 2)) == [O]
    assert j_threshold(bush, ThresholdQuery(3, 2, 2)) == []


def test_threshold_query_validation():
    assert ThresholdQuery.of(Fraction(3, 2), 1, "2.0" if False else 2).as_tuple() == (2, 1, 2)
    for bad in ((0, 1, 1), (1, -1, 1), (1.5, 1, 1), (True, 1, 1)):
        with pytest.raises(ValidationError):
            ThresholdQuery(*bad)
    with pytest.raises(ValidationError):
        ThresholdQuery.of(0, 1, 1)


def test_families_validation_and_dedup(caplog):
    with pytest.raises(ValidationError):
        LineFamilies((), (E2,), (E3,))
    with caplog.at_level(logging.WARNING):
        f = LineFamilies((E1, E1), (E2,), (E3,))
    assert f.sizes == (1, 1, 1)
    assert "duplicate" in caplog.text
    assert LineFamilies.from_json(f.to_json()) == f
    with pytest.raises(ValidationError):
        LineFamilies.from_json({"fam1": []})


def test_cross_family_shared_line():
    # E1 in families 1 and 2: no spanning triple can use the same direction twice
    f = LineFamilies((E1,), (E1, E2), (E3,))
    assert multijoints(f) == [O]
    assert multiplicity(O, f) == 1 == brute_multiplicity((0, 0, 0), fams_of(f))


def test_random_configs_match_oracle():
    for seed in range(15):
        f = random_config(3, 3, 3, seed)
        fams = fams_of(f)
        assert pts_of(multijoints(f)) == brute_multijoints(fams)
        for q in ((1, 1, 1), (2, 1, 1), (1, 2, 2)):
            assert pts_of(j_threshold(f, ThresholdQuery(*q))) == brute_threshold(fams, q)


def test_search_budget():
    sizes = (14, 14, 14)
    ok = lambda i, j, k: i == j == k
    with pytest.raises(SearchBudgetExceeded):
        has_transversal(sizes, ok, (2, 2, 2), limit=12, exact=True)
    assert has_transversal(sizes, ok, (2, 2, 2), limit=12, exact=False) is False
    # only diagonal triples are compatible, so no 2x2x2 block exists
    assert has_transversal(sizes, ok, (2, 2, 2), limit=14) is False
    assert has_transversal(sizes, lambda i, j, k: True, (5, 5, 5), limit=12)


def test_subsample_examples():
    rep = subsample_reduction(grid_config(2), ThresholdQuery(1, 1, 1), trials=20, seed=4)
    assert rep.survival_fraction == 1
    assert all(s == (4, 4, 4) for s in rep.sampled_sizes)
    with pytest.raises(EmptyThresholdSet):
        subsample_reduction(grid_config(2), ThresholdQuery(2, 2, 2), trials=5, seed=0)
    with pytest.raises(ValidationError):
        subsample_reduction(grid_config(2), ThresholdQuery(1, 1, 1), trials=0, seed=0)


def test_subsample_reproducible():
    bush = bush_config(2, 2, 2, seed=2)
    a = subsample_reduction(bush, ThresholdQuery(2, 2, 2), trials=200, seed=99)
    b = subsample_reduction(bush, ThresholdQuery(2, 2, 2), trials=200, seed=99)
    assert a == b and a.to_json() == b.to_json()
    c = subsample_reduction(bush, ThresholdQuery(2, 2, 2), trials=200, seed=100)
    assert c.sampled_sizes != a.sampled_sizes
