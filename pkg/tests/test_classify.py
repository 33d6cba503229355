import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regsets.classify import (
    ClassifyError,
    auto_classify,
    classify,
    direction_census,
    enumerate_intersections,
    is_unital,
)
from regsets.constructions import (
    AdditiveMap,
    complement,
    gamma_a,
    hermitian_unital,
    interior_square_classes,
    lift,
    touching_union,
    trace_norm_set,
)
from regsets.galois import create_field
from regsets.plane import PointSet, plane_over
from regsets.suites import gamma_field


# ----------------------------------------------------------------------
# the enumerator
# ----------------------------------------------------------------------
def test_empty_set():
    F = create_field(3, 2)
    enum = enumerate_intersections(PointSet(F))
    assert enum.global_counts == {0: 91}


def test_full_line():
    F = create_field(3, 2)
    pl = plane_over(F)
    X = PointSet(F, np.array(pl.points_on_line(5)))
    enum = enumerate_intersections(X)
    assert enum.global_counts == {10: 1, 1: 90}


def test_enumerator_against_slow_line_scan():
    """Dual route: the kernel versus points_on_line membership counting."""
    F = create_field(3, 2)
    pl = plane_over(F)
    rng = np.random.default_rng(11)
    for _ in range(5):
        idx = rng.choice(pl.n_points, size=rng.integers(1, 40), replace=False)
        X = PointSet(F, idx)
        enum = enumerate_intersections(X)
        slow = np.array([X.line_size(l) for l in range(pl.n_lines)])
        assert np.array_equal(enum.line_sizes, slow)


@settings(max_examples=25, deadline=None)
@given(st.sets(st.integers(0, 20), min_size=0, max_size=18))
def test_identities_on_random_sets(members):
    F = create_field(2, 2)
    X = PointSet(F, np.array(sorted(members), dtype=np.int64))
    enum = enumerate_intersections(X)  # validate() runs inside
    sizes = enum.line_sizes
    assert sizes.sum() == X.size * 5
    assert (sizes * (sizes - 1)).sum() == X.size * (X.size - 1)


def test_gamma_q16_spectrum():
    X = gamma_a(gamma_field(16), 1)
    enum = enumerate_intersections(X)
    assert set(enum.global_counts) == {1, 9, 13, 17, 21}
    for d in range(256):
        assert enum.by_direction[d] == {21: 64, 17: 96, 13: 64, 9: 32}


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------
def test_unital_frame():
    X = hermitian_unital(create_field(3, 2))
    rep = classify(X, X.frame[0], X.frame[1])
    assert rep.is_regular_pointed
    assert rep.t == 3 and rep.affine_types == [1, 4]
    assert rep.pointed_params == "[3; 1, 4]"


def test_classify_preconditions():
    X = hermitian_unital(create_field(2, 2))
    pl = X.plane
    with pytest.raises(ClassifyError):
        classify(X, 1, pl.line_infinity)  # (0,1) is not on l_inf... P0 not through l0
    missing = int(np.flatnonzero(~X.members)[0])
    with pytest.raises(ClassifyError):
        classify(X, missing, 0)  # P0 outside the set
    # a secant is not a tangent
    enum = enumerate_intersections(X)
    p0 = int(X.indices()[0])
    secant = next(l for l in pl.pencil(p0) if enum.line_sizes[l] > 1)
    with pytest.raises(ClassifyError):
        classify(X, p0, secant)


def test_auto_classify_conic():
    # a conic in PG(2,5): every point carries exactly one tangent and all
    # frames agree by homogeneity
    F = create_field(5, 1)
    X = touching_union(F, [0])
    reports = auto_classify(X)
    assert len(reports) == 6
    assert len({(r.t, tuple(r.affine_types), r.is_regular_pointed) for r in reports}) == 1
    assert all(r.is_regular_pointed for r in reports)


def test_auto_classify_no_tangents():
    F = create_field(2, 2)
    X = PointSet(F, np.ones(21, dtype=bool))  # the full plane
    assert auto_classify(X) == []


def test_auto_classify_gamma_contains_standard_frame():
    X = gamma_a(gamma_field(4), 3)
    pl = X.plane
    reports = auto_classify(X)
    assert any(r.frame == (pl.infinity, pl.line_infinity) for r in reports)


def test_boundary_family_not_regular():
    # over GF(9) with f(x) = a x^2, 4 N(a) = 1: pointed [3; 0, 3, 6], not regular
    F = create_field(3, 2)
    tower = F.subfield(1)
    for a0 in (1, 2):  # 4 a^2 = a^2 = 1 in GF(3)
        from regsets.constructions import GeneralMap

        X = trace_norm_set(F, GeneralMap((0, 0, tower.embed(a0))))
        rep = classify(X, X.frame[0], X.frame[1])
        assert rep.is_pointed and rep.t == 3
        assert rep.affine_types == [0, 3, 6]
        assert not rep.is_regular_pointed


def test_complement_parameter_mapping():
    # classify(complement(X)) parameters are q - (parameters of X)
    F = create_field(3, 2)
    for X in (hermitian_unital(F), trace_norm_set(F, AdditiveMap((0, 2)))):
        rep = classify(X, X.frame[0], X.frame[1])
        C = complement(X)
        crep = classify(C, C.frame[0], C.frame[1])
        assert crep.t == 9 - rep.t
        assert sorted(9 - m for m in rep.affine_types) == crep.affine_types
        assert crep.is_regular_pointed == rep.is_regular_pointed


# ----------------------------------------------------------------------
# is_unital
# ----------------------------------------------------------------------
def test_is_unital_cases():
    assert is_unital(hermitian_unital(create_field(2, 2)))
    assert is_unital(hermitian_unital(create_field(3, 2)))
    X = gamma_a(gamma_field(9), 1)
    assert not is_unital(X)  # four affine sizes
    # q = 4, f = a x^2 = a x^sqrt(q): the unital a-class
    F = gamma_field(4)
    flags = {a: is_unital(gamma_a(F, a)) for a in range(1, 16)}
    assert any(flags.values()) and not all(flags.values())
    # wrong cardinality
    assert not is_unital(PointSet(create_field(3, 2), np.array([0, 1, 2])))


# ----------------------------------------------------------------------
# direction census
# ----------------------------------------------------------------------
def test_census_trivial_lift_by_hand():
    F = create_field(3, 1)
    S = PointSet(F, np.array([0]), label="origin")
    X = lift(S, h=2, s=1)
    rep = direction_census(X, S)
    assert rep.ok
    assert rep.covered_directions == 9  # q^(s+1) = q^h: all of them
    # every covered direction: 9 - 9 = 0 case-(i) empties, and per slope the
    # base profile is one tangent and two empty lines, scaled by q^s = 3
    for row in rep.details:
        assert row["covered"] and row["ok"]


def test_census_multiple_of_q_2h_minus_1():
    F = create_field(3, 1)
    S = touching_union(F, [0])
    X = lift(S, h=2, s=1)
    rep = direction_census(X, S)
    assert rep.ok and rep.divisibility["modulus"] == 27
    assert rep.divisibility["ok"]


def test_census_sum_rule():
    F = create_field(5, 1)
    interior, _ = interior_square_classes(F)
    S = touching_union(F, interior)
    X = lift(S, h=2, s=1)
    rep = direction_census(X, S)
    assert rep.ok and rep.sum_rule_ok


def test_census_requires_lift_family():
    F = create_field(3, 2)
    with pytest.raises(ClassifyError):
        direction_census(hermitian_unital(F), hermitian_unital(F))
