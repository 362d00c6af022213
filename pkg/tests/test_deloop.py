"""Delooping analysis on the model inclusions.

The d_max values here were worked out by hand from the slice order
complexes before the analyzer existed, and the numeric bound helpers
must agree with the analyzer on every model where both apply.
"""

import json

import pytest

from tottower import InvariantError, PreconditionError, InputError
from tottower.deloop import (
    analyze_inclusion,
    delta_model,
    lifting_criterion,
    subset_deloop_bound,
    subset_model,
    cover_suspension_bound,
    subspace_model,
    suspension_functor_connectivity,
    tot_truncation_bound,
    unpointed_check,
)
from tottower.posets import (
    PosetInclusion,
    full_subposet,
    poset_from_relation,
)


def test_subset_two_one():
    # single complement element {0,1}, slice two points, suspension S^1
    report = analyze_inclusion(subset_model(2, 1))
    assert report.uniform_sphere_dim == 1
    assert report.complement_dim == 0
    assert report.d_max == 1
    assert not report.trivial_fiber
    assert report.d_max == subset_deloop_bound(2, 1)
    assert report.certifies(1)
    assert not report.certifies(2)


def test_subset_four_two():
    # complement has cards 3 and 4, a chain of length 1; values are
    # suspensions of a hexagon (S^2) and of the 1-skeleton of the
    # tetrahedron (wedge of three S^2)
    report = analyze_inclusion(subset_model(4, 2))
    assert report.uniform_sphere_dim == 2
    assert report.complement_dim == 1
    assert report.d_max == 1 == subset_deloop_bound(4, 2)
    top = dict(report.signatures)[(0, 1, 2, 3)]
    assert (top.sphere_dim, top.count) == (2, 3)


def test_subspace_two_three_two():
    # complement is the full space alone; its slice is the dim <= 2
    # subspace poset of F_2^3, a wedge of eight circles
    report = analyze_inclusion(subspace_model(2, 3, 2))
    assert report.uniform_sphere_dim == 2
    assert report.complement_dim == 0
    assert report.d_max == 2 == cover_suspension_bound(3, 2)
    noncontractible = [
        sig for _, sig in report.signatures if not sig.is_contractible
    ]
    assert len(noncontractible) == 1
    assert (noncontractible[0].sphere_dim, noncontractible[0].count) == (2, 8)


def test_trivial_fiber_when_nothing_truncated():
    report = analyze_inclusion(delta_model(2, 2))
    assert report.trivial_fiber
    assert report.d_max is None
    assert report.uniform_sphere_dim is None
    assert report.complement_dim == -1
    assert report.certifies(10)


@pytest.mark.parametrize(
    "n,m",
    [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
)
def test_delta_model_matches_truncation_bound(n, m):
    report = analyze_inclusion(delta_model(n, m))
    assert report.uniform_sphere_dim == n + 1
    assert report.complement_dim == m - n - 1
    assert report.d_max == tot_truncation_bound(n, m) == 2 * n - m + 2


def test_raw_d_max_can_reach_zero():
    # push one extra card-2 subset into the subposet: the top slice
    # becomes disconnected but still a homology wedge of S^0, so the
    # suspensions stay in dimension 1 while the complement deepens
    ambient = delta_model(1, 2).ambient
    keep = [e for e in ambient.elements if len(e) <= 1] + [(0, 1)]
    incl = PosetInclusion(full_subposet(ambient, keep), ambient)
    report = analyze_inclusion(incl)
    assert report.uniform_sphere_dim == 1
    assert report.complement_dim == 1
    assert report.d_max == 0
    assert report.certifies(0)
    assert not report.certifies(1)


def test_fence_violation_rejected():
    ambient = subset_model(2, 2).ambient
    bad = PosetInclusion(full_subposet(ambient, [(0, 1)]), ambient)
    with pytest.raises(PreconditionError):
        analyze_inclusion(bad)


def test_mixed_sphere_dimensions_rejected():
    # t sees only the two minimal points (suspension S^1); z sees the
    # full square a < x, y > b (suspension S^2)
    pairs = [
        ("a", "t"), ("b", "t"),
        ("a", "x"), ("b", "x"), ("a", "y"), ("b", "y"),
        ("x", "z"), ("y", "z"), ("a", "z"), ("b", "z"),
    ]
    ambient = poset_from_relation(
        ["a", "b", "t", "x", "y", "z"], pairs=pairs
    )
    incl = PosetInclusion(
        full_subposet(ambient, ["a", "b", "x", "y"]), ambient
    )
    with pytest.raises(PreconditionError):
        analyze_inclusion(incl)


def test_report_serializes():
    report = analyze_inclusion(subset_model(3, 1))
    data = report.to_data()
    text = json.dumps(data, sort_keys=True)
    assert "weakenings" in text
    assert data["weakenings"]
    assert data["d_max"] == report.d_max


def test_truncation_bound_edges():
    assert tot_truncation_bound(1, 1) == 3
    assert tot_truncation_bound(2, 5) == 1
    assert tot_truncation_bound(2, 5) == 2 * 2 - 5 + 2
    assert tot_truncation_bound(1, 3) == 1
    assert tot_truncation_bound(1, 4) is None
    with pytest.raises(PreconditionError):
        tot_truncation_bound(0, 1)
    with pytest.raises(PreconditionError):
        tot_truncation_bound(3, 2)


def test_numeric_helpers():
    assert subset_deloop_bound(6, 5) == 5
    assert cover_suspension_bound(4, 3) == 3
    assert cover_suspension_bound(3, 2) == 2
    assert suspension_functor_connectivity(5, 2) == 3
    with pytest.raises(PreconditionError):
        suspension_functor_connectivity(1, 2)
    assert lifting_criterion(3, 3)
    assert not lifting_criterion(4, 3)
    assert unpointed_check(3, 2)
    assert not unpointed_check(4, 2)
    with pytest.raises(PreconditionError):
        subset_deloop_bound(3, 0)
    with pytest.raises(InputError):
        subset_model(3, 0)
    with pytest.raises(InputError):
        delta_model(-1, 1)


def test_delta_model_degenerate_point():
    incl = delta_model(0, 0)
    assert incl.sub.elements == incl.ambient.elements == ((0,),)
    report = analyze_inclusion(incl)
    assert report.trivial_fiber
