"""Posets and their order topology against classical counts.

Frozen facts used as oracles: the proper part of the Boolean lattice on m
elements is a wedge of one (m-2)-sphere; the poset of proper nontrivial
subspaces of F_q^m is a wedge of q^(m choose 2) spheres of dimension m-2;
counts of subspaces are Gaussian binomials.
"""

import itertools

import pytest
from hypothesis import given, strategies as st

from tottower.errors import InputError, PreconditionError
from tottower.posets import (
    DiagramOfComplexes,
    FinPoset,
    PosetInclusion,
    check_fence_condition,
    down_slice,
    full_subposet,
    gaussian_binomial,
    lan_point,
    order_complex,
    poset_dimension,
    poset_from_relation,
    subset_poset,
    subspace_poset,
    t_functor,
)
from tottower.simplicial import (
    WedgeSignature,
    skeleton,
    wedge_signature,
)


def test_chain_poset_and_antichain():
    chain = poset_from_relation([0, 1, 2], leq=lambda a, b: a <= b)
    assert poset_dimension(chain) == 2
    assert chain.maximal_chains() == ((0, 1, 2),)
    oc = order_complex(chain)
    assert wedge_signature(oc) == WedgeSignature.contractible()
    anti = poset_from_relation("abc", leq=lambda a, b: a == b)
    assert poset_dimension(anti) == 0
    assert len(anti.maximal_chains()) == 3


def test_relation_closure_and_cycles():
    p = poset_from_relation([0, 1, 2], pairs=[(0, 1), (1, 2)])
    assert p.leq(0, 2)  # transitive closure filled this in
    with pytest.raises(InputError):
        poset_from_relation([0, 1], pairs=[(0, 1), (1, 0)])
    with pytest.raises(InputError):
        poset_from_relation([0, 0, 1], pairs=[])


def test_covers_skip_long_edges():
    p = poset_from_relation([0, 1, 2], leq=lambda a, b: a <= b)
    assert p.covers == ((0, 1), (1, 2))


def test_subset_poset_shape():
    p = subset_poset(range(3))
    assert len(p) == 7
    assert poset_dimension(p) == 2
    assert len(p.maximal_chains()) == 6
    bounded = subset_poset(range(4), max_card=2)
    assert len(bounded) == 4 + 6
    with pytest.raises(InputError):
        subset_poset(range(3), min_card=0)
    with pytest.raises(InputError):
        subset_poset([])
    with pytest.raises(InputError):
        subset_poset([1, 1, 2])


def test_boolean_proper_part_is_a_sphere():
    # proper nonempty subsets of an m-set: one (m-2)-sphere
    for m in (2, 3, 4):
        p = subset_poset(range(m), max_card=m - 1)
        sig = wedge_signature(order_complex(p))
        assert sig == WedgeSignature(m - 2, 1), f"m={m}"


def test_subspace_poset_counts():
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(4, 2, 3) == 130
    p = subspace_poset(2, 3, 3)
    assert len(p) == 7 + 7 + 1
    assert poset_dimension(p) == 2
    q = subspace_poset(3, 4, 4)
    assert len(q) == 40 + 130 + 40 + 1
    with pytest.raises(InputError):
        subspace_poset(4, 2, 1)
    with pytest.raises(InputError):
        subspace_poset(2, 0, 1)


def test_subspace_proper_part_is_folkman_wedge():
    # proper nontrivial subspaces of F_2^3: wedge of 2^3 circles
    p = subspace_poset(2, 3, 2)
    sig = wedge_signature(order_complex(p))
    assert sig == WedgeSignature(1, 8)


def test_full_subposet_and_inclusion():
    amb = subset_poset(range(3))
    sub = full_subposet(amb, [e for e in amb.elements if len(e) <= 2])
    incl = PosetInclusion(sub, amb)
    ok, witnesses = check_fence_condition(incl)
    assert ok and not witnesses
    # an upward-closed subposet fails the fence condition
    top = full_subposet(amb, [e for e in amb.elements if len(e) >= 2])
    bad = PosetInclusion(top, amb)
    ok, witnesses = check_fence_condition(bad)
    assert not ok
    assert all(len(x) < len(c) for x, c in witnesses)


def test_inclusion_must_be_full():
    amb = subset_poset(range(2))
    broken = poset_from_relation(
        list(amb.elements), leq=lambda a, b: a == b
    )
    with pytest.raises(InputError):
        PosetInclusion(broken, amb)


def test_down_slice_and_lan():
    amb = subset_poset(range(3))
    sub = full_subposet(amb, [e for e in amb.elements if len(e) <= 1])
    incl = PosetInclusion(sub, amb)
    sl = down_slice(incl, (0, 1))
    assert sl.elements == ((0,), (1,))
    # two incomparable points: lan is a 0-sphere
    assert wedge_signature(lan_point(incl, (0, 1))) == WedgeSignature(0, 1)
    # a singleton slice is a point
    assert wedge_signature(lan_point(incl, (2,))) == \
        WedgeSignature.contractible()


def test_t_functor_on_two_point_model():
    amb = subset_poset(range(2))
    sub = full_subposet(amb, [(0,), (1,)])
    incl = PosetInclusion(sub, amb)
    diag = t_functor(incl)
    assert isinstance(diag, DiagramOfComplexes)
    # suspensions of points over the singletons, of S^0 over the pair
    assert wedge_signature(diag.values[(0,)]) == WedgeSignature.contractible()
    assert wedge_signature(diag.values[(0, 1)]) == WedgeSignature(1, 1)
    # maps exist along each cover and fix the poles
    assert set(diag.vertex_maps) == {((0,), (0, 1)), ((1,), (0, 1))}
    for vmap in diag.vertex_maps.values():
        assert vmap["north"] == "north"
        assert vmap["south"] == "south"


def test_t_functor_refuses_empty_slice():
    amb = subset_poset(range(2))
    sub = full_subposet(amb, [(0,)])
    incl = PosetInclusion(sub, amb)
    with pytest.raises(PreconditionError):
        t_functor(incl)


def test_order_complex_respects_skeleton_homology():
    # skeleton of the order complex vs order complex of the card-bounded
    # poset: the latter is the full subcomplex on short chains
    p = subset_poset(range(3), max_card=2)
    oc = order_complex(p)
    assert oc.dimension == 1
    assert wedge_signature(oc) == WedgeSignature(1, 1)


@given(st.integers(2, 5), st.data())
def test_random_subposets_stay_posets(n, data):
    pairs = data.draw(st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
        max_size=6,
    ))
    try:
        p = poset_from_relation(range(n), pairs=pairs)
    except InputError:
        return  # the random relation had a cycle
    for i, e in enumerate(p.elements):
        assert p.leq(e, e)
    for a, b in itertools.product(p.elements, repeat=2):
        if p.leq(a, b) and p.leq(b, a):
            assert a == b
