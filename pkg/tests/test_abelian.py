"""Group presentations, induced maps, and the Hopfian isomorphism test."""

import pytest
from hypothesis import given, strategies as st

from tottower.abelian import (
    GroupHom,
    HomologyGroup,
    Subquotient,
    format_group,
    group_from_orders,
    induced_hom,
    presented_homology,
    subquotient_presentation,
)
from tottower.errors import InputError, InvariantError
from tottower.intlinalg import IntMatrix


def test_format_group():
    assert format_group(HomologyGroup(0)) == "0"
    assert format_group(HomologyGroup(1)) == "Z"
    assert format_group(HomologyGroup(3)) == "Z^3"
    assert format_group(HomologyGroup(2, (2, 6))) == "Z^2 + Z/2 + Z/6"
    assert str(HomologyGroup(0, (5,))) == "Z/5"


def test_homology_group_validation():
    with pytest.raises(InputError):
        HomologyGroup(-1)
    with pytest.raises(InputError):
        HomologyGroup(0, (3, 2))
    with pytest.raises(InputError):
        HomologyGroup(0, (1,))


def test_group_from_orders_canonicalizes():
    assert group_from_orders((0, 0)) == HomologyGroup(2)
    assert group_from_orders((4, 6)) == HomologyGroup(0, (2, 12))
    assert group_from_orders((2, 3)) == HomologyGroup(0, (6,))
    assert group_from_orders((1, 1)) == HomologyGroup(0)
    assert group_from_orders((0, 2, 1)) == HomologyGroup(1, (2,))


def test_group_hom_well_definedness():
    # Z/2 -> Z/4 by 1 is not a homomorphism of presentations
    with pytest.raises(InputError):
        GroupHom((2,), (4,), IntMatrix.from_rows([[1]]))
    GroupHom((2,), (4,), IntMatrix.from_rows([[2]]))
    # Z/2 -> Z must be zero
    with pytest.raises(InputError):
        GroupHom((2,), (0,), IntMatrix.from_rows([[3]]))
    GroupHom((0,), (2,), IntMatrix.from_rows([[1]]))


def test_is_iso_via_surjectivity():
    # Z/2 + Z/3 -> Z/6, a |-> 3g, b |-> 2g: an isomorphism
    f = GroupHom((2, 3), (6,), IntMatrix.from_rows([[3, 2]]))
    assert f.is_iso()
    # a |-> 3g alone misses the index-3 part
    g = GroupHom((2, 3), (6,), IntMatrix.from_rows([[3, 0]]))
    assert not g.is_iso()
    # mismatched groups are never isomorphic
    h = GroupHom((2,), (4,), IntMatrix.from_rows([[2]]))
    assert not h.is_iso()
    # multiplication by 1 on Z^2
    assert GroupHom((0, 0), (0, 0), IntMatrix.identity(2)).is_iso()
    assert not GroupHom((0, 0), (0, 0),
                        IntMatrix.from_rows([[2, 0], [0, 1]])).is_iso()


def test_zero_hom_detection():
    f = GroupHom((0,), (4,), IntMatrix.from_rows([[4]]))
    assert f.is_zero_hom
    g = GroupHom((0,), (4,), IntMatrix.from_rows([[2]]))
    assert not g.is_zero_hom


def test_presented_homology_free_case():
    two = GroupHom((0,), (0,), IntMatrix.from_rows([[2]]))
    zero = GroupHom((0,), (0,), IntMatrix.zeros(1, 1))
    assert presented_homology(two, zero) == HomologyGroup(0, (2,))
    assert presented_homology(zero, two) == HomologyGroup(0)
    with pytest.raises(InvariantError):
        presented_homology(two, two)  # composite 4 is not zero on Z


def test_presented_homology_with_torsion():
    # Z/2 --x2--> Z/4 --proj--> Z/2 is exact in the middle
    f = GroupHom((2,), (4,), IntMatrix.from_rows([[2]]))
    g = GroupHom((4,), (2,), IntMatrix.from_rows([[1]]))
    assert presented_homology(f, g) == HomologyGroup(0)
    # drop the left map: homology becomes ker g = Z/2
    zero = GroupHom((2,), (4,), IntMatrix.zeros(1, 1))
    assert presented_homology(zero, g) == HomologyGroup(0, (2,))


def test_subquotient_presentation():
    # (2Z + Z) / span{(4, 0)} inside Z^2
    numer = IntMatrix.from_rows([[2, 0], [0, 1]])
    denom = IntMatrix.from_rows([[4], [0]])
    sq = subquotient_presentation(numer, denom)
    assert sq.group() == HomologyGroup(1, (2,))
    zero = (0,) * len(sq.orders)
    assert sq.coords(IntMatrix.from_rows([[4], [0]])) == zero
    assert sq.coords(IntMatrix.from_rows([[2], [0]])) != zero
    # coords are additive mod the orders
    s = sq.coords(IntMatrix.from_rows([[2], [5]]))
    t1 = sq.coords(IntMatrix.from_rows([[2], [0]]))
    t2 = sq.coords(IntMatrix.from_rows([[0], [5]]))
    summed = tuple(
        (a + b) % o if o else a + b
        for a, b, o in zip(t1, t2, sq.orders)
    )
    assert s == summed


def test_subquotient_rejects_outside_vectors():
    numer = IntMatrix.from_rows([[2], [0]])
    sq = subquotient_presentation(numer, IntMatrix.zeros(2, 0))
    with pytest.raises(InvariantError):
        sq.coords(IntMatrix.from_rows([[1], [0]]))


def test_induced_hom_on_subquotients():
    # multiplication by 3 on Z^2 / 2Z^2
    numer = IntMatrix.identity(2)
    denom = IntMatrix.identity(2).scale(2)
    sq = subquotient_presentation(numer, denom)
    assert sq.group() == HomologyGroup(0, (2, 2))
    tripling = induced_hom(sq, sq, IntMatrix.identity(2).scale(3))
    assert tripling.is_iso()
    doubling = induced_hom(sq, sq, IntMatrix.identity(2).scale(2))
    assert doubling.is_zero_hom


@given(st.lists(st.integers(0, 12), max_size=5))
def test_identity_hom_is_iso(orders):
    orders = tuple(orders)
    n = len(orders)
    ident = GroupHom(orders, orders, IntMatrix.identity(n))
    assert ident.is_iso()
    assert ident.compose(ident).mat == ident.mat
