"""Finitely generated abelian groups, exactly.

Groups are carried around in two forms.  ``HomologyGroup`` is the abstract
answer: a free rank plus invariant factors in divisibility order, suitable
for equality tests and reports.  ``Subquotient`` keeps enough of a
presentation (numerator basis, transform into diagonal coordinates) to
push elements through and to induce homomorphisms, which is what the
spectral sequence machinery needs.

Isomorphy of an explicit homomorphism is decided without any search: two
finitely generated abelian groups with equal invariants are abstractly
isomorphic, and a surjection between such groups is automatically an
isomorphism because these groups are Hopfian.  Surjectivity itself is a
cokernel computation, so the whole test is two Smith forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantError
from .intlinalg import (
    IntMatrix,
    kernel_basis,
    lattice_basis,
    quotient_invariants,
    smith_normal_form,
    snf_invariants,
    solve_matrix,
)

__all__ = [
    "HomologyGroup",
    "format_group",
    "group_from_orders",
    "GroupHom",
    "presented_homology",
    "Subquotient",
    "subquotient_presentation",
    "induced_hom",
]


@dataclass(frozen=True)
class HomologyGroup:
    """Z^rank plus cyclic torsion in divisibility order."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise InputError("rank must be a nonnegative integer")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise InputError("torsion must be in divisibility order")
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise InputError("torsion coefficients must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        return format_group(self)

    def to_data(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def format_group(g: HomologyGroup) -> str:
    parts = []
    if g.rank == 1:
        parts.append("Z")
    elif g.rank:
        parts.append(f"Z^{g.rank}")
    parts.extend(f"Z/{d}" for d in g.torsion)
    return " + ".join(parts) if parts else "0"


def group_from_orders(orders) -> HomologyGroup:
    """Canonical form of a direct sum of cyclic groups.

    ``orders`` entries: 0 for an infinite cyclic summand, d >= 1 for Z/d.
    """
    orders = tuple(orders)
    for o in orders:
        if not isinstance(o, int) or o < 0:
            raise InputError("orders must be nonnegative integers")
    rank = sum(1 for o in orders if o == 0)
    finite = [o for o in orders if o > 0]
    diag = IntMatrix.from_dict(
        len(finite), len(finite), {(i, i): o for i, o in enumerate(finite)}
    )
    torsion = tuple(d for d in snf_invariants(diag) if d > 1)
    return HomologyGroup(rank, torsion)


def _relation_matrix(orders) -> IntMatrix:
    # One relation column o*e_i per finite-order generator.
    finite = [(i, o) for i, o in enumerate(orders) if o > 0]
    return IntMatrix.from_dict(
        len(orders), len(finite),
        {(i, t): o for t, (i, o) in enumerate(finite)},
    )


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between groups presented as direct sums of cyclics.

    ``src_orders`` and ``dst_orders`` follow the convention of
    ``group_from_orders``.  ``mat`` sends source generators (columns) to
    integer combinations of destination generators, and must respect the
    orders: o * mat[:, j] has to vanish in the destination whenever the
    j-th source generator has finite order o.
    """

    src_orders: tuple
    dst_orders: tuple
    mat: IntMatrix

    def __post_init__(self):
        if self.mat.shape != (len(self.dst_orders), len(self.src_orders)):
            raise InputError("matrix shape does not fit the presentations")
        for i, j, v in self.mat.entries:
            o = self.src_orders[j]
            if o == 0:
                continue
            target = self.dst_orders[i]
            scaled = o * v
            if target == 0:
                if scaled != 0:
                    raise InputError(
                        f"entry ({i}, {j}) ignores the order-{o} relation"
                    )
            elif scaled % target:
                raise InputError(
                    f"entry ({i}, {j}) ignores the order-{o} relation"
                )

    def compose(self, other: "GroupHom") -> "GroupHom":
        if other.dst_orders != self.src_orders:
            raise InputError("composition through mismatched groups")
        return GroupHom(other.src_orders, self.dst_orders,
                        self.mat @ other.mat)

    def __add__(self, other: "GroupHom") -> "GroupHom":
        if (other.src_orders, other.dst_orders) != \
                (self.src_orders, self.dst_orders):
            raise InputError("sum of homs between different groups")
        return GroupHom(self.src_orders, self.dst_orders,
                        self.mat + other.mat)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.src_orders, self.dst_orders, -self.mat)

    @property
    def is_zero_hom(self) -> bool:
        for i, _, v in self.mat.entries:
            o = self.dst_orders[i]
            if o == 0 or v % o:
                return False
        return True

    def is_iso(self) -> bool:
        if group_from_orders(self.src_orders) != \
                group_from_orders(self.dst_orders):
            return False
        # surjective onto a group with the same invariants, hence iso
        m = len(self.dst_orders)
        coker = IntMatrix.hstack([self.mat, _relation_matrix(self.dst_orders)])
        inv = snf_invariants(coker)
        return len(inv) == m and all(d == 1 for d in inv)


def presented_homology(f: GroupHom, g: GroupHom) -> HomologyGroup:
    """Homology ker(g)/im(f) at the middle of A --f--> B --g--> C."""
    if f.dst_orders != g.src_orders:
        raise InputError("maps do not share a middle group")
    if not g.compose(f).is_zero_hom:
        raise InvariantError("composite is not zero, no homology to take")
    m = len(f.dst_orders)
    rb = _relation_matrix(f.dst_orders)
    rc = _relation_matrix(g.dst_orders)
    # lifts of ker g: x with g.mat @ x in the relation lattice of C
    paired = kernel_basis(IntMatrix.hstack([g.mat, -rc]))
    numer = lattice_basis(paired.take_rows(range(m)))
    denom = IntMatrix.hstack([f.mat, rb])
    free, torsion = quotient_invariants(numer, denom)
    return HomologyGroup(free, torsion)


@dataclass(frozen=True)
class Subquotient:
    """Presentation of L/L' for lattices L' <= L inside some Z^N.

    ``gens`` columns are ambient representatives of the generators, whose
    orders are listed in ``orders`` (0 = infinite, otherwise >= 2; trivial
    generators are dropped).  ``coords`` expresses any ambient vector of L
    in these generators, reducing finite coordinates mod their order.
    """

    ambient: int
    orders: tuple
    gens: IntMatrix
    _basis: IntMatrix
    _u: IntMatrix
    _keep: tuple
    _all_orders: tuple

    def group(self) -> HomologyGroup:
        return group_from_orders(self.orders)

    def coords(self, vec: IntMatrix) -> tuple:
        if vec.shape != (self.ambient, 1):
            raise InputError("expected an ambient column vector")
        x = solve_matrix(self._basis, vec)
        y = self._u @ x
        col = {i: v for i, _, v in y.entries}
        out = []
        for idx in self._keep:
            o = self._all_orders[idx]
            v = col.get(idx, 0)
            out.append(v % o if o else v)
        return tuple(out)


def subquotient_presentation(numer_basis: IntMatrix,
                             denom_gens: IntMatrix) -> Subquotient:
    """Present (span of numer_basis)/(span of denom_gens).

    The numerator columns must be independent and the denominator columns
    must lie in their span; violations raise, they are never patched up.
    """
    if numer_basis.nrows != denom_gens.nrows:
        raise InputError("numerator and denominator in different ambients")
    res = smith_normal_form(numer_basis)
    if res.rank != numer_basis.ncols:
        raise InputError("numerator columns are not independent")
    k = numer_basis.ncols
    w = solve_matrix(numer_basis, denom_gens)
    wres = smith_normal_form(w)
    all_orders = tuple(wres.invariants) + (0,) * (k - wres.rank)
    keep = tuple(i for i, d in enumerate(all_orders) if d != 1)
    gens = (numer_basis @ wres.u_inv).take_columns(keep)
    orders = tuple(all_orders[i] for i in keep)
    return Subquotient(numer_basis.nrows, orders, gens,
                       numer_basis, wres.u, keep, all_orders)


def induced_hom(src: Subquotient, dst: Subquotient,
                ambient_map: IntMatrix) -> GroupHom:
    """Homomorphism induced on subquotients by a map of ambient lattices.

    The ambient map must send the numerator of ``src`` into the numerator
    of ``dst`` and the denominator into the denominator; only the first is
    checked directly (via coords), the second is the caller's theory.
    """
    if ambient_map.shape != (dst.ambient, src.ambient):
        raise InputError("ambient map shape mismatch")
    img = ambient_map @ src.gens
    data = {}
    for j in range(img.ncols):
        coords = dst.coords(img.take_columns([j]))
        for i, v in enumerate(coords):
            if v:
                data[(i, j)] = v
    mat = IntMatrix.from_dict(len(dst.orders), len(src.orders), data)
    return GroupHom(src.orders, dst.orders, mat)
