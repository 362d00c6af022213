"""Bounded chain complexes of finitely generated free Z-modules.

A complex stores the rank of each degree in a contiguous window plus the
boundary matrices inside the window; everything outside is zero.  The
square-zero law is checked at construction, so an object of this type is
always a genuine complex.

Homology comes in two flavours.  ``homology`` uses the rank formula
(free rank n_k - r_k - r_{k+1}, torsion from the invariant factors of the
incoming boundary), which is the cheap path.  ``homology_presentation``
builds an explicit kernel-modulo-image presentation whose generators can
be pushed through chain maps; the two are compared against each other in
the test suite rather than trusted separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .abelian import (
    HomologyGroup,
    Subquotient,
    induced_hom,
    subquotient_presentation,
)
from .errors import InputError, InvariantError
from .intlinalg import IntMatrix, kernel_basis, snf_invariants

__all__ = [
    "ChainComplexInt",
    "ChainMap",
    "chain_map",
    "identity_chain_map",
]


@dataclass(frozen=True)
class ChainComplexInt:
    """Chain complex concentrated in degrees lo .. lo+len(ranks)-1.

    boundaries[t] is the boundary C_{lo+t+1} -> C_{lo+t}, so it has shape
    (ranks[t], ranks[t+1]).
    """

    lo: int
    ranks: tuple
    boundaries: tuple

    def __post_init__(self):
        if not isinstance(self.lo, int):
            raise InputError("lowest degree must be an integer")
        if not self.ranks:
            raise InputError("a complex needs at least one degree")
        for n in self.ranks:
            if not isinstance(n, int) or n < 0:
                raise InputError("ranks must be nonnegative integers")
        if len(self.boundaries) != len(self.ranks) - 1:
            raise InputError("wrong number of boundary matrices")
        for t, b in enumerate(self.boundaries):
            if b.shape != (self.ranks[t], self.ranks[t + 1]):
                raise InputError(
                    f"boundary into degree {self.lo + t} has shape "
                    f"{b.shape}, expected ({self.ranks[t]}, {self.ranks[t+1]})"
                )
        for t in range(len(self.boundaries) - 1):
            if not (self.boundaries[t] @ self.boundaries[t + 1]).is_zero:
                raise InvariantError(
                    f"boundary squared is nonzero at degree {self.lo + t + 2}"
                )

    # -- shape ---------------------------------------------------------

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, k: int) -> int:
        if self.lo <= k <= self.hi:
            return self.ranks[k - self.lo]
        return 0

    def boundary(self, k: int) -> IntMatrix:
        """The boundary C_k -> C_{k-1}, zero-padded outside the window."""
        t = k - self.lo - 1
        if 0 <= t < len(self.boundaries):
            return self.boundaries[t]
        return IntMatrix.zeros(self.rank(k - 1), self.rank(k))

    def total_rank(self) -> int:
        return sum(self.ranks)

    def euler_characteristic(self) -> int:
        return sum(
            (-1) ** k * self.rank(k) for k in self.degrees()
        )

    # -- homology --------------------------------------------------------

    @cached_property
    def _boundary_invariants(self) -> tuple:
        return tuple(snf_invariants(b) for b in self.boundaries)

    def _rank_of_boundary(self, k: int) -> int:
        t = k - self.lo - 1
        if 0 <= t < len(self.boundaries):
            return len(self._boundary_invariants[t])
        return 0

    def homology(self, k: int) -> HomologyGroup:
        n = self.rank(k)
        free = n - self._rank_of_boundary(k) - self._rank_of_boundary(k + 1)
        t_in = k + 1 - self.lo - 1
        if 0 <= t_in < len(self.boundaries):
            torsion = tuple(
                d for d in self._boundary_invariants[t_in] if d > 1
            )
        else:
            torsion = ()
        return HomologyGroup(free, torsion)

    def homology_all(self) -> dict:
        return {k: self.homology(k) for k in self.degrees()}

    def homology_presentation(self, k: int) -> Subquotient:
        cycles = kernel_basis(self.boundary(k))
        return subquotient_presentation(cycles, self.boundary(k + 1))

    # -- constructions ----------------------------------------------------

    def shift(self, j: int) -> "ChainComplexInt":
        """Reindex degrees by +j.  Boundaries are reused without signs."""
        return ChainComplexInt(self.lo + j, self.ranks, self.boundaries)

    def direct_sum(self, other: "ChainComplexInt") -> "ChainComplexInt":
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        ranks = tuple(
            self.rank(k) + other.rank(k) for k in range(lo, hi + 1)
        )
        bnds = []
        for k in range(lo + 1, hi + 1):
            blocks = {}
            a, b = self.boundary(k), other.boundary(k)
            if not a.is_zero:
                blocks[(0, 0)] = a
            if not b.is_zero:
                blocks[(1, 1)] = b
            bnds.append(IntMatrix.from_blocks(
                [self.rank(k - 1), other.rank(k - 1)],
                [self.rank(k), other.rank(k)],
                blocks,
            ))
        return ChainComplexInt(lo, ranks, tuple(bnds))

    # -- serialization -----------------------------------------------------

    def to_data(self):
        return {
            "lo": self.lo,
            "ranks": list(self.ranks),
            "boundaries": [b.to_rows() for b in self.boundaries],
        }

    @classmethod
    def from_data(cls, data) -> "ChainComplexInt":
        try:
            lo = data["lo"]
            ranks = tuple(data["ranks"])
            raw = data["boundaries"]
        except (TypeError, KeyError) as exc:
            raise InputError(f"chain complex data missing field: {exc}")
        if len(raw) != max(len(ranks) - 1, 0):
            raise InputError("wrong number of boundary matrices")
        bnds = []
        for t, rows in enumerate(raw):
            bnds.append(IntMatrix.from_rows(rows, ncols=ranks[t + 1]))
            if bnds[-1].nrows != ranks[t]:
                raise InputError("boundary row count disagrees with ranks")
        return cls(lo, ranks, tuple(bnds))


@dataclass(frozen=True)
class ChainMap:
    """Degreewise map of complexes commuting with the boundaries."""

    src: ChainComplexInt
    dst: ChainComplexInt
    comps: tuple  # sorted ((degree, IntMatrix), ...), zero components absent

    def __post_init__(self):
        seen = set()
        for k, m in self.comps:
            if k in seen:
                raise InputError(f"duplicate component in degree {k}")
            seen.add(k)
            if m.shape != (self.dst.rank(k), self.src.rank(k)):
                raise InputError(
                    f"component in degree {k} has shape {m.shape}, expected "
                    f"({self.dst.rank(k)}, {self.src.rank(k)})"
                )
            if m.is_zero:
                raise InputError("zero components must be omitted")
        lo = min(self.src.lo, self.dst.lo)
        hi = max(self.src.hi, self.dst.hi)
        for k in range(lo, hi + 1):
            lhs = self.dst.boundary(k) @ self.component(k)
            rhs = self.component(k - 1) @ self.src.boundary(k)
            if lhs != rhs:
                raise InvariantError(
                    f"boundaries do not commute with the map in degree {k}"
                )

    def component(self, k: int) -> IntMatrix:
        for d, m in self.comps:
            if d == k:
                return m
        return IntMatrix.zeros(self.dst.rank(k), self.src.rank(k))

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def compose(self, other: "ChainMap") -> "ChainMap":
        if other.dst != self.src:
            raise InputError("composition through different complexes")
        degs = {k for k, _ in self.comps} & {k for k, _ in other.comps}
        mats = {k: self.component(k) @ other.component(k) for k in degs}
        return chain_map(other.src, self.dst, mats)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        if (other.src, other.dst) != (self.src, self.dst):
            raise InputError("sum of maps between different complexes")
        degs = {k for k, _ in self.comps} | {k for k, _ in other.comps}
        mats = {k: self.component(k) + other.component(k) for k in degs}
        return chain_map(self.src, self.dst, mats)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.src, self.dst,
                        tuple((k, -m) for k, m in self.comps))

    def shift(self, j: int) -> "ChainMap":
        return ChainMap(self.src.shift(j), self.dst.shift(j),
                        tuple((k + j, m) for k, m in self.comps))

    def induced_on_homology(self, k: int):
        """GroupHom on degree-k homology presentations."""
        src_pres = self.src.homology_presentation(k)
        dst_pres = self.dst.homology_presentation(k)
        return induced_hom(src_pres, dst_pres, self.component(k))

    def induces_iso_everywhere(self) -> bool:
        degs = set(self.src.degrees()) | set(self.dst.degrees())
        return all(self.induced_on_homology(k).is_iso() for k in sorted(degs))


def chain_map(src: ChainComplexInt, dst: ChainComplexInt,
              mats: dict) -> ChainMap:
    comps = tuple(sorted(
        (k, m) for k, m in mats.items() if not m.is_zero
    ))
    return ChainMap(src, dst, comps)


def identity_chain_map(c: ChainComplexInt) -> ChainMap:
    mats = {
        k: IntMatrix.identity(c.rank(k))
        for k in c.degrees() if c.rank(k)
    }
    return chain_map(c, c, mats)
