"""Finite simplicial complexes with a canonical vertex order.

Vertex labels may be integers, strings, or (nested) tuples of those; the
mixed-type total order of ``label_key`` makes every construction
deterministic, including barycentric subdivisions whose vertices are
simplices of the original complex.

A complex is stored by its facets.  Chain complexes use the sorted list of
k-simplices as the degree-k basis and the alternating-sum boundary on
key-sorted vertex tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .abelian import HomologyGroup
from .chains import ChainComplexInt
from .errors import InputError
from .intlinalg import IntMatrix

__all__ = [
    "label_key",
    "SimplicialComplex",
    "complex_from_facets",
    "complex_from_simplices",
    "skeleton",
    "barycentric_subdivision",
    "unreduced_suspension",
    "chain_complex",
    "reduced_homology",
    "WedgeSignature",
    "wedge_signature",
    "euler_characteristic",
    "complex_to_data",
    "complex_from_data",
]


def label_key(v):
    """Sort key giving a total order across all allowed label types."""
    if isinstance(v, bool):
        raise InputError("booleans are not allowed as vertex labels")
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(label_key(x) for x in v))
    raise InputError(f"unsupported vertex label {v!r}")


def _facet_key(f):
    return tuple(label_key(v) for v in f)


@dataclass(frozen=True)
class SimplicialComplex:
    """Facet list in canonical form, optionally pointed.

    Facets are key-sorted tuples, listed in key order, mutually
    incomparable under containment.  Use ``complex_from_facets`` to build
    one from raw data; the constructor itself insists on canonical input.
    The empty complex (no facets) is allowed.
    """

    facets: tuple
    basepoint: object = None

    def __post_init__(self):
        prev = None
        sets = []
        for f in self.facets:
            if not isinstance(f, tuple) or not f:
                raise InputError("facets must be nonempty tuples")
            key = _facet_key(f)
            if list(key) != sorted(key):
                raise InputError(f"facet {f!r} is not in canonical order")
            if len(set(f)) != len(f):
                raise InputError(f"facet {f!r} repeats a vertex")
            if prev is not None and prev >= key:
                raise InputError("facet list is not sorted, or repeats")
            prev = key
            sets.append(frozenset(f))
        # containment can only pair facets of different sizes
        by_size = {}
        for s in sets:
            by_size.setdefault(len(s), []).append(s)
        for small_size, smalls in by_size.items():
            for big_size, bigs in by_size.items():
                if big_size <= small_size:
                    continue
                for s in smalls:
                    for b in bigs:
                        if s <= b:
                            raise InputError(
                                "facet contained in another facet"
                            )
        if self.basepoint is not None:
            verts = set()
            for f in self.facets:
                verts.update(f)
            if self.basepoint not in verts:
                raise InputError("basepoint is not a vertex")

    @cached_property
    def simplices_by_dim(self) -> dict:
        seen = set()
        by_dim: dict = {}
        for f in self.facets:
            for k in range(1, len(f) + 1):
                for s in itertools.combinations(f, k):
                    if s not in seen:
                        seen.add(s)
                        by_dim.setdefault(k - 1, []).append(s)
        return {
            d: tuple(sorted(lst, key=_facet_key))
            for d, lst in by_dim.items()
        }

    @property
    def dimension(self) -> int:
        """Top simplex dimension; -1 for the empty complex."""
        return max(self.simplices_by_dim, default=-1)

    def vertices(self) -> tuple:
        return tuple(v for (v,) in self.simplices_by_dim.get(0, ()))

    def simplex_count(self, d: int) -> int:
        return len(self.simplices_by_dim.get(d, ()))

    @property
    def is_empty(self) -> bool:
        return not self.facets


def complex_from_facets(facets, basepoint=None) -> SimplicialComplex:
    """Canonicalize raw facets: sort, deduplicate, absorb contained ones.

    A facet with a repeated vertex is an error, not something to clean up.
    """
    canon = []
    for f in facets:
        f = list(f)
        if not f:
            raise InputError("empty facet")
        sf = tuple(sorted(f, key=label_key))
        if len(set(sf)) != len(sf):
            raise InputError(f"facet {f!r} repeats a vertex")
        canon.append(sf)
    canon = sorted(set(canon), key=_facet_key)
    by_size: dict = {}
    for f in canon:
        by_size.setdefault(len(f), []).append(frozenset(f))
    bigger = sorted(by_size, reverse=True)
    keep = []
    for f in canon:
        s = frozenset(f)
        absorbed = False
        for sz in bigger:
            if sz <= len(f):
                break
            if any(s <= t for t in by_size[sz]):
                absorbed = True
                break
        if not absorbed:
            keep.append(f)
    return SimplicialComplex(tuple(keep), basepoint)


def complex_from_simplices(simplices, basepoint=None) -> SimplicialComplex:
    return complex_from_facets(simplices, basepoint)


def skeleton(k: SimplicialComplex, r: int) -> SimplicialComplex:
    if r < 0:
        raise InputError("skeleton dimension must be nonnegative")
    if r >= k.dimension:
        return k
    facets = []
    for f in k.facets:
        if len(f) <= r + 1:
            facets.append(f)
        else:
            facets.extend(itertools.combinations(f, r + 1))
    return complex_from_facets(facets, k.basepoint)


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Vertices are simplices of k; facets are maximal inclusion chains."""
    facets = []
    for f in k.facets:
        for perm in itertools.permutations(f):
            chain = []
            for i in range(len(perm)):
                chain.append(tuple(sorted(perm[:i + 1], key=label_key)))
            facets.append(chain)
    base = (k.basepoint,) if k.basepoint is not None else None
    return complex_from_facets(facets, base)


def unreduced_suspension(k: SimplicialComplex, north=None,
                         south=None) -> SimplicialComplex:
    """Join with two fresh cone points; the north pole becomes the
    basepoint.  Pole labels are picked fresh unless given explicitly
    (diagrams of suspensions want the same poles everywhere).  Suspending
    the empty complex is refused rather than given a conventional value."""
    if k.is_empty:
        raise InputError("refusing to suspend an empty complex")
    verts = set(k.vertices())
    if north is None and south is None:
        north, south = "north", "south"
        while north in verts or south in verts:
            north += "_"
            south += "_"
    if north == south or north in verts or south in verts:
        raise InputError("pole labels must be fresh and distinct")
    facets = []
    for f in k.facets:
        facets.append(f + (north,))
        facets.append(f + (south,))
    return complex_from_facets(facets, basepoint=north)


def chain_complex(k: SimplicialComplex, reduced: bool = False) \
        -> ChainComplexInt:
    top = k.dimension
    if top < 0:
        if reduced:
            return ChainComplexInt(-1, (1, 0), (IntMatrix.zeros(1, 0),))
        return ChainComplexInt(0, (0,), ())
    by_dim = k.simplices_by_dim
    index = {
        d: {s: i for i, s in enumerate(simps)}
        for d, simps in by_dim.items()
    }
    ranks = tuple(len(by_dim[d]) for d in range(top + 1))
    bnds = []
    for d in range(1, top + 1):
        data = {}
        for j, s in enumerate(by_dim[d]):
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                data[(index[d - 1][face], j)] = -1 if i % 2 else 1
        bnds.append(IntMatrix.from_dict(ranks[d - 1], ranks[d], data))
    if not reduced:
        return ChainComplexInt(0, ranks, tuple(bnds))
    aug = IntMatrix.from_dict(1, ranks[0], {(0, j): 1 for j in range(ranks[0])})
    return ChainComplexInt(-1, (1,) + ranks, (aug,) + tuple(bnds))


def reduced_homology(k: SimplicialComplex) -> dict:
    return chain_complex(k, reduced=True).homology_all()


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum(
        (-1) ** d * len(simps) for d, simps in k.simplices_by_dim.items()
    )


@dataclass(frozen=True)
class WedgeSignature:
    """Reduced homology shape of a wedge of same-dimensional spheres.

    count == 0 encodes trivial reduced homology (a homology point); the
    sphere_dim slot is 0 by convention in that case.  This is a statement
    about integral homology only, never about homotopy type.
    """

    sphere_dim: int
    count: int

    @classmethod
    def contractible(cls) -> "WedgeSignature":
        return cls(0, 0)

    @property
    def is_contractible(self) -> bool:
        return self.count == 0

    def to_data(self):
        if self.count == 0:
            return {"contractible": True}
        return {"sphere_dim": self.sphere_dim, "count": self.count}


def wedge_signature(k: SimplicialComplex):
    """Signature if reduced homology is free and in one degree, else None.

    The empty complex has nonzero reduced homology in degree -1 and so has
    no signature.
    """
    groups = reduced_homology(k)
    nonzero = {d: h for d, h in groups.items() if not h.is_trivial}
    if not nonzero:
        return WedgeSignature.contractible()
    if len(nonzero) != 1:
        return None
    (d, h), = nonzero.items()
    if d < 0 or h.torsion:
        return None
    return WedgeSignature(d, h.rank)


def _label_to_data(v):
    if isinstance(v, tuple):
        return [_label_to_data(x) for x in v]
    return v


def _label_from_data(v):
    if isinstance(v, list):
        return tuple(_label_from_data(x) for x in v)
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise InputError(f"unsupported vertex label {v!r}")
    return v


def complex_to_data(k: SimplicialComplex):
    out = {"facets": [[_label_to_data(v) for v in f] for f in k.facets]}
    if k.basepoint is not None:
        out["basepoint"] = _label_to_data(k.basepoint)
    return out


def complex_from_data(data) -> SimplicialComplex:
    if not isinstance(data, dict) or "facets" not in data:
        raise InputError("complex data needs a 'facets' field")
    facets = [
        [_label_from_data(v) for v in f] for f in data["facets"]
    ]
    base = data.get("basepoint")
    if base is not None:
        base = _label_from_data(base)
    return complex_from_facets(facets, base)
