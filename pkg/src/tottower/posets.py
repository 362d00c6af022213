"""Finite posets, order complexes, and pointwise suspension diagrams.

The relation is kept as bitmasks: down[i] is the set of indices weakly
below element i.  That makes transitivity checks, slices and cover
computations cheap integer arithmetic even for a few hundred elements.

Two model families are built here.  Subset posets hold the nonempty
subsets of a finite set within a card range; subspace posets hold the
nonzero subspaces of F_q^n up to a dimension cap, each subspace named by
its reduced row echelon basis so equality is literal tuple equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, InvariantError, PreconditionError
from .simplicial import (
    SimplicialComplex,
    complex_from_facets,
    label_key,
    unreduced_suspension,
)

__all__ = [
    "FinPoset",
    "poset_from_relation",
    "full_subposet",
    "poset_dimension",
    "subset_poset",
    "subspace_poset",
    "gaussian_binomial",
    "PosetInclusion",
    "down_slice",
    "lan_point",
    "order_complex",
    "check_fence_condition",
    "DiagramOfComplexes",
    "t_functor",
]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FinPoset:
    """Partial order on a canonical tuple of elements.

    down[i] is the bitmask of indices j with elements[j] <= elements[i].
    The constructor verifies reflexivity, transitivity and antisymmetry,
    so holding a FinPoset is holding a proof that the relation is one.
    """

    elements: tuple
    down: tuple

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise InputError("duplicate poset elements")
        keys = [label_key(e) for e in self.elements]
        if keys != sorted(keys):
            raise InputError("elements are not in canonical order")
        if len(self.down) != n:
            raise InputError("one relation mask per element required")
        full = (1 << n) - 1
        for i, m in enumerate(self.down):
            if not isinstance(m, int) or m < 0 or m & ~full:
                raise InputError("relation mask out of range")
            if not (m >> i) & 1:
                raise InputError("relation must be reflexive")
        for i in range(n):
            mi = self.down[i]
            for j in _bits(mi):
                if self.down[j] & ~mi:
                    raise InputError("relation is not transitive")
                if i != j and (self.down[j] >> i) & 1:
                    raise InputError("relation has a cycle")

    def __len__(self):
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def _up(self) -> tuple:
        up = [0] * len(self.elements)
        for i, m in enumerate(self.down):
            for j in _bits(m):
                up[j] |= 1 << i
        return tuple(up)

    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise InputError(f"{v!r} is not a poset element") from None

    def leq(self, x, y) -> bool:
        return bool((self.down[self.index(y)] >> self.index(x)) & 1)

    @cached_property
    def covers(self) -> tuple:
        """Cover pairs (j, i) of indices: e_j covered by e_i."""
        out = []
        for i in range(len(self.elements)):
            strict_down = self.down[i] & ~(1 << i)
            for j in _bits(strict_down):
                strict_up_j = self._up[j] & ~(1 << j)
                if strict_down & strict_up_j == 0:
                    out.append((j, i))
        return tuple(out)

    def maximal_chains(self) -> tuple:
        """All maximal chains, each as an ascending tuple of elements."""
        n = len(self.elements)
        succ = [[] for _ in range(n)]
        for j, i in self.covers:
            succ[j].append(i)
        for lst in succ:
            lst.sort()
        minimal = [
            i for i in range(n) if self.down[i] == (1 << i)
        ]
        chains = []
        stack = [(i, [i]) for i in reversed(minimal)]
        while stack:
            i, path = stack.pop()
            if not succ[i]:
                chains.append(tuple(self.elements[t] for t in path))
                continue
            for nxt in reversed(succ[i]):
                stack.append((nxt, path + [nxt]))
        return tuple(chains)


def poset_from_relation(elements, leq=None, pairs=None) -> FinPoset:
    """Build a poset from a comparison callable or explicit pairs.

    The given relation is closed reflexively and transitively; a cycle
    among distinct elements is rejected.
    """
    elems = sorted(elements, key=label_key)
    if len(set(elems)) != len(elems):
        raise InputError("duplicate poset elements")
    n = len(elems)
    down = [1 << i for i in range(n)]
    if leq is not None:
        for i in range(n):
            for j in range(n):
                if i != j and leq(elems[j], elems[i]):
                    down[i] |= 1 << j
    if pairs is not None:
        pos = {e: i for i, e in enumerate(elems)}
        for a, b in pairs:
            if a not in pos or b not in pos:
                raise InputError(f"relation pair ({a!r}, {b!r}) off the set")
            down[pos[b]] |= 1 << pos[a]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = down[i]
            for j in _bits(acc):
                acc |= down[j]
            if acc != down[i]:
                down[i] = acc
                changed = True
    for i in range(n):
        for j in _bits(down[i]):
            if i != j and (down[j] >> i) & 1:
                raise InputError("relation has a cycle")
    return FinPoset(tuple(elems), tuple(down))


def full_subposet(p: FinPoset, selection) -> FinPoset:
    sel = sorted(set(selection), key=label_key)
    idx = [p.index(e) for e in sel]
    masks = []
    for a in idx:
        m = 0
        for t, b in enumerate(idx):
            if (p.down[a] >> b) & 1:
                m |= 1 << t
        masks.append(m)
    return FinPoset(tuple(sel), tuple(masks))


def poset_dimension(p: FinPoset) -> int:
    """Length of a longest chain, minus one."""
    if not p.elements:
        raise InputError("an empty poset has no dimension")
    n = len(p.elements)
    heights = [0] * n
    order = sorted(range(n), key=lambda i: p.down[i].bit_count())
    for i in order:
        best = 0
        for j in _bits(p.down[i] & ~(1 << i)):
            if heights[j] + 1 > best:
                best = heights[j] + 1
        heights[i] = best
    return max(heights)


def subset_poset(base, min_card: int = 1, max_card: int | None = None) \
        -> FinPoset:
    """Nonempty subsets of ``base`` with min_card <= size <= max_card,
    ordered by inclusion.  Subsets are key-sorted tuples."""
    items = sorted(base, key=label_key)
    if len(set(items)) != len(items):
        raise InputError("base set has repeated items")
    if not items:
        raise InputError("base set is empty")
    if max_card is None:
        max_card = len(items)
    max_card = min(max_card, len(items))
    if min_card < 1 or min_card > max_card:
        raise InputError("need 1 <= min_card <= max_card")
    elements = [
        c
        for k in range(min_card, max_card + 1)
        for c in itertools.combinations(items, k)
    ]
    return poset_from_relation(
        elements, leq=lambda a, b: set(a) <= set(b)
    )


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def gaussian_binomial(n: int, k: int, q: int) -> int:
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def _rref_matrices(n: int, k: int, q: int):
    for pivots in itertools.combinations(range(n), k):
        free = [
            (i, c)
            for i, p in enumerate(pivots)
            for c in range(p + 1, n)
            if c not in pivots
        ]
        for vals in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def _rowspace_leq(v, w, q: int) -> bool:
    # every row of v must reduce to zero against the echelon basis w
    piv = [next(i for i, x in enumerate(row) if x) for row in w]
    for row in v:
        r = list(row)
        for wr, p in zip(w, piv):
            c = r[p]
            if c:
                r = [(a - c * b) % q for a, b in zip(r, wr)]
        if any(r):
            return False
    return True


def subspace_poset(q: int, n: int, max_dim: int) -> FinPoset:
    """Nonzero subspaces of F_q^n of dimension <= max_dim, by inclusion.

    Each subspace is the tuple of rows of its reduced row echelon basis.
    The enumeration is cross-checked against the Gaussian binomials.
    """
    if not _is_prime(q):
        raise InputError("q must be prime")
    if n < 1:
        raise InputError("need n >= 1")
    if max_dim < 1:
        raise InputError("need max_dim >= 1")
    max_dim = min(max_dim, n)
    elements = []
    for k in range(1, max_dim + 1):
        level = list(_rref_matrices(n, k, q))
        expected = gaussian_binomial(n, k, q)
        if len(level) != len(set(level)) or len(level) != expected:
            raise InvariantError(
                f"echelon enumeration for dimension {k} found "
                f"{len(level)}, expected {expected}"
            )
        elements.extend(level)
    return poset_from_relation(
        elements, leq=lambda a, b: _rowspace_leq(a, b, q)
    )


@dataclass(frozen=True)
class PosetInclusion:
    """A full subposet sitting inside an ambient poset."""

    sub: FinPoset
    ambient: FinPoset

    def __post_init__(self):
        for x in self.sub.elements:
            self.ambient.index(x)
        for x in self.sub.elements:
            for y in self.sub.elements:
                if self.sub.leq(x, y) != self.ambient.leq(x, y):
                    raise InputError(
                        f"inclusion is not full at ({x!r}, {y!r})"
                    )

    def complement(self) -> tuple:
        inside = set(self.sub.elements)
        return tuple(e for e in self.ambient.elements if e not in inside)


def down_slice(incl: PosetInclusion, d) -> FinPoset:
    """Elements of the subposet lying weakly below d in the ambient."""
    picked = [
        c for c in incl.sub.elements if incl.ambient.leq(c, d)
    ]
    return full_subposet(incl.sub, picked)


def order_complex(p: FinPoset) -> SimplicialComplex:
    """Complex of chains; the empty poset gives the empty complex."""
    return complex_from_facets(p.maximal_chains())


def lan_point(incl: PosetInclusion, d) -> SimplicialComplex:
    return order_complex(down_slice(incl, d))


def check_fence_condition(incl: PosetInclusion):
    """The subposet must be downward closed in the ambient.

    Returns (ok, witnesses); each witness is a pair (x, c) with x outside
    the subposet strictly below c inside it.
    """
    inside = set(incl.sub.elements)
    witnesses = []
    for c in incl.sub.elements:
        ci = incl.ambient.index(c)
        for j in _bits(incl.ambient.down[ci] & ~(1 << ci)):
            x = incl.ambient.elements[j]
            if x not in inside:
                witnesses.append((x, c))
    return (not witnesses, witnesses)


@dataclass(eq=False)
class DiagramOfComplexes:
    """Complexes indexed by a poset with simplicial maps along covers."""

    poset: FinPoset
    values: dict
    vertex_maps: dict


def _check_simplicial(src: SimplicialComplex, dst: SimplicialComplex,
                      vmap: dict) -> None:
    dst_simplices = set()
    for simps in dst.simplices_by_dim.values():
        dst_simplices.update(simps)
    for f in src.facets:
        img = tuple(sorted({vmap[v] for v in f}, key=label_key))
        if img not in dst_simplices:
            raise InvariantError(
                f"facet {f!r} does not map to a simplex"
            )


def t_functor(incl: PosetInclusion) -> DiagramOfComplexes:
    """Pointwise unreduced suspension of the slice order complexes.

    Every ambient element d gets the suspension of the chain complex (as a
    space) of the slice below d; along a cover the map is the identity on
    slice elements and matches the poles up.  Slices must be nonempty for
    the suspension to make sense here.
    """
    amb = incl.ambient
    slices = {}
    for d in amb.elements:
        sl = down_slice(incl, d)
        if not sl.elements:
            raise PreconditionError(
                f"slice under {d!r} is empty; cannot take its suspension"
            )
        slices[d] = sl
    used = set()
    for sl in slices.values():
        used.update(sl.elements)
    north, south = "north", "south"
    while north in used or south in used:
        north += "_"
        south += "_"
    values = {
        d: unreduced_suspension(order_complex(sl), north, south)
        for d, sl in slices.items()
    }
    vmaps = {}
    for j, i in amb.covers:
        a, b = amb.elements[j], amb.elements[i]
        vmap = {v: v for v in slices[a].elements}
        vmap[north] = north
        vmap[south] = south
        _check_simplicial(values[a], values[b], vmap)
        vmaps[(a, b)] = vmap
    _check_diamonds(amb, vmaps)
    return DiagramOfComplexes(amb, values, vmaps)


def _check_diamonds(p: FinPoset, vmaps: dict) -> None:
    # composites along any two cover paths through a diamond must agree
    up_covers: dict = {}
    for j, i in p.covers:
        up_covers.setdefault(j, []).append(i)
    for a, mids in up_covers.items():
        for b, c in itertools.combinations(mids, 2):
            tops = set(up_covers.get(b, ())) & set(up_covers.get(c, ()))
            for d in tops:
                ea, eb, ec, ed = (p.elements[t] for t in (a, b, c, d))
                left = {
                    v: vmaps[(eb, ed)][w]
                    for v, w in vmaps[(ea, eb)].items()
                }
                right = {
                    v: vmaps[(ec, ed)][w]
                    for v, w in vmaps[(ea, ec)].items()
                }
                if left != right:
                    raise InvariantError(
                        "suspension diagram fails to commute"
                    )
