"""Truncated cosimplicial objects in integer chain complexes.

A ``CosimplicialChain`` holds levels X^0..X^M together with coface and
codegeneracy chain maps subject to the cosimplicial identities.  From it
we extract:

* the conormalization N^s = intersection of ker(s^i), a canonical
  sublattice per degree (Hermite basis, so the same subgroup always gets
  the same matrix) with the alternating coface sum as differential;
* matching objects M^m as compatible-tuple kernels, with the canonical
  comparison map out of X^{m+1};
* partial totalizations Tot_n and tower fibers, assembled from stripe
  windows: tot degree k takes (N^s)_{k+s}, the internal boundary is
  weighted by (-1)^s, the conormalized coface sum crosses stripes
  unsigned.

Stripe windows read nothing outside their own levels, which is what
makes the fiber of Tot_m -> Tot_n depend only on cosimplicial degrees
n+1..m, entry for entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import (
    ChainComplexInt,
    ChainMap,
    chain_map,
    identity_chain_map,
)
from .errors import InputError, InvariantError, PreconditionError
from .intlinalg import IntMatrix, kernel_basis, lattice_basis, solve_matrix

__all__ = [
    "CosimplicialChain",
    "cosimplicial_from_maps",
    "validate_cosimplicial",
    "Conormalization",
    "conormalize",
    "MatchingObject",
    "matching_object",
    "matching_kernel_agrees",
    "tot_n",
    "TotTower",
    "tower",
    "tower_fiber",
    "shift_object",
    "shift_check",
    "CosimplicialMap",
    "cosimplicial_map",
    "quasi_iso_invariance",
    "cosimplicial_to_data",
    "cosimplicial_from_data",
]


@dataclass(frozen=True)
class CosimplicialChain:
    """Levels X^0..X^M with cofaces and codegeneracies.

    cofaces[k] lists d^0..d^{k+1}: X^k -> X^{k+1};
    codegeneracies[k] lists s^0..s^k: X^{k+1} -> X^k.

    Entries are ChainMaps, so commuting with the boundaries is enforced
    at construction; the cosimplicial identities are checked separately
    by validate_cosimplicial.
    """

    levels: tuple
    cofaces: tuple
    codegeneracies: tuple

    def __post_init__(self):
        m = len(self.levels) - 1
        if m < 0:
            raise InputError("need at least one level")
        if len(self.cofaces) != m or len(self.codegeneracies) != m:
            raise InputError("map tables must cover levels 0..M-1")
        for k in range(m):
            if len(self.cofaces[k]) != k + 2:
                raise InputError(f"level {k} needs {k + 2} cofaces")
            if len(self.codegeneracies[k]) != k + 1:
                raise InputError(f"level {k + 1} needs {k + 1} codegeneracies")
            for i, d in enumerate(self.cofaces[k]):
                if d.src != self.levels[k] or d.dst != self.levels[k + 1]:
                    raise InputError(
                        f"coface {i} at level {k} connects wrong levels"
                    )
            for i, s in enumerate(self.codegeneracies[k]):
                if s.src != self.levels[k + 1] or s.dst != self.levels[k]:
                    raise InputError(
                        f"codegeneracy {i} at level {k + 1} connects "
                        f"wrong levels"
                    )

    @property
    def truncation(self) -> int:
        return len(self.levels) - 1

    def coface(self, k: int, i: int) -> ChainMap:
        """d^i out of level k (so 0 <= k <= M-1, 0 <= i <= k+1)."""
        return self.cofaces[k][i]

    def codegeneracy(self, k: int, i: int) -> ChainMap:
        """s^i out of level k (so 1 <= k <= M, 0 <= i <= k-1)."""
        return self.codegeneracies[k - 1][i]


def cosimplicial_from_maps(levels, coface_mats, codegeneracy_mats) \
        -> CosimplicialChain:
    """Build from per-map {degree: matrix} dictionaries."""
    levels = tuple(levels)
    m = len(levels) - 1
    if len(coface_mats) != m or len(codegeneracy_mats) != m:
        raise InputError("map tables must cover levels 0..M-1")
    cofaces = tuple(
        tuple(
            chain_map(levels[k], levels[k + 1], mats)
            for mats in coface_mats[k]
        )
        for k in range(m)
    )
    codegeneracies = tuple(
        tuple(
            chain_map(levels[k + 1], levels[k], mats)
            for mats in codegeneracy_mats[k]
        )
        for k in range(m)
    )
    return CosimplicialChain(levels, cofaces, codegeneracies)


def validate_cosimplicial(x: CosimplicialChain):
    """Check every cosimplicial identity by matrix multiplication.

    Returns (ok, violations); each violation names the identity and the
    level it fails at.  Chain-map commuting is already enforced by the
    ChainMap constructor, so only the simplicial relations are at stake.
    """
    violations = []
    m = x.truncation
    for k in range(m - 1):
        for i in range(k + 2):
            for j in range(i + 1, k + 3):
                lhs = x.coface(k + 1, j).compose(x.coface(k, i))
                rhs = x.coface(k + 1, i).compose(x.coface(k, j - 1))
                if lhs != rhs:
                    violations.append(
                        f"d^{j} d^{i} != d^{i} d^{j - 1} out of level {k}"
                    )
    for k in range(2, m + 1):
        for i in range(k - 1):
            for j in range(i, k - 1):
                lhs = x.codegeneracy(k - 1, j).compose(x.codegeneracy(k, i))
                rhs = x.codegeneracy(k - 1, i).compose(
                    x.codegeneracy(k, j + 1)
                )
                if lhs != rhs:
                    violations.append(
                        f"s^{j} s^{i} != s^{i} s^{j + 1} out of level {k}"
                    )
    for k in range(m):
        ident = identity_chain_map(x.levels[k])
        for i in range(k + 2):
            for j in range(k + 1):
                lhs = x.codegeneracy(k + 1, j).compose(x.coface(k, i))
                if i == j or i == j + 1:
                    rhs = ident
                    label = f"s^{j} d^{i} != id at level {k}"
                elif i < j:
                    rhs = x.coface(k - 1, i).compose(x.codegeneracy(k, j - 1))
                    label = f"s^{j} d^{i} != d^{i} s^{j - 1} at level {k}"
                else:
                    rhs = x.coface(k - 1, i - 1).compose(x.codegeneracy(k, j))
                    label = f"s^{j} d^{i} != d^{i - 1} s^{j} at level {k}"
                if lhs != rhs:
                    violations.append(label)
    return (not violations), tuple(violations)


# -- conormalization ---------------------------------------------------------

def _level_delta(x: CosimplicialChain, s: int) -> ChainMap:
    """Alternating coface sum X^s -> X^{s+1}."""
    total = x.coface(s, 0)
    for i in range(1, s + 2):
        term = x.coface(s, i)
        total = total + (term if i % 2 == 0 else -term)
    return total


def _kernel_of_stack(mats, width: int) -> IntMatrix:
    """Canonical basis of the common kernel of the given matrices."""
    mats = list(mats)
    if not mats:
        return IntMatrix.identity(width)
    return lattice_basis(kernel_basis(IntMatrix.vstack(mats)))


@dataclass(frozen=True)
class Conormalization:
    """Pieces N^s with embeddings into X^s and the coface-sum
    differential between consecutive pieces."""

    pieces: tuple        # ChainComplexInt per s
    embeddings: tuple    # ChainMap N^s -> X^s
    deltas: tuple        # ChainMap N^s -> N^{s+1}

    @property
    def truncation(self) -> int:
        return len(self.pieces) - 1


def conormalize(x: CosimplicialChain) -> Conormalization:
    """Compute N^s = ker of all codegeneracies out of X^s, with the
    restricted boundary and the restricted alternating coface sum.

    Bases are Hermite-canonical per degree, so equal kernel lattices get
    equal coordinates and equal restricted matrices."""
    pieces = []
    embeddings = []
    bases = []
    for s, level in enumerate(x.levels):
        if s == 0:
            pieces.append(level)
            embeddings.append(identity_chain_map(level))
            bases.append({
                t: IntMatrix.identity(level.rank(t))
                for t in level.degrees()
            })
            continue
        basis = {
            t: _kernel_of_stack(
                (x.codegeneracy(s, i).component(t) for i in range(s)),
                level.rank(t),
            )
            for t in level.degrees()
        }
        ranks = tuple(basis[t].ncols for t in level.degrees())
        boundaries = tuple(
            solve_matrix(basis[t - 1], level.boundary(t) @ basis[t])
            for t in level.degrees() if t > level.lo
        )
        piece = ChainComplexInt(level.lo, ranks, boundaries)
        pieces.append(piece)
        embeddings.append(chain_map(piece, level, basis))
        bases.append(basis)
    deltas = []
    for s in range(x.truncation):
        delta = _level_delta(x, s)
        above = x.levels[s + 1]
        comps = {}
        for t in x.levels[s].degrees():
            restricted = delta.component(t) @ bases[s][t]
            if t not in above.degrees():
                if not restricted.is_zero:
                    raise InvariantError(
                        "coface sum leaves the target degree window"
                    )
                continue
            comps[t] = solve_matrix(bases[s + 1][t], restricted)
        deltas.append(chain_map(pieces[s], pieces[s + 1], comps))
    for s in range(len(deltas) - 1):
        if not deltas[s + 1].compose(deltas[s]).is_zero:
            raise InvariantError(
                f"conormalized coface sum fails to square to zero "
                f"at piece {s}"
            )
    return Conormalization(
        pieces=tuple(pieces),
        embeddings=tuple(embeddings),
        deltas=tuple(deltas),
    )


# -- matching objects --------------------------------------------------------

@dataclass(frozen=True)
class MatchingObject:
    """The compatible-tuple limit M^m with its canonical comparison.

    ``basis`` gives, per degree, the kernel lattice basis inside the
    (m+1)-fold product of X^m; ``canonical`` is X^{m+1} -> complex.
    """

    m: int
    complex: ChainComplexInt
    canonical: ChainMap
    basis: dict


def matching_object(x: CosimplicialChain, m: int) -> MatchingObject:
    """Limit of levels below m+1 over the collapse maps out of [m+1].

    Concretely: tuples (x_0 .. x_m) in X^m with s^j x_i = s^i x_{j+1}
    for 0 <= i <= j <= m-1; the canonical map sends x in X^{m+1} to
    (s^0 x, .., s^m x).  Its kernel is checked against the
    conormalization by matching_kernel_agrees.
    """
    if not 0 <= m <= x.truncation - 1:
        raise InputError("need 0 <= m <= truncation - 1")
    level = x.levels[m]
    copies = m + 1
    basis = {}
    for t in level.degrees():
        r = level.rank(t)
        s_mats = [
            x.codegeneracy(m, i).component(t) for i in range(m)
        ]
        rows = []
        for i in range(m):
            for j in range(i, m):
                rows.append(IntMatrix.from_blocks(
                    (s_mats[j].nrows,), (r,) * copies,
                    {(0, i): s_mats[j], (0, j + 1): -s_mats[i]},
                ))
        basis[t] = _kernel_of_stack(rows, copies * r)
    ranks = tuple(basis[t].ncols for t in level.degrees())
    boundaries = []
    for t in level.degrees():
        if t == level.lo:
            continue
        product_boundary = IntMatrix.from_blocks(
            (level.rank(t - 1),) * copies,
            (level.rank(t),) * copies,
            {(c, c): level.boundary(t) for c in range(copies)},
        )
        boundaries.append(
            solve_matrix(basis[t - 1], product_boundary @ basis[t])
        )
    match = ChainComplexInt(level.lo, ranks, tuple(boundaries))
    above = x.levels[m + 1]
    comps = {}
    for t in above.degrees():
        if t not in level.degrees():
            continue
        stacked = IntMatrix.vstack([
            x.codegeneracy(m + 1, i).component(t) for i in range(m + 1)
        ])
        comps[t] = solve_matrix(basis[t], stacked)
    canonical = chain_map(above, match, comps)
    return MatchingObject(m=m, complex=match, canonical=canonical,
                          basis=basis)


def matching_kernel_agrees(x: CosimplicialChain, m: int,
                           conorm: Conormalization | None = None) -> bool:
    """ker(X^{m+1} -> M^m) must be the conormalized piece N^{m+1}.

    Both sides are produced by independent routes (tuple constraints
    versus stacked codegeneracies) and both end Hermite-canonical, so
    agreement is literal matrix equality, degree by degree."""
    if conorm is None:
        conorm = conormalize(x)
    mo = matching_object(x, m)
    above = x.levels[m + 1]
    emb = conorm.embeddings[m + 1]
    for t in above.degrees():
        mine = lattice_basis(kernel_basis(mo.canonical.component(t)))
        expected = lattice_basis(emb.component(t))
        if mine != expected:
            return False
    return True


# -- totalization ------------------------------------------------------------

def _window_layout(conorm: Conormalization, a: int, b: int) -> dict:
    """Stripe layout of the window a < s <= b.

    Maps each tot degree k to [(s, rank of (N^s)_{k+s})] in ascending
    stripe order, covering every stripe at every degree of the union
    window (with zero ranks where a stripe is out of range)."""
    stripes = range(a + 1, b + 1)
    if not stripes:
        return {}
    lo = min(conorm.pieces[s].lo - s for s in stripes)
    hi = max(conorm.pieces[s].hi - s for s in stripes)
    return {
        k: [(s, conorm.pieces[s].rank(k + s)) for s in stripes]
        for k in range(lo, hi + 1)
    }


def _layout_offsets(layout: dict) -> dict:
    offsets = {}
    for k, blocks in layout.items():
        pos, table = 0, {}
        for s, r in blocks:
            table[s] = pos
            pos += r
        offsets[k] = table
    return offsets


def _window_boundary(conorm: Conormalization, b: int, layout: dict,
                     offsets: dict, k: int) -> IntMatrix:
    """Differential from tot degree k to k-1 within the window.

    Applies the stripe boundary with sign (-1)^s and the unsigned
    connecting map into the next stripe when that stripe is inside."""
    entries = {}
    for s, r in layout[k]:
        if not r:
            continue
        col0 = offsets[k][s]
        t = k + s
        block = conorm.pieces[s].boundary(t)
        row0 = offsets[k - 1][s]
        sign = -1 if s % 2 else 1
        for (i, j, v) in block.entries:
            entries[(row0 + i, col0 + j)] = sign * v
        if s + 1 <= b:
            block = conorm.deltas[s].component(t)
            row0 = offsets[k - 1][s + 1]
            for (i, j, v) in block.entries:
                entries[(row0 + i, col0 + j)] = v
    nrows = sum(r for _, r in layout[k - 1])
    ncols = sum(r for _, r in layout[k])
    return IntMatrix.from_dict(nrows, ncols, entries)


def _assemble_window(conorm: Conormalization, a: int, b: int) \
        -> ChainComplexInt:
    """Total complex of the stripes a < s <= b.

    Tot degree k collects (N^s)_{k+s}; the differential applies the
    stripe boundary with sign (-1)^s and the coface sum into the next
    stripe with no sign.  The square vanishes because the coface sum is
    itself a chain map and squares to zero."""
    if a == b:
        return ChainComplexInt(0, (0,), ())
    layout = _window_layout(conorm, a, b)
    offsets = _layout_offsets(layout)
    degs = sorted(layout)
    ranks = tuple(sum(r for _, r in layout[k]) for k in degs)
    live = [idx for idx, r in enumerate(ranks) if r]
    if not live:
        return ChainComplexInt(0, (0,), ())
    # zero-rank degrees at the ends carry nothing; drop them
    degs = degs[live[0]:live[-1] + 1]
    ranks = ranks[live[0]:live[-1] + 1]
    boundaries = tuple(
        _window_boundary(conorm, b, layout, offsets, k)
        for k in degs[1:]
    )
    return ChainComplexInt(degs[0], ranks, boundaries)


def tot_n(x: CosimplicialChain, n: int,
          conorm: Conormalization | None = None) -> ChainComplexInt:
    """Stage-n totalization: stripes 0..n of the conormalization.

    Stage 0 is the level X^0 itself, on the nose."""
    if not 0 <= n <= x.truncation:
        raise InputError("need 0 <= n <= truncation")
    if conorm is None:
        conorm = conormalize(x)
    return _assemble_window(conorm, -1, n)


def _projection_components(src_layout: dict, dst_layout: dict) -> dict:
    """Identity on shared stripes, zero on the rest, per tot degree."""
    comps = {}
    for k, blocks in src_layout.items():
        entries = {}
        dst_offsets = {}
        pos = 0
        for s, r in dst_layout.get(k, ()):
            dst_offsets[s] = pos
            pos += r
        pos = 0
        for s, r in blocks:
            if s in dst_offsets:
                for i in range(r):
                    entries[(dst_offsets[s] + i, pos + i)] = 1
            pos += r
        comps[k] = entries
    return comps


@dataclass(frozen=True)
class TotTower:
    """All stages with their coordinate projections (stage n maps onto
    stage n-1 by forgetting the s = n stripe)."""

    stages: tuple
    projections: tuple

    def stage(self, n: int) -> ChainComplexInt:
        return self.stages[n]

    def projection(self, n: int) -> ChainMap:
        """The map out of stage n, defined for n >= 1."""
        if not 1 <= n < len(self.stages):
            raise InputError("projections start at stage 1")
        return self.projections[n - 1]


def tower(x: CosimplicialChain,
          conorm: Conormalization | None = None) -> TotTower:
    if conorm is None:
        conorm = conormalize(x)
    stages = tuple(
        tot_n(x, n, conorm) for n in range(x.truncation + 1)
    )
    projections = []
    for n in range(1, x.truncation + 1):
        src, dst = stages[n], stages[n - 1]
        src_layout = _window_layout(conorm, -1, n)
        dst_layout = _window_layout(conorm, -1, n - 1)
        comps = _projection_components(src_layout, dst_layout)
        mats = {
            k: IntMatrix.from_dict(dst.rank(k), src.rank(k), comps[k])
            for k in src_layout
        }
        projections.append(chain_map(src, dst, mats))
    return TotTower(stages=stages, projections=tuple(projections))


def tower_fiber(x: CosimplicialChain, n: int, m: int,
                conorm: Conormalization | None = None) -> ChainComplexInt:
    """Kernel of the projection Tot_m -> Tot_n: stripes n < s <= m.

    Reads only conormalized pieces n+1..m, so the result is unchanged,
    entry for entry, under any modification of the object that leaves
    those pieces alone.  The fiber over equal stages is the zero
    complex."""
    if not 0 <= n <= m <= x.truncation:
        raise InputError("need 0 <= n <= m <= truncation")
    if conorm is None:
        conorm = conormalize(x)
    return _assemble_window(conorm, n, m)


# -- stable-shadow functoriality ---------------------------------------------

def shift_object(x: CosimplicialChain, j: int) -> CosimplicialChain:
    """Shift every level and every structure map by j degrees."""
    return CosimplicialChain(
        levels=tuple(level.shift(j) for level in x.levels),
        cofaces=tuple(
            tuple(d.shift(j) for d in row) for row in x.cofaces
        ),
        codegeneracies=tuple(
            tuple(s.shift(j) for s in row) for row in x.codegeneracies
        ),
    )


def _groups_match(left: dict, right: dict, offset: int = 0) -> bool:
    """left[k] == right[k - offset] as groups, trivial outside range."""
    degrees = set(left) | {k + offset for k in right}
    for k in degrees:
        a = left.get(k)
        b = right.get(k - offset)
        a_trivial = a is None or a.is_trivial
        b_trivial = b is None or b.is_trivial
        if a_trivial != b_trivial:
            return False
        if not a_trivial and (a.rank, a.torsion) != (b.rank, b.torsion):
            return False
    return True


def shift_check(x: CosimplicialChain, n: int, m: int, j: int) -> bool:
    """Does shifting the object shift the fiber's homology by j?"""
    shifted = tower_fiber(shift_object(x, j), n, m).homology_all()
    plain = tower_fiber(x, n, m).homology_all()
    return _groups_match(shifted, plain, offset=j)


@dataclass(frozen=True)
class CosimplicialMap:
    """Levelwise chain maps commuting with all structure maps."""

    src: CosimplicialChain
    dst: CosimplicialChain
    components: tuple

    def __post_init__(self):
        if self.src.truncation != self.dst.truncation:
            raise InputError("truncation mismatch")
        if len(self.components) != self.src.truncation + 1:
            raise InputError("need one component per level")
        for k, f in enumerate(self.components):
            if f.src != self.src.levels[k] or f.dst != self.dst.levels[k]:
                raise InputError(f"component {k} connects wrong levels")
        for k in range(self.src.truncation):
            for i in range(k + 2):
                lhs = self.components[k + 1].compose(self.src.coface(k, i))
                rhs = self.dst.coface(k, i).compose(self.components[k])
                if lhs != rhs:
                    raise InvariantError(
                        f"map fails naturality against d^{i} at level {k}"
                    )
            for i in range(k + 1):
                lhs = self.components[k].compose(
                    self.src.codegeneracy(k + 1, i)
                )
                rhs = self.dst.codegeneracy(k + 1, i).compose(
                    self.components[k + 1]
                )
                if lhs != rhs:
                    raise InvariantError(
                        f"map fails naturality against s^{i} at level {k + 1}"
                    )


def cosimplicial_map(x, y, components) -> CosimplicialMap:
    return CosimplicialMap(src=x, dst=y, components=tuple(components))


def _fiber_map(f: CosimplicialMap, n: int, m: int,
               conorm_src: Conormalization,
               conorm_dst: Conormalization) -> ChainMap:
    """Restrict a cosimplicial map to the stripes of a fiber window.

    Each level map carries the kernel of the codegeneracies into the
    same kernel on the other side, so solving through the embeddings is
    guaranteed to succeed."""
    fib_src = _assemble_window(conorm_src, n, m)
    fib_dst = _assemble_window(conorm_dst, n, m)
    src_layout = _window_layout(conorm_src, n, m)
    dst_layout = _window_layout(conorm_dst, n, m)
    dst_offsets = _layout_offsets(dst_layout)
    comps = {}
    for k in src_layout:
        entries = {}
        col = 0
        for s, r in src_layout[k]:
            if r and k in dst_offsets:
                t = k + s
                restricted = solve_matrix(
                    conorm_dst.embeddings[s].component(t),
                    f.components[s].component(t)
                    @ conorm_src.embeddings[s].component(t),
                )
                row0 = dst_offsets[k][s]
                for (i, j, v) in restricted.entries:
                    entries[(row0 + i, col + j)] = v
            col += r
        comps[k] = IntMatrix.from_dict(
            fib_dst.rank(k), fib_src.rank(k), entries
        )
    return chain_map(fib_src, fib_dst, comps)


def quasi_iso_invariance(f: CosimplicialMap) -> bool:
    """A levelwise quasi-isomorphism must induce isomorphisms on the
    homology of every tower fiber.  Raises PreconditionError when some
    level map is not a quasi-isomorphism; returns whether all induced
    fiber maps are isomorphisms on homology."""
    for k, comp in enumerate(f.components):
        if not comp.induces_iso_everywhere():
            raise PreconditionError(
                f"level {k} map is not a quasi-isomorphism"
            )
    conorm_src = conormalize(f.src)
    conorm_dst = conormalize(f.dst)
    top = f.src.truncation
    for n in range(top + 1):
        for m in range(n, top + 1):
            induced = _fiber_map(f, n, m, conorm_src, conorm_dst)
            if not induced.induces_iso_everywhere():
                return False
    return True


# -- serialization -----------------------------------------------------------

def _map_to_data(f: ChainMap) -> dict:
    return {str(k): mat.to_rows() for k, mat in f.comps}


def _map_from_data(src, dst, data) -> ChainMap:
    if not isinstance(data, dict):
        raise InputError("chain map data must be a degree table")
    mats = {}
    for key, rows in data.items():
        try:
            k = int(key)
        except (TypeError, ValueError):
            raise InputError(f"bad degree key {key!r}")
        mats[k] = IntMatrix.from_rows(rows, ncols=src.rank(k))
    return chain_map(src, dst, mats)


def cosimplicial_to_data(x: CosimplicialChain) -> dict:
    return {
        "truncation": x.truncation,
        "levels": [level.to_data() for level in x.levels],
        "cofaces": [
            [_map_to_data(d) for d in row] for row in x.cofaces
        ],
        "codegeneracies": [
            [_map_to_data(s) for s in row] for row in x.codegeneracies
        ],
    }


def cosimplicial_from_data(data) -> CosimplicialChain:
    try:
        levels = tuple(
            ChainComplexInt.from_data(d) for d in data["levels"]
        )
        raw_cofaces = data["cofaces"]
        raw_codegens = data["codegeneracies"]
    except (TypeError, KeyError) as exc:
        raise InputError(f"cosimplicial data missing field: {exc}")
    if data.get("truncation") != len(levels) - 1:
        raise InputError("truncation does not match level count")
    m = len(levels) - 1
    if len(raw_cofaces) != m or len(raw_codegens) != m:
        raise InputError("map tables must cover levels 0..M-1")
    cofaces = tuple(
        tuple(
            _map_from_data(levels[k], levels[k + 1], d)
            for d in raw_cofaces[k]
        )
        for k in range(m)
    )
    codegeneracies = tuple(
        tuple(
            _map_from_data(levels[k + 1], levels[k], d)
            for d in raw_codegens[k]
        )
        for k in range(m)
    )
    return CosimplicialChain(levels, cofaces, codegeneracies)
