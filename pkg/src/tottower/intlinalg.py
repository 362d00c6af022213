"""Sparse exact linear algebra over the integers.

Everything downstream (homology, conormalizations, spectral sequence pages)
reduces to the routines here.  All arithmetic uses Python's unbounded ints;
there is no floating point and no modular shortcut anywhere in the package.

The Smith reduction follows one fixed pivot rule so that every run is
reproducible down to the unimodular transforms: among all eligible entries
of the working matrix, pick the one minimizing (|value|, row, column).
Clearing a pivot's row and column can leave remainders; when that happens
the rule is simply applied again, and termination follows because the
minimal absolute value strictly drops on every such retry.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, InvariantError

__all__ = [
    "IntMatrix",
    "SNFResult",
    "xgcd",
    "smith_normal_form",
    "snf_invariants",
    "matrix_rank",
    "kernel_basis",
    "solve_matrix",
    "lattice_basis",
    "quotient_invariants",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


@dataclass(frozen=True, repr=False)
class IntMatrix:
    """Immutable sparse integer matrix.

    ``entries`` holds (row, col, value) triples, values nonzero, sorted
    row-major with no duplicates.  Equality and hashing are structural, so
    two matrices are equal exactly when they have the same shape and the
    same entries.  Zero-row and zero-column shapes are legal; they show up
    constantly at the ends of chain complexes.
    """

    nrows: int
    ncols: int
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not _is_int(self.nrows) or not _is_int(self.ncols):
            raise InputError("matrix dimensions must be integers")
        if self.nrows < 0 or self.ncols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        prev = None
        for item in self.entries:
            if len(item) != 3:
                raise InputError(f"bad matrix entry {item!r}")
            i, j, v = item
            if not (_is_int(i) and _is_int(j) and _is_int(v)):
                raise InputError(f"bad matrix entry {item!r}")
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise InputError(
                    f"entry {item!r} out of range for "
                    f"{self.nrows}x{self.ncols} matrix"
                )
            if v == 0:
                raise InputError("explicit zero entries are not allowed")
            if prev is not None and prev >= (i, j):
                raise InputError("entries must be sorted row-major, no duplicates")
            prev = (i, j)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_dict(cls, nrows: int, ncols: int, data) -> "IntMatrix":
        ent = tuple(
            (i, j, v) for (i, j), v in sorted(data.items()) if v != 0
        )
        return cls(nrows, ncols, ent)

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise InputError("cannot infer column count from zero rows")
            ncols = len(rows[0])
        data = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise InputError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    data[(i, j)] = v
        return cls.from_dict(len(rows), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(nrows, ncols, ())

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple((i, i, 1) for i in range(n)))

    @classmethod
    def hstack(cls, mats) -> "IntMatrix":
        mats = list(mats)
        if not mats:
            raise InputError("hstack of nothing")
        nrows = mats[0].nrows
        data = {}
        off = 0
        for m in mats:
            if m.nrows != nrows:
                raise InputError("hstack with mismatched row counts")
            for i, j, v in m.entries:
                data[(i, off + j)] = v
            off += m.ncols
        return cls.from_dict(nrows, off, data)

    @classmethod
    def vstack(cls, mats) -> "IntMatrix":
        mats = list(mats)
        if not mats:
            raise InputError("vstack of nothing")
        ncols = mats[0].ncols
        data = {}
        off = 0
        for m in mats:
            if m.ncols != ncols:
                raise InputError("vstack with mismatched column counts")
            for i, j, v in m.entries:
                data[(off + i, j)] = v
            off += m.nrows
        return cls.from_dict(off, ncols, data)

    @classmethod
    def from_blocks(cls, row_sizes, col_sizes, blocks) -> "IntMatrix":
        """Assemble from a block grid.

        ``blocks`` maps (block_row, block_col) to an IntMatrix of shape
        (row_sizes[block_row], col_sizes[block_col]); absent blocks are
        zero.
        """
        row_sizes = list(row_sizes)
        col_sizes = list(col_sizes)
        row_off = [0]
        for s in row_sizes:
            row_off.append(row_off[-1] + s)
        col_off = [0]
        for s in col_sizes:
            col_off.append(col_off[-1] + s)
        data = {}
        for (bi, bj), m in blocks.items():
            if not (0 <= bi < len(row_sizes) and 0 <= bj < len(col_sizes)):
                raise InputError(f"block index ({bi}, {bj}) out of range")
            if m.shape != (row_sizes[bi], col_sizes[bj]):
                raise InputError(
                    f"block ({bi}, {bj}) has shape {m.shape}, "
                    f"expected ({row_sizes[bi]}, {col_sizes[bj]})"
                )
            ro, co = row_off[bi], col_off[bj]
            for i, j, v in m.entries:
                data[(ro + i, co + j)] = v
        return cls.from_dict(row_off[-1], col_off[-1], data)

    # -- cached views --------------------------------------------------

    @cached_property
    def _cells(self) -> dict:
        return {(i, j): v for i, j, v in self.entries}

    @cached_property
    def _row_items(self) -> tuple:
        acc = [[] for _ in range(self.nrows)]
        for i, j, v in self.entries:
            acc[i].append((j, v))
        return tuple(tuple(r) for r in acc)

    # -- queries -------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise InputError(f"index ({i}, {j}) out of range")
        return self._cells.get((i, j), 0)

    def row_dict(self, i: int) -> dict:
        return dict(self._row_items[i])

    def to_rows(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def __repr__(self):
        return f"<IntMatrix {self.nrows}x{self.ncols}, {len(self.entries)} nz>"

    # -- algebra ---------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_dict(
            self.ncols, self.nrows, {(j, i): v for i, j, v in self.entries}
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(
            self.nrows, self.ncols,
            tuple((i, j, -v) for i, j, v in self.entries),
        )

    def scale(self, c: int) -> "IntMatrix":
        if not _is_int(c):
            raise InputError("scalar must be an integer")
        if c == 0:
            return IntMatrix.zeros(self.nrows, self.ncols)
        return IntMatrix(
            self.nrows, self.ncols,
            tuple((i, j, c * v) for i, j, v in self.entries),
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise InputError("shape mismatch in matrix sum")
        data = dict(self._cells)
        for i, j, v in other.entries:
            data[(i, j)] = data.get((i, j), 0) + v
        return IntMatrix.from_dict(self.nrows, self.ncols, data)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise InputError(
                f"cannot multiply {self.nrows}x{self.ncols} "
                f"by {other.nrows}x{other.ncols}"
            )
        orows = other._row_items
        acc: dict = {}
        for i, k, v in self.entries:
            for j, w in orows[k]:
                key = (i, j)
                acc[key] = acc.get(key, 0) + v * w
        return IntMatrix.from_dict(self.nrows, other.ncols, acc)

    def take_rows(self, indices) -> "IntMatrix":
        idx = list(indices)
        pos: dict = {}
        for p, i in enumerate(idx):
            if not (0 <= i < self.nrows):
                raise InputError(f"row index {i} out of range")
            pos.setdefault(i, []).append(p)
        data = {}
        for i, j, v in self.entries:
            for p in pos.get(i, ()):
                data[(p, j)] = v
        return IntMatrix.from_dict(len(idx), self.ncols, data)

    def take_columns(self, indices) -> "IntMatrix":
        idx = list(indices)
        pos: dict = {}
        for p, j in enumerate(idx):
            if not (0 <= j < self.ncols):
                raise InputError(f"column index {j} out of range")
            pos.setdefault(j, []).append(p)
        data = {}
        for i, j, v in self.entries:
            for p in pos.get(j, ()):
                data[(i, p)] = v
        return IntMatrix.from_dict(self.nrows, len(idx), data)


def _symquo(b: int, v: int) -> int:
    # Quotient q with |b - q*v| <= |v| / 2.
    q, r = divmod(b, v)
    if 2 * abs(r) > abs(v):
        q += 1
    return q


def _dict_add(dst: dict, src: dict, c: int) -> None:
    for k, w in src.items():
        nv = dst.get(k, 0) + c * w
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


class _Smith:
    """Working state of a Smith reduction.

    The matrix lives in ``rows`` (dict of row dicts) with a column
    occupancy index in ``cols``.  ``heap`` is a lazy min-heap of
    (|value|, row, col) candidates; every write pushes a fresh entry and
    pops skip anything stale, so the top valid entry is always the true
    minimum under the pivot rule.
    """

    def __init__(self, mat: IntMatrix, transforms: bool):
        self.m = mat.nrows
        self.n = mat.ncols
        self.track = transforms
        self.rows = {i: {} for i in range(self.m)}
        self.cols = {j: set() for j in range(self.n)}
        self.heap = []
        for i, j, v in mat.entries:
            self.rows[i][j] = v
            self.cols[j].add(i)
            self.heap.append((abs(v), i, j))
        heapq.heapify(self.heap)
        self.done_rows = set()
        self.done_cols = set()
        if transforms:
            self.u_rows = {i: {i: 1} for i in range(self.m)}
            self.uinv_cols = {i: {i: 1} for i in range(self.m)}
            self.v_cols = {j: {j: 1} for j in range(self.n)}

    # -- elementary operations, applied to the matrix and transforms ----

    def _set(self, i: int, j: int, v: int) -> None:
        row = self.rows[i]
        if v:
            row[j] = v
            self.cols[j].add(i)
            heapq.heappush(self.heap, (abs(v), i, j))
        elif j in row:
            del row[j]
            self.cols[j].discard(i)

    def _row_add(self, i: int, k: int, c: int) -> None:
        # r_i += c * r_k
        if not c:
            return
        row_i = self.rows[i]
        for j, w in list(self.rows[k].items()):
            self._set(i, j, row_i.get(j, 0) + c * w)
        if self.track:
            _dict_add(self.u_rows[i], self.u_rows[k], c)
            _dict_add(self.uinv_cols[k], self.uinv_cols[i], -c)

    def _col_add(self, j: int, l: int, c: int) -> None:
        # c_j += c * c_l
        if not c:
            return
        for i in list(self.cols[l]):
            self._set(i, j, self.rows[i].get(j, 0) + c * self.rows[i][l])
        if self.track:
            _dict_add(self.v_cols[j], self.v_cols[l], c)

    def _row_negate(self, i: int) -> None:
        row = self.rows[i]
        for j in row:
            row[j] = -row[j]
        if self.track:
            u = self.u_rows[i]
            for j in u:
                u[j] = -u[j]
            col = self.uinv_cols[i]
            for k in col:
                col[k] = -col[k]

    def _row_swap(self, i: int, k: int) -> None:
        # Only used after elimination; heap staleness does not matter then.
        if i == k:
            return
        ri, rk = self.rows[i], self.rows[k]
        for j in ri.keys() | rk.keys():
            in_i, in_k = j in ri, j in rk
            if in_i and not in_k:
                self.cols[j].discard(i)
                self.cols[j].add(k)
            elif in_k and not in_i:
                self.cols[j].discard(k)
                self.cols[j].add(i)
        self.rows[i], self.rows[k] = rk, ri
        if self.track:
            self.u_rows[i], self.u_rows[k] = self.u_rows[k], self.u_rows[i]
            self.uinv_cols[i], self.uinv_cols[k] = (
                self.uinv_cols[k], self.uinv_cols[i],
            )

    def _col_swap(self, j: int, l: int) -> None:
        if j == l:
            return
        for i in self.cols[j] | self.cols[l]:
            row = self.rows[i]
            a = row.pop(j, None)
            b = row.pop(l, None)
            if b is not None:
                row[j] = b
            if a is not None:
                row[l] = a
        self.cols[j], self.cols[l] = self.cols[l], self.cols[j]
        if self.track:
            self.v_cols[j], self.v_cols[l] = self.v_cols[l], self.v_cols[j]

    def _col_pair(self, j1: int, j2: int, x: int, y: int, z: int, w: int) -> None:
        # (c_j1, c_j2) <- (x c_j1 + y c_j2, z c_j1 + w c_j2), det x*w - y*z = ±1
        for i in list(self.cols[j1] | self.cols[j2]):
            row = self.rows[i]
            a = row.get(j1, 0)
            b = row.get(j2, 0)
            self._set(i, j1, x * a + y * b)
            self._set(i, j2, z * a + w * b)
        if self.track:
            vj1, vj2 = self.v_cols[j1], self.v_cols[j2]
            new1: dict = {}
            new2: dict = {}
            for k in vj1.keys() | vj2.keys():
                p, q = vj1.get(k, 0), vj2.get(k, 0)
                n1, n2 = x * p + y * q, z * p + w * q
                if n1:
                    new1[k] = n1
                if n2:
                    new2[k] = n2
            self.v_cols[j1], self.v_cols[j2] = new1, new2

    # -- phases -----------------------------------------------------------

    def eliminate(self) -> list:
        """Extract pivots until no live entry remains.

        Returns the pivot sites as (row, col) in selection order.  A site
        is committed only once its row and column are fully cleared; if a
        clearing pass leaves remainders, those are strictly smaller in
        absolute value and the pivot rule is re-applied.
        """
        order = []
        heap = self.heap
        while heap:
            a, i, j = heapq.heappop(heap)
            if i in self.done_rows or j in self.done_cols:
                continue
            v = self.rows[i].get(j, 0)
            if v == 0 or abs(v) != a:
                continue  # stale heap entry
            if not self._isolate(i, j):
                heapq.heappush(heap, (abs(self.rows[i][j]), i, j))
                continue
            if self.rows[i][j] < 0:
                self._row_negate(i)
            self.done_rows.add(i)
            self.done_cols.add(j)
            order.append((i, j))
        return order

    def _isolate(self, i: int, j: int) -> bool:
        v = self.rows[i][j]
        for k in list(self.cols[j]):
            if k == i:
                continue
            self._row_add(k, i, -_symquo(self.rows[k][j], v))
        if len(self.cols[j]) > 1:
            return False  # remainder beat the pivot; reselect
        for l in list(self.rows[i].keys()):
            if l == j:
                continue
            self._col_add(l, j, -_symquo(self.rows[i][l], v))
        return len(self.rows[i]) == 1

    def fix_divisibility(self, order: list) -> None:
        """Bubble adjacent pivot pairs (a, b) with a not dividing b into
        (gcd, a*b/gcd) by genuine unimodular row and column operations, so
        the tracked transforms stay exact."""
        changed = True
        while changed:
            changed = False
            for t in range(len(order) - 1):
                i1, j1 = order[t]
                i2, j2 = order[t + 1]
                a = self.rows[i1][j1]
                b = self.rows[i2][j2]
                if b % a == 0:
                    continue
                g, x, y = xgcd(a, b)
                self._row_add(i1, i2, 1)
                self._col_pair(j1, j2, x, y, -(b // g), a // g)
                self._row_add(i2, i1, -(y * (b // g)))
                changed = True

    def place(self, order: list) -> None:
        # Move pivot t to position (t, t) by swaps.
        pos = list(order)
        for t in range(len(pos)):
            i, j = pos[t]
            if i != t:
                self._row_swap(i, t)
                for u in range(t + 1, len(pos)):
                    if pos[u][0] == t:
                        pos[u] = (i, pos[u][1])
                        break
            if j != t:
                self._col_swap(j, t)
                for u in range(t + 1, len(pos)):
                    if pos[u][1] == t:
                        pos[u] = (pos[u][0], j)
                        break
            pos[t] = (t, t)

    # -- exports -----------------------------------------------------------

    def u_matrix(self) -> IntMatrix:
        data = {}
        for i, row in self.u_rows.items():
            for j, v in row.items():
                data[(i, j)] = v
        return IntMatrix.from_dict(self.m, self.m, data)

    def uinv_matrix(self) -> IntMatrix:
        data = {}
        for j, col in self.uinv_cols.items():
            for i, v in col.items():
                data[(i, j)] = v
        return IntMatrix.from_dict(self.m, self.m, data)

    def v_matrix(self) -> IntMatrix:
        data = {}
        for j, col in self.v_cols.items():
            for i, v in col.items():
                data[(i, j)] = v
        return IntMatrix.from_dict(self.n, self.n, data)


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form of an integer matrix.

    ``invariants`` lists the diagonal d_1 | d_2 | ... | d_r, all positive.
    With transforms, u @ a @ v == diagonal() and u_inv is the exact inverse
    of u.  ``pivot_sites`` records where each pivot was selected in the
    original coordinates, in selection order; the value finally living at
    site t (after divisibility fixes) is invariants[t].
    """

    nrows: int
    ncols: int
    invariants: tuple
    pivot_sites: tuple
    u: IntMatrix | None = None
    v: IntMatrix | None = None
    u_inv: IntMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def diagonal(self) -> IntMatrix:
        return IntMatrix.from_dict(
            self.nrows, self.ncols,
            {(t, t): d for t, d in enumerate(self.invariants)},
        )


def smith_normal_form(mat: IntMatrix, transforms: bool = True) -> SNFResult:
    """Smith normal form with the (|value|, row, column) pivot rule.

    With ``transforms`` the result carries unimodular u, v, u_inv such that
    u @ mat @ v is the invariant diagonal and u @ u_inv is the identity.
    Skipping transforms roughly halves the work for rank-only callers.
    """
    worker = _Smith(mat, transforms)
    order = worker.eliminate()
    worker.fix_divisibility(order)
    worker.place(order)
    invariants = tuple(worker.rows[t][t] for t in range(len(order)))
    if transforms:
        return SNFResult(
            mat.nrows, mat.ncols, invariants, tuple(order),
            u=worker.u_matrix(), v=worker.v_matrix(),
            u_inv=worker.uinv_matrix(),
        )
    return SNFResult(mat.nrows, mat.ncols, invariants, tuple(order))


def snf_invariants(mat: IntMatrix) -> tuple:
    return smith_normal_form(mat, transforms=False).invariants


def matrix_rank(mat: IntMatrix) -> int:
    return len(snf_invariants(mat))


def kernel_basis(mat: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel, as columns.

    The basis spans a saturated sublattice (it extends to a basis of the
    ambient lattice), because it consists of columns of a unimodular
    matrix.  Columns are ordered by their position in v.
    """
    res = smith_normal_form(mat, transforms=True)
    return res.v.take_columns(range(res.rank, mat.ncols))


def _diag_solve(res: SNFResult, b: IntMatrix, a_ncols: int) -> IntMatrix:
    c = res.u @ b
    data = {}
    for i, j, w in c.entries:
        if i >= res.rank:
            raise InvariantError("system has no integral solution")
        q, r = divmod(w, res.invariants[i])
        if r:
            raise InvariantError("system has no integral solution")
        data[(i, j)] = q
    y = IntMatrix.from_dict(a_ncols, b.ncols, data)
    return res.v @ y


def solve_matrix(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """One integral solution x of a @ x == b, column by column.

    Raises InvariantError when no integral solution exists; callers use
    this for maps that are forced to exist by theory, so a failure means a
    broken invariant rather than bad user input.
    """
    if a.nrows != b.nrows:
        raise InputError("solve requires matching row counts")
    res = smith_normal_form(a)
    return _diag_solve(res, b, a.ncols)


def _combine(ca: int, da: dict, cb: int, db: dict) -> dict:
    out = {}
    for k in da.keys() | db.keys():
        v = ca * da.get(k, 0) + cb * db.get(k, 0)
        if v:
            out[k] = v
    return out


def lattice_basis(mat: IntMatrix) -> IntMatrix:
    """Canonical basis of the lattice spanned by the columns.

    Column Hermite form: pivot rows strictly increase, pivot entries are
    positive, and earlier columns are reduced at later pivot rows into
    [0, pivot).  Two column sets span the same lattice exactly when they
    produce equal output here.
    """
    remaining = []
    for j in range(mat.ncols):
        remaining.append({})
    for i, j, v in mat.entries:
        remaining[j][i] = v
    remaining = [c for c in remaining if c]
    basis = []
    for r in range(mat.nrows):
        hit = [t for t, c in enumerate(remaining) if r in c]
        if not hit:
            continue
        t0 = hit[0]
        for t in hit[1:]:
            a, b = remaining[t0][r], remaining[t][r]
            g, x, y = xgcd(a, b)
            c0, c1 = remaining[t0], remaining[t]
            remaining[t0] = _combine(x, c0, y, c1)
            remaining[t] = _combine(-(b // g), c0, a // g, c1)
        main = remaining.pop(t0)
        if main[r] < 0:
            main = {k: -v for k, v in main.items()}
        d = main[r]
        for _, bc in basis:
            q = bc.get(r, 0) // d
            if q:
                for k, v in main.items():
                    nv = bc.get(k, 0) - q * v
                    if nv:
                        bc[k] = nv
                    else:
                        bc.pop(k, None)
        basis.append((r, main))
    data = {}
    for idx, (_, col) in enumerate(basis):
        for k, v in col.items():
            data[(k, idx)] = v
    return IntMatrix.from_dict(mat.nrows, len(basis), data)


def quotient_invariants(numer: IntMatrix, denom: IntMatrix):
    """Invariants of (lattice spanned by numer) / (lattice spanned by denom).

    ``numer`` columns must be independent; ``denom`` columns must lie in
    their span, or InvariantError is raised.  Returns (free_rank, torsion)
    with torsion the invariant factors greater than one, in divisibility
    order.
    """
    if numer.nrows != denom.nrows:
        raise InputError("numerator and denominator live in different ranks")
    res = smith_normal_form(numer)
    if res.rank != numer.ncols:
        raise InputError("numerator columns are not independent")
    coords = _diag_solve(res, denom, numer.ncols)
    inv = snf_invariants(coords)
    free = numer.ncols - len(inv)
    torsion = tuple(d for d in inv if d > 1)
    return free, torsion
