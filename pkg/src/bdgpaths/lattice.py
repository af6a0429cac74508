"""Exact integer linear algebra.

Hermite and Smith normal forms over arbitrary-precision Python ints,
lattices in echelon form, and finitely generated abelian groups presented
as subquotients ``S / A`` of a free ambient module ``Z^dim``.

Conventions
-----------
* Vectors are lists (or tuples) of ints; a lattice is spanned by row vectors.
* Hermite form is row style: ``u @ m == h``, ``h`` upper echelon, every pivot
  positive, entries above a pivot reduced into ``[0, pivot)``.
* Pivot choice inside a column is the entry of smallest absolute value,
  lowest row index on ties.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Vector = Sequence[int]


class IntMatrix:
    """Immutable dense integer matrix with explicit shape (empty shapes allowed)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("matrix data does not match the declared shape")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            data[i][i] = d
        return cls(data, rows, cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], self.cols, self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        data = [[sum(a * b for a, b in zip(row, col) if a) for col in ocols]
                for row in self._data]
        return IntMatrix(data, self.rows, other.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def det(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def _as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def _axpy(target: list[int], q: int, source: Sequence[int], start: int = 0) -> None:
    # target -= q * source
    for j in range(start, len(source)):
        s = source[j]
        if s:
            target[j] -= q * s


# ---------------------------------------------------------------------------
# Hermite normal form


def _hermite_in_place(h: list[list[int]], ncols: int, u: list[list[int]] | None) -> int:
    """Bring the rows of ``h`` to Hermite form; returns the number of pivots."""
    r = len(h)
    k = 0
    for j in range(ncols):
        if k == r:
            break
        while True:
            best = None
            for i in range(k, r):
                v = h[i][j]
                if v and (best is None or abs(v) < abs(h[best][j])):
                    best = i
            if best is None:
                break
            if best != k:
                h[k], h[best] = h[best], h[k]
                if u is not None:
                    u[k], u[best] = u[best], u[k]
            pv = h[k][j]
            clean = True
            for i in range(k + 1, r):
                v = h[i][j]
                if v:
                    q = v // pv
                    _axpy(h[i], q, h[k], j)
                    if u is not None:
                        _axpy(u[i], q, u[k])
                    if h[i][j]:
                        clean = False
            if clean:
                break
        if k == r or h[k][j] == 0:
            continue
        if h[k][j] < 0:
            h[k] = [-x for x in h[k]]
            if u is not None:
                u[k] = [-x for x in u[k]]
        pv = h[k][j]
        for i in range(k):
            q = h[i][j] // pv
            if q:
                _axpy(h[i], q, h[k], j)
                if u is not None:
                    _axpy(u[i], q, u[k])
        k += 1
    return k


def hermite_normal_form(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form ``(h, u)`` with ``u @ m == h`` and ``det(u) = +-1``."""
    m = _as_matrix(m)
    h = m.tolist()
    u = IntMatrix.identity(m.rows).tolist()
    _hermite_in_place(h, m.cols, u)
    return IntMatrix(h, m.rows, m.cols), IntMatrix(u, m.rows, m.rows)


def hermite_rows(vectors: Iterable[Vector], dim: int) -> list[list[int]]:
    """Nonzero rows of the Hermite form of the given vectors (no transform kept)."""
    h = [list(v) for v in vectors if any(v)]
    for v in h:
        if len(v) != dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {dim}")
    k = _hermite_in_place(h, dim, None)
    return h[:k]


# ---------------------------------------------------------------------------
# Smith normal form


def _smith(a: list[list[int]], nrows: int, ncols: int, want_u: bool):
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if want_u else None
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    vinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        for row in v:
            if row[src]:
                row[dst] -= q * row[src]
        _axpy_neg = vinv[src]
        for jj in range(ncols):
            if vinv[dst][jj]:
                _axpy_neg[jj] += q * vinv[dst][jj]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)
        while True:
            pv = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                x = a[i][t]
                if x:
                    q = x // pv
                    _axpy(a[i], q, a[t], t)
                    if u is not None:
                        _axpy(u[i], q, u[t])
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = a[t][j]
                if x:
                    add_col(j, t, x // pv)
                    if a[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, nrows):
                    x = a[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, "r")
                for j in range(t, ncols):
                    x = a[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), j, "c")
                if best[2] == "r" and best[1] != t:
                    swap_rows(best[1], t)
                elif best[2] == "c" and best[1] != t:
                    swap_cols(best[1], t)
                continue
            bad = None
            for i in range(t + 1, nrows):
                if any(x % pv for x in a[i][t + 1:]):
                    bad = i
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and restart the loop
            for jj in range(t, ncols):
                a[t][jj] += a[bad][jj]
            if u is not None:
                for jj in range(nrows):
                    u[t][jj] += u[bad][jj]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v, vinv


def smith_normal_form(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith form ``(d, u, v)`` with ``u @ m @ v == d`` and ``d_1 | d_2 | ...``."""
    m = _as_matrix(m)
    a, u, v, _ = _smith(m.tolist(), m.rows, m.cols, True)
    return (IntMatrix(a, m.rows, m.cols), IntMatrix(u, m.rows, m.rows),
            IntMatrix(v, m.cols, m.cols))


# ---------------------------------------------------------------------------
# Lattices


class Lattice:
    """A sublattice of ``Z^dim`` stored as its (unique) reduced Hermite basis."""

    __slots__ = ("dim", "basis", "pivots")

    def __init__(self, vectors: Iterable[Vector], dim: int):
        self.dim = dim
        self.basis = [tuple(row) for row in hermite_rows(vectors, dim)]
        self.pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vector) -> list[int]:
        """Canonical coset representative of ``v`` modulo the lattice."""
        v = list(v)
        for row, j in zip(self.basis, self.pivots):
            if v[j]:
                q = v[j] // row[j]
                if q:
                    _axpy(v, q, row, j)
        return v

    def __contains__(self, v: Vector) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Vector) -> list[int]:
        """Coefficients of ``v`` in the basis; ``ValueError`` if ``v`` is not a member."""
        v = list(v)
        coords = []
        for row, j in zip(self.basis, self.pivots):
            q, rem = divmod(v[j], row[j])
            if rem:
                raise ValueError("vector is not in the lattice")
            coords.append(q)
            if q:
                _axpy(v, q, row, j)
        if any(v):
            raise ValueError("vector is not in the lattice")
        return coords

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.basis == other.basis

    def __le__(self, other: "Lattice") -> bool:
        return all(v in other for v in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.basis + other.basis, self.dim)

    def is_full(self) -> bool:
        return self.rank == self.dim and all(row[j] == 1 for row, j in zip(self.basis, self.pivots))

    def __repr__(self) -> str:
        return f"Lattice(rank={self.rank}, dim={self.dim})"


def kernel_lattice(images: Sequence[Vector], target_dim: int,
                   modulo: Iterable[Vector] = ()) -> list[list[int]]:
    """Basis of ``{c in Z^p : sum c_i images[i] in span(modulo)}``.

    Uses the augmented-row trick: echelonize ``[images | I]`` together with
    ``[modulo | 0]`` on the first ``target_dim`` columns.
    """
    p = len(images)
    rows = []
    for i, img in enumerate(images):
        row = list(img) + [0] * p
        row[target_dim + i] = 1
        rows.append(row)
    for w in modulo:
        if any(w):
            rows.append(list(w) + [0] * p)
    h = hermite_rows(rows, target_dim + p)
    return [row[target_dim:] for row in h if not any(row[:target_dim])]


def _mat_vec(coords: Sequence[int], rows: Sequence[Vector], dim: int) -> list[int]:
    out = [0] * dim
    for c, row in zip(coords, rows):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return out


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


class FgAbGroup:
    """The subquotient ``S / A`` of ``Z^dim`` with ``A <= S``.

    ``S`` defaults to the whole ambient lattice.  Canonical coordinates are the
    torsion coordinates (each reduced into ``[0, d_i)``) followed by the free
    coordinates, in the Smith basis of ``A`` inside ``S``.
    """

    def __init__(self, dim: int, relations: Iterable[Vector] = (),
                 subgroup: Iterable[Vector] | None = None):
        self.dim = dim
        relations = [list(r) for r in relations]
        self.relation_lattice = Lattice(relations, dim)
        if subgroup is None:
            self.sub_lattice = None
            k = dim
            rel_coords = [list(r) for r in self.relation_lattice.basis]
        else:
            self.sub_lattice = Lattice(list(subgroup) + list(self.relation_lattice.basis), dim)
            k = self.sub_lattice.rank
            rel_coords = [self.sub_lattice.coordinates(r) for r in self.relation_lattice.basis]
        self.sub_rank = k
        a, _, v, vinv = _smith([list(r) for r in rel_coords], len(rel_coords), k, False)
        diag = [a[i][i] if i < len(a) else 0 for i in range(k)]
        self._v = v
        self._vinv = vinv
        self._diag = diag
        self._torsion_idx = [i for i, d in enumerate(diag) if d > 1]
        self._free_idx = [i for i, d in enumerate(diag) if d == 0]
        self.torsion = tuple(diag[i] for i in self._torsion_idx)
        self.rank = len(self._free_idx)

    # construction helpers -------------------------------------------------

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> "FgAbGroup":
        n = len(torsion) + rank
        rels = []
        for i, d in enumerate(torsion):
            r = [0] * n
            r[i] = d
            rels.append(r)
        return cls(n, rels)

    # invariants -------------------------------------------------------------

    @property
    def ngens(self) -> int:
        """Length of the canonical coordinate vector."""
        return len(self.torsion) + self.rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Modulus of each canonical coordinate (0 for free coordinates)."""
        return self.torsion + (0,) * self.rank

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return (self.rank, self.torsion)

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariants() == other.invariants()

    def __repr__(self) -> str:
        return f"FgAbGroup({describe(self.invariants())})"

    # coordinates ------------------------------------------------------------

    def _sub_coords(self, v: Vector) -> list[int]:
        if len(v) != self.dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.dim}")
        if self.sub_lattice is None:
            return list(v)
        return self.sub_lattice.coordinates(v)

    def contains(self, v: Vector) -> bool:
        """Whether ``v`` lies in ``S`` (the group's numerator lattice)."""
        if self.sub_lattice is None:
            return len(v) == self.dim
        return v in self.sub_lattice

    def reduce(self, v: Vector) -> tuple[int, ...]:
        """Canonical coordinates of the class of ``v`` (``v`` must lie in ``S``)."""
        c = self._sub_coords(v)
        k = self.sub_rank
        y = [0] * k
        for i, ci in enumerate(c):
            if ci:
                row = self._v[i]
                for j in range(k):
                    if row[j]:
                        y[j] += ci * row[j]
        out = [y[i] % self._diag[i] for i in self._torsion_idx]
        out.extend(y[i] for i in self._free_idx)
        return tuple(out)

    def is_zero(self, v: Vector) -> bool:
        return v in self.relation_lattice

    def lift(self, coords: Sequence[int]) -> list[int]:
        """An ambient representative of the class with the given canonical coordinates."""
        if len(coords) != self.ngens:
            raise ValueError("wrong number of canonical coordinates")
        k = self.sub_rank
        y = [0] * k
        for c, i in zip(coords, self._torsion_idx + self._free_idx):
            y[i] = c
        c = [0] * k
        for i, yi in enumerate(y):
            if yi:
                row = self._vinv[i]
                for j in range(k):
                    if row[j]:
                        c[j] += yi * row[j]
        if self.sub_lattice is None:
            return c
        return _mat_vec(c, self.sub_lattice.basis, self.dim)

    def generators(self) -> list[list[int]]:
        """Ambient lifts of the canonical generators."""
        out = []
        for i in range(self.ngens):
            e = [0] * self.ngens
            e[i] = 1
            out.append(self.lift(e))
        return out

    def normalize(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Reduce canonical coordinates modulo their moduli."""
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def canonical(self) -> "FgAbGroup":
        """The same group presented on its canonical coordinates."""
        return FgAbGroup.from_invariants(self.rank, self.torsion)

    def subgroup_lattice(self) -> Lattice:
        return self.sub_lattice if self.sub_lattice is not None else Lattice(
            [[int(i == j) for j in range(self.dim)] for i in range(self.dim)], self.dim)

    def same_subgroup(self, vectors1: Iterable[Vector], vectors2: Iterable[Vector]) -> bool:
        """Whether two families of elements generate the same subgroup."""
        rel = self.relation_lattice.basis
        return Lattice(list(vectors1) + rel, self.dim) == Lattice(list(vectors2) + rel, self.dim)


def describe(invariants: tuple[int, tuple[int, ...]]) -> str:
    """Human form such as ``Z^2 + Z/6``."""
    rank, torsion = invariants
    parts = [f"Z/{d}" for d in torsion]
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    return " + ".join(parts) if parts else "0"


def cokernel(m, ambient_rank: int | None = None) -> FgAbGroup:
    """Cokernel of ``m``; its columns are relations on ``Z^rows``."""
    m = _as_matrix(m)
    if ambient_rank is not None and ambient_rank != m.rows:
        raise ValueError(f"matrix has {m.rows} rows but ambient rank is {ambient_rank}")
    return FgAbGroup(m.rows, [m.column(j) for j in range(m.cols)])


def reduce(v: Vector, g: FgAbGroup) -> tuple[int, ...]:
    return g.reduce(v)


# ---------------------------------------------------------------------------
# Homomorphisms


class GroupHom:
    """A homomorphism ``src -> dst`` induced by an ambient integer map.

    ``images[i]`` is the ambient image of the i-th ambient basis vector of ``src``.
    """

    def __init__(self, src: FgAbGroup, dst: FgAbGroup, images: Sequence[Vector]):
        if len(images) != src.dim or any(len(w) != dst.dim for w in images):
            raise ValueError("image matrix does not match the ambient dimensions")
        self.src = src
        self.dst = dst
        self.images = [list(w) for w in images]

    @classmethod
    def from_function(cls, src: FgAbGroup, dst: FgAbGroup, fn) -> "GroupHom":
        images = []
        for i in range(src.dim):
            e = [0] * src.dim
            e[i] = 1
            images.append(fn(e))
        return cls(src, dst, images)

    def apply(self, v: Vector) -> list[int]:
        return _mat_vec(v, self.images, self.dst.dim)

    def __call__(self, v: Vector) -> tuple[int, ...]:
        return self.dst.reduce(self.apply(v))

    def _source_basis(self) -> list[Sequence[int]]:
        return list(self.src.subgroup_lattice().basis)

    def is_well_defined(self) -> bool:
        if not all(self.dst.contains(self.apply(s)) for s in self._source_basis()):
            return False
        return all(self.dst.is_zero(self.apply(r)) for r in self.src.relation_lattice.basis)

    def kernel(self) -> FgAbGroup:
        basis = self._source_basis()
        imgs = [self.apply(s) for s in basis]
        coeffs = kernel_lattice(imgs, self.dst.dim, self.dst.relation_lattice.basis)
        vecs = [_mat_vec(c, basis, self.src.dim) for c in coeffs]
        return FgAbGroup(self.src.dim, self.src.relation_lattice.basis, vecs)

    def image_lattice(self) -> Lattice:
        imgs = [self.apply(s) for s in self._source_basis()]
        return Lattice(imgs + list(self.dst.relation_lattice.basis), self.dst.dim)

    def is_surjective(self) -> bool:
        return self.image_lattice() == self.dst.subgroup_lattice()

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def canonical_matrix(self) -> list[tuple[int, ...]]:
        """Row ``i``: canonical coordinates of the image of canonical generator ``i``."""
        return [self(g) for g in self.src.generators()]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """``self o other``."""
        return GroupHom(other.src, self.dst, [self.apply(w) for w in other.images])


# ---------------------------------------------------------------------------
# Canonical-coordinate constructions


def canonical_hom(src: FgAbGroup, dst: FgAbGroup, matrix: Sequence[Sequence[int]]) -> GroupHom:
    """Hom between canonical presentations given by the rows of ``matrix``."""
    return GroupHom(src.canonical(), dst.canonical(), [list(r) for r in matrix])


def tensor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """``g (x) h`` presented on pairs of canonical generators (index ``i * h.ngens + j``)."""
    kg, kh = g.ngens, h.ngens
    rels = []
    for i, di in enumerate(g.moduli):
        for j, dj in enumerate(h.moduli):
            for d in (di, dj):
                if d:
                    r = [0] * (kg * kh)
                    r[i * kh + j] = d
                    rels.append(r)
    return FgAbGroup(kg * kh, rels)


def tensor_coords(x: Sequence[int], y: Sequence[int]) -> list[int]:
    return [a * b for a in x for b in y]


def tensor_matrix(f: Sequence[Sequence[int]], g: Sequence[Sequence[int]]) -> list[list[int]]:
    """Kronecker product of two canonical hom matrices (rows = source generators)."""
    return [tensor_coords(fr, gr) for fr in f for gr in g]


def direct_sum(groups: Sequence[FgAbGroup]) -> FgAbGroup:
    """Direct sum of the canonical presentations, concatenated in order."""
    dim = sum(g.ngens for g in groups)
    rels = []
    offset = 0
    for g in groups:
        for i, d in enumerate(g.moduli):
            if d:
                r = [0] * dim
                r[offset + i] = d
                rels.append(r)
        offset += g.ngens
    return FgAbGroup(dim, rels)


# ---------------------------------------------------------------------------
# Sparse invariant factors


def smith_invariants_sparse(entries: dict[tuple[int, int], int], nrows: int,
                            ncols: int) -> tuple[int, list[int]]:
    """``(rank, invariant factors > 1)`` of a sparse matrix.

    Unit pivots are eliminated first (Markowitz order), which preserves the
    Smith form; the dense remainder is handed to :func:`smith_normal_form`.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), x in entries.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)
    rank = 0
    while True:
        best = None
        for i, row in rows.items():
            ri = len(row) - 1
            for j, x in row.items():
                if x == 1 or x == -1:
                    cost = ri * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            row = rows[i]
            q = row[pj] * pv  # pv = +-1, so row[pj] / pv == row[pj] * pv
            for j, x in prow.items():
                nv = row.get(j, 0) - q * x
                if nv:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = nv
                else:
                    if j in row:
                        del row[j]
                        cols[j].discard(i)
            if not row:
                del rows[i]
        del cols[pj]
        rank += 1
    if not rows:
        return rank, []
    rlist = sorted(rows)
    clist = sorted({j for row in rows.values() for j in row})
    cidx = {j: k for k, j in enumerate(clist)}
    dense = [[0] * len(clist) for _ in rlist]
    for k, i in enumerate(rlist):
        for j, x in rows[i].items():
            dense[k][cidx[j]] = x
    a, _, _, _ = _smith(dense, len(rlist), len(clist), False)
    diag = [a[i][i] for i in range(min(len(rlist), len(clist))) if a[i][i]]
    return rank + len(diag), [d for d in diag if d > 1]
