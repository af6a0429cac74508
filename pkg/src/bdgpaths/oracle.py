"""Brute-force relative homology of ``(X^n, X(n)^a_b)`` from simplicial products.

A simplex of ``X^n`` is a tuple of simplices of ``X`` of equal dimension, one
per factor, and it is nondegenerate unless all factors are degenerate along
a common direction.  Tuples list the factors in the order ``(x_n, ..., x_1)``, so the
first coordinate visited by a path comes last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations
from itertools import product as iproduct
from typing import Iterable, Sequence

from .lattice import FgAbGroup, describe, kernel_lattice, smith_invariants_sparse, tensor
from .space import Basepoints, Simplex, SimplicialSet, SpaceError

DEFAULT_CAP = 200_000

PSimplex = tuple[Simplex, ...]


class ResourceLimitError(RuntimeError):
    """A complex would exceed the configured simplex cap."""


# ---------------------------------------------------------------------------
# Simplices of a single factor


def _surjections(k: int, m: int) -> list[tuple[int, ...]]:
    """Monotone surjections ``[k] -> [m]`` as value tuples."""
    out = []
    for jumps in combinations(range(1, k + 1), m):
        eta, v = [], 0
        for i in range(k + 1):
            if i in jumps:
                v += 1
            eta.append(v)
        out.append(tuple(eta))
    return out


def all_simplices(ss: SimplicialSet, k: int) -> list[Simplex]:
    """Every ``k``-simplex of ``ss`` (degenerate ones included) in EZ form."""
    out = []
    for m in range(min(k, ss.dim) + 1):
        etas = _surjections(k, m)
        for idx in range(ss.count(m)):
            out.extend((m, idx, eta) for eta in etas)
    return out


def boundary_rows(ss: SimplicialSet, k: int) -> list[list[int]]:
    """Simplicial boundary ``C_k -> C_(k-1)`` of ``ss``, one row per ``k``-simplex."""
    if k < 1 or k > ss.dim:
        return []
    rows = []
    for i in range(ss.count(k)):
        row = [0] * ss.count(k - 1)
        for j, (m, idx, _) in enumerate(ss.faces[k][i]):
            if m == k - 1:
                row[idx] += (-1) ** j
        rows.append(row)
    return rows


def absolute_homology(ss: SimplicialSet, k: int) -> FgAbGroup:
    """``H_k(X)`` on the nondegenerate chains of ``ss``."""
    nk = ss.count(k)
    dk = boundary_rows(ss, k)
    cycles = kernel_lattice(dk, ss.count(k - 1)) if k >= 1 and nk else None
    rels = boundary_rows(ss, k + 1)
    if cycles is None:
        return FgAbGroup(nk, rels)
    return FgAbGroup(nk, rels, cycles)


# ---------------------------------------------------------------------------
# Products


def _degenerate(t: PSimplex) -> bool:
    etas = [s[2] for s in t]
    k = len(etas[0]) - 1
    return any(all(e[i] == e[i + 1] for e in etas) for i in range(k))


class ProductSS:
    """Nondegenerate simplices of ``X^n`` up to dimension ``maxdim``."""

    def __init__(self, ss: SimplicialSet, n: int, maxdim: int | None = None,
                 cap: int = DEFAULT_CAP):
        if n < 1:
            raise SpaceError("product power must be >= 1")
        self.ss, self.n, self.cap = ss, n, cap
        self.maxdim = n * ss.dim if maxdim is None else min(maxdim, n * ss.dim)
        self.simplices: list[list[PSimplex]] = []
        self.index: list[dict[PSimplex, int]] = []
        total = 0
        for k in range(self.maxdim + 1):
            level = []
            for t in iproduct(all_simplices(ss, k), repeat=n):
                if k == 0 or not _degenerate(t):
                    level.append(t)
                    total += 1
                    if total > cap:
                        raise ResourceLimitError(
                            f"X^{n} exceeds {cap} nondegenerate simplices by dimension {k}")
            self.simplices.append(level)
            self.index.append({t: i for i, t in enumerate(level)})

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k <= self.maxdim else 0

    def counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        if self.maxdim < self.n * self.ss.dim:
            raise ValueError("Euler characteristic needs the full product")
        return sum((-1) ** k * c for k, c in enumerate(self.counts()))

    def face(self, t: PSimplex, i: int) -> PSimplex:
        return tuple(self.ss.face(s, i) for s in t)

    def is_degenerate(self, t: PSimplex) -> bool:
        return len(t[0][2]) > 1 and _degenerate(t)

    def __repr__(self) -> str:
        return f"ProductSS({self.ss.name}^{self.n}, counts={self.counts()})"


def product(ss: SimplicialSet, n: int, maxdim: int | None = None, cap: int = DEFAULT_CAP) -> ProductSS:
    return ProductSS(ss, n, maxdim, cap)


# ---------------------------------------------------------------------------
# Subspaces


VARIANTS = ("upper", "lower", "both")


def _is_vertex(s: Simplex, v: int) -> bool:
    return s[0] == 0 and s[1] == v


@dataclass
class SubSS:
    """Union of coordinate loci inside a product, materialized per dimension."""

    pss: ProductSS
    variant: str
    bp: Basepoints
    members: list[set[int]] = field(default_factory=list)

    def loci(self, t: PSimplex) -> list[str]:
        """Names of the loci containing ``t`` (``x1=a``, ``x2=x3``, ``xn=b``...)."""
        n = self.pss.n
        out = []
        # t[j] is the coordinate x_(n-j)
        if self.variant in ("upper", "both") and _is_vertex(t[n - 1], self.bp.a):
            out.append("x1=a")
        for i in range(1, n):
            if t[n - i] == t[n - i - 1]:
                out.append(f"x{i}=x{i + 1}")
        if self.variant in ("lower", "both") and _is_vertex(t[0], self.bp.b):
            out.append(f"x{n}=b")
        return out

    def __contains__(self, t: PSimplex) -> bool:
        return bool(self.loci(t))

    def count(self, k: int) -> int:
        return len(self.members[k])

    def is_face_closed(self) -> bool:
        p = self.pss
        for k in range(1, p.maxdim + 1):
            for i in self.members[k]:
                t = p.simplices[k][i]
                for j in range(k + 1):
                    f = p.face(t, j)
                    if not p.is_degenerate(f) and p.index[k - 1][f] not in self.members[k - 1]:
                        return False
        return True


def subspace(pss: ProductSS, variant: str, bp: Basepoints) -> SubSS:
    if variant not in VARIANTS:
        raise SpaceError(f"unknown subspace variant {variant!r}")
    for v in (bp.a, bp.b):
        if not 0 <= v < pss.ss.count(0):
            raise SpaceError(f"basepoint {v} is not a vertex")
    sub = SubSS(pss, variant, bp)
    sub.members = [{i for i, t in enumerate(level) if t in sub} for level in pss.simplices]
    return sub


# ---------------------------------------------------------------------------
# Relative chains


class RelChainComplex:
    """Chains on product simplices outside the subspace; boundary faces in it are dropped."""

    def __init__(self, sub: SubSS):
        self.sub = sub
        p = sub.pss
        self.basis: list[list[int]] = []  # product indices per dimension
        self.pos: list[dict[int, int]] = []
        for k in range(p.maxdim + 1):
            b = [i for i in range(p.count(k)) if i not in sub.members[k]]
            self.basis.append(b)
            self.pos.append({i: j for j, i in enumerate(b)})
        self._d: dict[int, dict[tuple[int, int], int]] = {}

    def rank(self, k: int) -> int:
        return len(self.basis[k]) if 0 <= k < len(self.basis) else 0

    def boundary(self, k: int) -> dict[tuple[int, int], int]:
        """Sparse ``d_k`` with entries keyed ``(row in C_k, column in C_(k-1))``."""
        if k in self._d:
            return self._d[k]
        p = self.sub.pss
        out: dict[tuple[int, int], int] = {}
        if 1 <= k < len(self.basis):
            for r, i in enumerate(self.basis[k]):
                t = p.simplices[k][i]
                for j in range(k + 1):
                    f = p.face(t, j)
                    if p.is_degenerate(f):
                        continue
                    c = self.pos[k - 1].get(p.index[k - 1][f])
                    if c is not None:
                        out[(r, c)] = out.get((r, c), 0) + (-1) ** j
            out = {key: v for key, v in out.items() if v}
        self._d[k] = out
        return out

    def chain_boundary(self, chain: dict[PSimplex, int], k: int) -> dict[int, int]:
        """Relative boundary of a chain given on product simplices."""
        p = self.sub.pss
        out: dict[int, int] = {}
        for t, c in chain.items():
            for j in range(k + 1):
                f = p.face(t, j)
                if p.is_degenerate(f):
                    continue
                col = self.pos[k - 1].get(p.index[k - 1][f])
                if col is not None:
                    out[col] = out.get(col, 0) + (-1) ** j * c
        return {i: c for i, c in out.items() if c}

    def check_dd(self, k: int) -> bool:
        """Exact check of ``d_(k-1) d_k = 0``."""
        if k < 2 or k >= len(self.basis):
            return True
        dk, dk1 = self.boundary(k), self.boundary(k - 1)
        rows: dict[int, dict[int, int]] = {}
        for (r, c), v in dk1.items():
            rows.setdefault(r, {})[c] = v
        acc: dict[tuple[int, int], int] = {}
        for (r, m), v in dk.items():
            for c, w in rows.get(m, {}).items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return not any(acc.values())

    def invariants(self, k: int) -> tuple[int, tuple[int, ...]]:
        """``(rank, torsion)`` of relative ``H_k`` via sparse elimination."""
        if k + 1 >= len(self.basis) and k + 1 <= self.sub.pss.n * self.sub.pss.ss.dim:
            raise ValueError(f"H_{k} needs simplices of dimension {k + 1}")
        rk_k, _ = smith_invariants_sparse(self.boundary(k), self.rank(k), self.rank(k - 1)) \
            if k >= 1 else (0, [])
        rk_k1, tors = smith_invariants_sparse(self.boundary(k + 1), self.rank(k + 1), self.rank(k))
        return (self.rank(k) - rk_k - rk_k1, tuple(sorted(tors)))

    def homology_group(self, k: int) -> FgAbGroup:
        """Dense subquotient model of ``H_k`` (cycles modulo boundaries)."""
        nk = self.rank(k)
        dk = _dense(self.boundary(k), nk, self.rank(k - 1))
        rels = _dense(self.boundary(k + 1), self.rank(k + 1), nk)
        if k == 0:
            return FgAbGroup(nk, rels)
        return FgAbGroup(nk, rels, kernel_lattice(dk, self.rank(k - 1)))

    def chain_vector(self, chain: dict[PSimplex, int], k: int) -> list[int]:
        p = self.sub.pss
        v = [0] * self.rank(k)
        for t, c in chain.items():
            j = self.pos[k].get(p.index[k][t])
            if j is not None:
                v[j] += c
        return v


def _dense(entries: dict[tuple[int, int], int], nrows: int, ncols: int) -> list[list[int]]:
    rows = [[0] * ncols for _ in range(nrows)]
    for (r, c), v in entries.items():
        rows[r][c] = v
    return rows


def relative_complex(ss: SimplicialSet, n: int, variant: str, bp: Basepoints,
                     maxdim: int | None = None, cap: int = DEFAULT_CAP) -> RelChainComplex:
    pss = product(ss, n, n + 1 if maxdim is None else maxdim, cap)
    return RelChainComplex(subspace(pss, variant, bp))


def relative_homology(ss: SimplicialSet, n: int, k: int, variant: str, bp: Basepoints,
                      cap: int = DEFAULT_CAP) -> tuple[int, tuple[int, ...]]:
    """Invariants of ``H_k(X^n, X(n))`` for the chosen locus union."""
    rc = relative_complex(ss, n, variant, bp, max(k + 1, 1), cap)
    return rc.invariants(k)


# ---------------------------------------------------------------------------
# Checks


@dataclass
class ConnectivityReport:
    ok: bool
    groups: dict[int, tuple[int, tuple[int, ...]]]
    failing_dim: int | None = None


def connectivity_check(rc: RelChainComplex, n: int) -> ConnectivityReport:
    """``H_k = 0`` for ``0 <= k < n`` (the subspace is nonempty, so ``H_0`` vanishes too)."""
    groups = {}
    for k in range(n):
        inv = rc.invariants(k)
        groups[k] = inv
        if inv != (0, ()):
            return ConnectivityReport(False, groups, k)
    return ConnectivityReport(True, groups)


@dataclass
class TensorPowerReport:
    ok: bool
    top: tuple[int, tuple[int, ...]]
    expected: tuple[int, tuple[int, ...]]
    lower: dict[int, tuple[int, tuple[int, ...]]]

    def describe(self) -> str:
        return f"H_n = {describe(self.top)}, H1^(x)n = {describe(self.expected)}"


def tensor_power_check(ss: SimplicialSet, bp: Basepoints, n: int,
                       cap: int = DEFAULT_CAP) -> TensorPowerReport:
    """``H_n(X^n, X(n)^a) = H_1(X)^(x)n`` and lower groups vanish."""
    rc = relative_complex(ss, n, "upper", bp, n + 1, cap)
    h1 = absolute_homology(ss, 1)
    expected = h1.canonical()
    for _ in range(n - 1):
        expected = tensor(expected, h1).canonical()
    lower = {k: rc.invariants(k) for k in range(n)}
    top = rc.invariants(n)
    ok = top == expected.invariants() and all(v == (0, ()) for v in lower.values())
    return TensorPowerReport(ok, top, expected.invariants(), lower)


# ---------------------------------------------------------------------------
# Chain-level kappa


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def kappa_chain(path: Sequence[int], n: int, ss: SimplicialSet, source: int,
                target: int | None = None, cap: int = DEFAULT_CAP) -> dict[PSimplex, int]:
    """Chain representing ``gamma^n`` on ``0 <= t_1 <= ... <= t_n <= 1``.

    ``path`` lists edges traversed forwards.  The order simplex is cut by the
    grid of edge parameters; each cell ``c_1 <= ... <= c_n`` is a product of
    order simplices triangulated by the orderings of the local parameters.
    An ordering lists coordinates from largest to smallest local parameter and
    contributes with the sign of that permutation relative to ``(n, ..., 1)``.
    """
    if n < 1:
        raise ValueError("kappa_chain needs n >= 1")
    v = source
    for e in path:
        s, t = ss.edge_ends(e)
        if s != v:
            raise SpaceError(f"edge {e} does not continue the path at vertex {v}")
        v = t
    if target is not None and v != target:
        raise SpaceError("path does not end at the target vertex")
    L = len(path)
    ref = _perm_sign(list(range(n - 1, -1, -1)))
    chain: dict[PSimplex, int] = {}
    count = 0
    for cells in combinations_with_replacement(range(L), n):
        for order in permutations(range(n)):
            pos = [0] * n
            for k, j in enumerate(order):
                pos[j] = k + 1
            if any(cells[j] == cells[j + 1] and pos[j + 1] > pos[j] for j in range(n - 1)):
                continue
            comps = []
            for j in range(n - 1, -1, -1):
                eta = tuple(int(k >= pos[j]) for k in range(n + 1))
                comps.append((1, path[cells[j]], eta))
            t = tuple(comps)
            chain[t] = chain.get(t, 0) + _perm_sign(order) * ref
            count += 1
            if count > cap:
                raise ResourceLimitError("kappa_chain exceeds the simplex cap")
    return {t: c for t, c in chain.items() if c}


def chain_class(rc: RelChainComplex, chain: dict[PSimplex, int], n: int,
                group: FgAbGroup | None = None) -> tuple[int, ...]:
    """Class of a relative cycle in ``H_n`` (raises if it is not a relative cycle)."""
    if rc.chain_boundary(chain, n):
        raise ValueError("chain is not a relative cycle")
    g = group if group is not None else rc.homology_group(n)
    return g.reduce(rc.chain_vector(chain, n))


def euler_ok(ss: SimplicialSet, n: int, cap: int = DEFAULT_CAP) -> bool:
    return product(ss, n, cap=cap).euler_characteristic() == ss.euler_characteristic() ** n


def product_counts(ss: SimplicialSet, n: int, maxdim: int | None = None,
                   cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    return product(ss, n, maxdim, cap).counts()


def chain_support(chain: dict[PSimplex, int]) -> Iterable[PSimplex]:
    return sorted(chain)
